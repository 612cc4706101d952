//! The parameters of a distance-regular graph, from closed forms or
//! measured on an enumerated graph.

use super::partition::{default_choice, multi_source_distances};
use super::spectral::Spectral;
use super::{ensure, DrgError};
use crate::algebra::{Field, Ring};
use crate::family::{Consts, FamilyParams};
use crate::geometry::DPGraph;
use crate::scalars::Scalar;
use num_rational::BigRational;
use rayon::prelude::*;

/// Closed-form integer parameters at a concrete prime power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntConsts {
    pub d: usize,
    pub q: i64,
    /// `q^e`, an integer for every family.
    pub qe: i64,
}

impl IntConsts {
    pub fn new(params: FamilyParams, q0: u64) -> Option<Self> {
        let qe = i64::try_from(params.q_to_e(q0)?).ok()?;
        Some(IntConsts { d: params.d, q: q0 as i64, qe })
    }

    pub fn qp(&self, n: usize) -> i64 {
        self.q.pow(n as u32)
    }

    pub fn gauss(&self, n: usize) -> i64 {
        (self.qp(n) - 1) / (self.q - 1)
    }

    pub fn a(&self, i: usize) -> i64 {
        (self.qe - 1) * self.gauss(i)
    }

    pub fn b(&self, i: usize) -> i64 {
        self.qe * self.qp(i) * self.gauss(self.d - i)
    }

    pub fn c(&self, i: usize) -> i64 {
        self.gauss(i)
    }

    pub fn theta(&self, i: usize) -> i64 {
        self.qe * self.gauss(self.d - i) - self.gauss(i)
    }

    /// `(|C_i^-|, |C_i^+|)`.
    pub fn cell_sizes(&self, i: usize) -> (i64, i64) {
        let mut core = 1i64;
        for n in 1..=i {
            core = core * (self.qp(self.d) - self.qp(n)) / (self.qp(n) - 1);
        }
        (self.qe.pow(i as u32) * core, self.qe.pow(i as u32 + 1) * core)
    }

    pub fn num_vertices(&self) -> i64 {
        (0..self.d).map(|i| self.qp(i) * self.qe + 1).product()
    }
}

/// The parameters of the graph and of a maximal clique in it.
#[derive(Clone, Debug, PartialEq)]
pub struct DrgProfile<F> {
    pub d: usize,
    pub qe: F,
    pub a: Vec<F>,
    pub b: Vec<F>,
    pub c: Vec<F>,
    pub theta: Vec<F>,
    pub theta_s: Vec<F>,
    pub a_t: Vec<F>,
    pub b_t: Vec<F>,
    pub c_t: Vec<F>,
    pub theta_s_t: Vec<F>,
}

impl<F: Field> DrgProfile<F> {
    pub fn from_consts(k: &Consts<F>) -> Self {
        let d = k.d();
        let qe = k.qe();
        let seq = |f: &dyn Fn(usize) -> F, n: usize| (0..n).map(f).collect::<Vec<F>>();
        DrgProfile {
            d,
            qe: qe.clone(),
            a: seq(&|i| k.a(i), d + 1),
            b: seq(&|i| k.b(i), d + 1),
            c: seq(&|i| k.c(i), d + 1),
            theta: seq(&|i| k.theta(i), d + 1),
            theta_s: seq(&|i| k.theta_s(i), d + 1),
            a_t: seq(&|i| qe.mul(&k.gauss(i as i64 + 1)).sub(&k.gauss(i as i64)), d),
            b_t: seq(&|i| k.qpe(i as i64 + 1).mul(&k.gauss((d - i - 1) as i64)), d),
            c_t: seq(&|i| k.gauss(i as i64), d),
            theta_s_t: seq(&|i| k.alpha_s.add(&k.beta_s_tilde.mul(&k.qp(-(i as i64)))), d),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> DrgProfile<G> {
        let m = |v: &[F]| v.iter().map(&f).collect::<Vec<G>>();
        DrgProfile {
            d: self.d,
            qe: f(&self.qe),
            a: m(&self.a),
            b: m(&self.b),
            c: m(&self.c),
            theta: m(&self.theta),
            theta_s: m(&self.theta_s),
            a_t: m(&self.a_t),
            b_t: m(&self.b_t),
            c_t: m(&self.c_t),
            theta_s_t: m(&self.theta_s_t),
        }
    }

    /// The identities every dual polar graph and clique satisfy.
    pub fn check_invariants(&self) -> Result<(), DrgError> {
        let d = self.d;
        let k = &self.theta[0];
        ensure(self.b[d].is_zero() && self.c[0].is_zero(), "b_D = c_0 = 0")?;
        for i in 0..=d {
            ensure(self.a[i].add(&self.b[i]).add(&self.c[i]) == *k, format!("a_{i} + b_{i} + c_{i} = k"))?;
            ensure(self.a[i] == self.c[i].mul(&self.a[1]), format!("a_{i} = c_{i} a_1"))?;
            for j in 0..i {
                ensure(self.theta[i] != self.theta[j], "distinct eigenvalues")?;
                ensure(self.theta_s[i] != self.theta_s[j], "distinct dual eigenvalues")?;
            }
        }
        ensure(self.b_t[d - 1].is_zero() && self.c_t[0].is_zero(), "clique: b_{D-1} = c_0 = 0")?;
        let one_qe = F::one().add(&self.qe);
        for i in 0..d {
            ensure(self.a_t[i].add(&self.b_t[i]).add(&self.c_t[i]) == *k, format!("clique row sum at {i}"))?;
            if i >= 1 {
                ensure(self.c_t[i] == self.c[i], format!("clique c_{i} = c_{i}"))?;
            }
            if i + 1 < d {
                ensure(self.b_t[i] == self.b[i + 1], format!("clique b_{i} = b_{}", i + 1))?;
            }
            let avg = self.theta_s[i].add(&self.qe.mul(&self.theta_s[i + 1])).div(&one_qe).expect("1 + q^e != 0");
            ensure(self.theta_s_t[i] == avg, format!("clique dual eigenvalue {i} is the weighted average"))?;
        }
        ensure(self.a[1].add(&F::from_i64(2)) == one_qe, "a_1 + 2 = 1 + q^e")?;
        Ok(())
    }
}

/// The formal profile over `Q(i)(q^{1/4})`.
pub fn profile_formal(params: FamilyParams) -> DrgProfile<Scalar> {
    DrgProfile::from_consts(&Consts::formal(params))
}

/// Measured data of a concrete graph.
#[derive(Clone, Debug)]
pub struct GraphAnalysis {
    pub ints: IntConsts,
    pub profile: DrgProfile<BigRational>,
    pub spectral: Spectral,
    /// `|Γ_i(x)|`, the same for every vertex.
    pub sphere_sizes: Vec<usize>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_i64(n)
}

/// Measures intersection numbers over all pairs and checks the spectrum
/// against the closed-form eigenvalues. Dual eigenvalues come from the
/// primitive idempotent `E_1`; clique parameters from the default maximal clique.
pub fn profile_from_graph(g: &DPGraph) -> Result<GraphAnalysis, DrgError> {
    let d = g.diameter();
    let n = g.len();
    let ints = IntConsts::new(g.params(), g.space.q0)
        .ok_or_else(|| DrgError::Invariant("q^e is not an integer".into()))?;

    // (c_i, a_i, b_i) and |Γ_i(x)| as seen from one vertex, then checked from all of them
    let local = |x: usize| -> Result<(Vec<[i64; 3]>, Vec<usize>), DrgError> {
        let mut abc: Vec<Option<[i64; 3]>> = vec![None; d + 1];
        let mut sizes = vec![0usize; d + 1];
        for y in 0..n {
            let i = g.dist(x, y);
            sizes[i] += 1;
            let mut t = [0i64; 3];
            for &z in &g.adj[y] {
                let j = g.dist(x, z as usize);
                t[j + 1 - i] += 1;
            }
            match &abc[i] {
                None => abc[i] = Some(t),
                Some(prev) if *prev != t => return Err(DrgError::IntersectionInconsistent(i)),
                _ => {}
            }
        }
        let abc: Result<Vec<_>, _> = abc.into_iter().enumerate().map(|(i, t)| t.ok_or(DrgError::IntersectionInconsistent(i))).collect();
        Ok((abc?, sizes))
    };
    let (abc, sphere_sizes) = local(0)?;
    (0..n).into_par_iter().try_for_each(|x| {
        let (t, s) = local(x)?;
        if s != sphere_sizes {
            return Err(DrgError::NotWalkRegular(x));
        }
        match t.iter().zip(&abc).position(|(u, v)| u != v) {
            Some(i) => Err(DrgError::IntersectionInconsistent(i)),
            None => Ok(()),
        }
    })?;

    let theta_int: Vec<i64> = (0..=d).map(|i| ints.theta(i)).collect();
    let spectral = Spectral::new(g, &theta_int)?;
    let theta_s = spectral.theta_s();

    let (_, clique) = default_choice(g)?;
    let dist_c = multi_source_distances(g, &clique);
    let size_c = rat(clique.len() as i64);
    let mut clique_abc: Vec<Option<[i64; 3]>> = vec![None; d];
    let mut theta_s_t: Vec<Option<BigRational>> = vec![None; d];
    for y in 0..n {
        let i = dist_c[y] as usize;
        if i >= d {
            return Err(DrgError::InvalidClique(format!("vertex {y} at distance {i} from the clique")));
        }
        let mut t = [0i64; 3];
        for &z in &g.adj[y] {
            t[dist_c[z as usize] as usize + 1 - i] += 1;
        }
        if *clique_abc[i].get_or_insert(t) != t {
            return Err(DrgError::NotEquitable(i));
        }
        let mut s = rat(0);
        for &z in &clique {
            s = s.add(&spectral.e1_at_distance(g.dist(z, y)));
        }
        let val = s.mul(&rat(n as i64)).div(&size_c).expect("nonempty clique");
        if *theta_s_t[i].get_or_insert_with(|| val.clone()) != val {
            return Err(DrgError::DualEigenvalueInconsistent(i));
        }
    }
    let clique_abc: Vec<[i64; 3]> = clique_abc.into_iter().map(|t| t.expect("every cell is nonempty")).collect();

    let profile = DrgProfile {
        d,
        qe: rat(ints.qe),
        c: abc.iter().map(|t| rat(t[0])).collect(),
        a: abc.iter().map(|t| rat(t[1])).collect(),
        b: abc.iter().map(|t| rat(t[2])).collect(),
        theta: theta_int.iter().map(|&t| rat(t)).collect(),
        theta_s,
        c_t: clique_abc.iter().map(|t| rat(t[0])).collect(),
        a_t: clique_abc.iter().map(|t| rat(t[1])).collect(),
        b_t: clique_abc.iter().map(|t| rat(t[2])).collect(),
        theta_s_t: theta_s_t.into_iter().map(|t| t.expect("every cell is nonempty")).collect(),
    };
    profile.check_invariants()?;
    ensure(profile.theta.windows(2).all(|w| w[0] > w[1]), "eigenvalues strictly decreasing")?;
    ensure(profile.theta[0] == profile.b[0], "valency is the largest eigenvalue")?;
    Ok(GraphAnalysis { ints, profile, spectral, sphere_sizes })
}

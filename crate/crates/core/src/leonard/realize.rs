//! The four Leonard systems on **W**, each restricted to its subspace and
//! written in its standard basis `E^*_i u`.

use super::{DualQKSeq, IntersectionNumbers, LeonardError, ParamArray, SystemKind};
use crate::algebra::Field;
use crate::checks::CheckLog;
use crate::drg::WModule;
use crate::linalg::{primitive_idempotents, strongly_connected, Matrix};

/// A Leonard system realized on a subspace of **W**.
#[derive(Clone, Debug, PartialEq)]
pub struct LeonardSystem<F> {
    pub kind: SystemKind,
    pub d: usize,
    /// Standard basis `E^*_i u` as vectors of **W**.
    pub basis: Vec<Vec<F>>,
    /// `A` and `A^*` in the standard basis.
    pub a: Matrix<F>,
    pub a_s: Matrix<F>,
    pub e: Vec<Matrix<F>>,
    pub e_s: Vec<Matrix<F>>,
    pub seq: DualQKSeq<F>,
    /// Recovered from the measured intersection numbers.
    pub params: ParamArray<F>,
    pub ints: IntersectionNumbers<F>,
    pub m: Vec<F>,
    pub log: CheckLog,
}

/// All four systems together with the decomposition checks.
#[derive(Clone, Debug, PartialEq)]
pub struct FourSystems<F> {
    pub systems: Vec<LeonardSystem<F>>,
    pub log: CheckLog,
}

impl<F> FourSystems<F> {
    pub fn get(&self, kind: SystemKind) -> &LeonardSystem<F> {
        self.systems.iter().find(|s| s.kind == kind).expect("all four systems are present")
    }
}

/// Coordinates on a subspace: `L = (B^H G B)^{-1} B^H G`.
struct Restriction<F> {
    b: Matrix<F>,
    left: Matrix<F>,
}

impl<F: Field> Restriction<F> {
    fn new(basis: &[Vec<F>], gram: &[F]) -> Result<Self, LeonardError> {
        let b = Matrix::from_columns(basis);
        let bh_g = b.conj_transpose().mul(&Matrix::diagonal(gram));
        let left = bh_g.mul(&b).inverse()?.mul(&bh_g);
        Ok(Restriction { b, left })
    }

    /// Matrix of `t` on the subspace, or `None` if the subspace is not `t`-invariant.
    fn restrict(&self, t: &Matrix<F>) -> Option<Matrix<F>> {
        let tb = t.mul(&self.b);
        let m = self.left.mul(&tb);
        (self.b.mul(&m) == tb).then_some(m)
    }
}

fn off_band_zero<F: Field>(es: &[Matrix<F>], t: &Matrix<F>) -> bool {
    let n = es.len();
    (0..n).all(|i| (0..n).filter(|&j| i.abs_diff(j) > 1).all(|j| es[i].mul(t).mul(&es[j]).is_zero()))
}

/// Realizes system `kind` on **W** and verifies it.
pub fn realize<F: Field>(kind: SystemKind, w: &WModule<F>) -> Result<LeonardSystem<F>, LeonardError> {
    let dd = w.d();
    let d = kind.diameter(dd);
    let mut log = CheckLog::new();
    let structure = |detail: String| LeonardError::Structure { system: kind, detail };
    let axiom = |name: &'static str| move |detail: String| LeonardError::Axiom { system: kind, axiom: name, detail };

    let (basis, u, e_off, dual_es, dual_off, dual_op): (Vec<Vec<F>>, Vec<F>, usize, &[Matrix<F>], usize, &Matrix<F>) = match kind {
        SystemKind::Phi => ((0..=dd).map(|i| w.a_i_xhat(i)).collect(), w.all_ones(), 0, &w.e_s, 0, &w.a_s),
        SystemKind::PhiPerp => (w.u_perp.clone(), w.w.clone(), 1, &w.e_s, 1, &w.a_s),
        SystemKind::PhiTilde => ((0..dd).map(|i| w.c_i_hat(i)).collect(), w.all_ones(), 0, &w.e_s_t, 0, &w.a_s_t),
        SystemKind::PhiTildePerp => (w.u_perp_t.clone(), w.w_t.clone(), 1, &w.e_s_t, 0, &w.a_s_t),
    };
    log.ensure(basis.len() == d + 1, format!("dimension is {}", d + 1), structure)?;
    log.ensure(w.e[e_off].apply(&u) == u, "u lies in the first eigenspace", structure)?;
    for (i, v) in basis.iter().enumerate() {
        log.ensure(dual_es[dual_off + i].apply(&u) == *v, format!("E^*_{i} u is standard basis vector {i}"), structure)?;
    }

    let r = Restriction::new(&basis, &w.gram)?;
    let restrict = |t: &Matrix<F>, name: String| {
        r.restrict(t).ok_or_else(|| LeonardError::Structure { system: kind, detail: format!("subspace is not invariant under {name}") })
    };
    let a = restrict(&w.a, "A".into())?;
    let a_s = restrict(dual_op, "the dual adjacency".into())?;
    let e: Vec<Matrix<F>> = (0..=d).map(|i| restrict(&w.e[e_off + i], format!("E_{}", e_off + i))).collect::<Result<_, _>>()?;
    let e_s: Vec<Matrix<F>> = (0..=d).map(|i| restrict(&dual_es[dual_off + i], format!("E^*_{}", dual_off + i))).collect::<Result<_, _>>()?;
    log.record("subspace invariant under A, A^* and all idempotents");

    let seq = DualQKSeq::for_system(kind, &w.q, &w.qe, dd)?;
    let claimed = seq.param_array()?;
    let mismatch = |what: &'static str, index: usize| LeonardError::ParameterMismatch { system: kind, what, index };
    let theta: Vec<F> = (0..=d).map(|i| w.theta[e_off + i].clone()).collect();
    let theta_s: Vec<F> = (0..=d).map(|i| a_s.get(i, i).clone()).collect();
    if let Some(i) = (0..=d).find(|&i| theta[i] != claimed.theta[i]) {
        return Err(mismatch("eigenvalue", i));
    }
    if let Some(i) = (0..=d).find(|&i| theta_s[i] != claimed.theta_s[i]) {
        return Err(mismatch("dual eigenvalue", i));
    }
    log.record("eigenvalues and dual eigenvalues match the parameter sequence");

    // (LS1), (LS2): both operators are multiplicity-free on a (d+1)-space
    // with d+1 distinct eigenvalues, and the given idempotents are exactly
    // their primitive idempotents in the stated order.
    let prim = primitive_idempotents(&a, &theta).map_err(|err| axiom("LS1")(err.to_string()))?;
    let prim_s = primitive_idempotents(&a_s, &theta_s).map_err(|err| axiom("LS1")(err.to_string()))?;
    log.ensure(e.iter().chain(&e_s).all(|m| m.rank() == 1), "LS1: every idempotent has rank one", axiom("LS1"))?;
    log.ensure(prim == e, "LS2: E_i is the ordering of the primitive idempotents of A", axiom("LS2"))?;
    log.ensure(prim_s == e_s, "LS2: E^*_i is the ordering of the primitive idempotents of A^*", axiom("LS2"))?;
    log.ensure(off_band_zero(&e_s, &a), "LS3: E^*_i A E^*_j = 0 for |i - j| > 1", axiom("LS3"))?;
    log.ensure(off_band_zero(&e, &a_s), "LS3: E_i A^* E_j = 0 for |i - j| > 1", axiom("LS3"))?;
    // A^* is diagonal with distinct entries here, so its invariant subspaces
    // are coordinate subspaces; A-invariance then means closure in the graph
    // of nonzero entries of A.
    log.ensure(a_s.is_diagonal() && strongly_connected(&[&a, &a_s]), "LS4: no proper A- and A^*-invariant subspace", axiom("LS4"))?;

    let ints = IntersectionNumbers::from_bc(
        &theta[0],
        (0..=d).map(|i| if i < d { a.get(i, i + 1).clone() } else { F::zero() }).collect(),
        (0..=d).map(|i| if i > 0 { a.get(i, i - 1).clone() } else { F::zero() }).collect(),
    );
    log.ensure((0..=d).all(|i| *a.get(i, i) == ints.a[i]), "a_i + b_i + c_i = theta_0", structure)?;
    log.ensure((1..=d).all(|i| !ints.b[i - 1].mul(&ints.c[i]).is_zero()), "b_{i-1} c_i != 0", structure)?;
    if ints != seq.intersection_numbers() {
        return Err(mismatch("intersection numbers (closed form)", first_diff(&ints, &seq.intersection_numbers())));
    }
    if ints != claimed.intersection_numbers() {
        return Err(mismatch("intersection numbers (split-sequence quotients)", first_diff(&ints, &claimed.intersection_numbers())));
    }
    log.record("intersection numbers agree with the closed form and the split-sequence quotients");

    let params = ParamArray::from_intersection_numbers(theta.clone(), theta_s, &ints)?;
    if let Some(i) = (0..d).find(|&i| params.varphi[i] != claimed.varphi[i]) {
        return Err(mismatch("first split sequence", i + 1));
    }
    if let Some(i) = (0..d).find(|&i| params.phi[i] != claimed.phi[i]) {
        return Err(mismatch("second split sequence", i + 1));
    }
    log.record("recovered split sequences match the parameter sequence");

    let v = ints.v_polys()?;
    let v0 = ints.v_at_theta0();
    let id = Matrix::identity(d + 1);
    let unit = |k: usize| id.column(k);
    for (i, vi) in v.iter().enumerate() {
        let vi_a = poly_at(vi, &a);
        log.ensure(vi_a.apply(&unit(0)) == unit(i), format!("v_{i}(A) E^*_0 u = E^*_{i} u"), structure)?;
        log.ensure(vi.eval(&theta[0]) == v0[i], format!("v_{i}(theta_0) = b_0...b_{{i-1}} / (c_1...c_i)"), structure)?;
    }
    for i in 0..=d {
        let f = params.f_poly(i)?;
        for j in 0..=d {
            let hyper = seq.f_value(i, j)?;
            let via_v = v[i].eval(&theta[j]).div(&v0[i]).expect("v_i(theta_0) != 0");
            if hyper != f.eval(&theta[j]) || hyper != via_v {
                return Err(LeonardError::RouteMismatch { what: "f_i(theta_j) routes", index: i * (d + 1) + j });
            }
        }
    }
    log.record("f_i(theta_j): 3phi2, split-sequence sum and v_i / v_i(theta_0) agree");

    let mut m = Vec::with_capacity(d + 1);
    let mut total = F::zero();
    for i in 0..=d {
        let mi = e[i].mul(&e_s[0]).trace();
        log.ensure(mi == seq.m_closed(i)?, format!("m_{i} = trace(E_{i} E^*_0) matches the closed form"), structure)?;
        log.ensure(mi == params.m_general(i)?, format!("m_{i} matches the parameter-array formula"), structure)?;
        log.ensure(e_s[0].mul(&e[i]).mul(&e_s[0]) == e_s[0].scale(&mi), format!("E^*_0 E_{i} E^*_0 = m_{i} E^*_0"), structure)?;
        total = total.add(&mi);
        m.push(mi);
    }
    log.ensure(total.is_one(), "sum of m_i is 1", structure)?;

    Ok(LeonardSystem { kind, d, basis, a, a_s, e, e_s, seq, params, ints, m, log })
}

fn first_diff<F: Field>(x: &IntersectionNumbers<F>, y: &IntersectionNumbers<F>) -> usize {
    (0..x.b.len()).find(|&i| x.a[i] != y.a[i] || x.b[i] != y.b[i] || x.c[i] != y.c[i]).unwrap_or(0)
}

/// `p(M)` for an ordinary polynomial `p`.
fn poly_at<F: Field>(p: &crate::laurent::LaurentPoly<F>, m: &Matrix<F>) -> Matrix<F> {
    p.eval_matrix(m, m)
}

/// Realizes all four systems and checks that they decompose **W** orthogonally.
pub fn realize_four_systems<F: Field>(w: &WModule<F>) -> Result<FourSystems<F>, LeonardError> {
    let systems: Vec<LeonardSystem<F>> = SystemKind::ALL.iter().map(|&k| realize(k, w)).collect::<Result<_, _>>()?;
    let mut log = CheckLog::new();
    let structure = |kind| move |detail: String| LeonardError::Structure { system: kind, detail };
    for (main, perp) in [(0, 1), (2, 3)] {
        let (s, t) = (&systems[main], &systems[perp]);
        log.ensure(s.basis.len() + t.basis.len() == w.dim(), format!("{} and {} dimensions sum to dim W", s.kind, t.kind), structure(t.kind))?;
        let orth = s.basis.iter().all(|x| t.basis.iter().all(|y| w.inner(x, y).is_zero()));
        log.ensure(orth, format!("{} is orthogonal to {}", s.kind, t.kind), structure(t.kind))?;
    }
    Ok(FourSystems { systems, log })
}

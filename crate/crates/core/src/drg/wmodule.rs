//! The module **W** with basis `C_0^-, C_0^+, ..., C_{D-1}^-, C_{D-1}^+`
//! and the operators acting on it, generic over the coefficient field.

use super::partition::CliquePartition;
use super::profile::GraphAnalysis;
use super::{ensure, minus, plus, DrgError};
use crate::algebra::{Field, Ring};
use crate::family::{Consts, FamilyParams};
use crate::geometry::DPGraph;
use crate::linalg::{cyclic_closure_dim, gram_project, idempotents_orthogonal, primitive_idempotents, Matrix};
use num_rational::BigRational;

/// Data that determines **W**: everything else is derived.
#[derive(Clone, Debug)]
pub struct WInput<F> {
    pub params: FamilyParams,
    pub q: F,
    pub qe: F,
    pub num_vertices: F,
    /// Cell sizes, the diagonal of the Gram matrix.
    pub counts: Vec<F>,
    /// Adjacency action in the cell basis (column convention).
    pub a: Matrix<F>,
    pub theta: Vec<F>,
    pub theta_s: Vec<F>,
    pub theta_s_t: Vec<F>,
}

impl<F: Field> WInput<F> {
    /// Everything from closed forms.
    pub fn from_consts(k: &Consts<F>) -> Self {
        let d = k.d();
        let theta_s_t = (0..d).map(|i| k.alpha_s.add(&k.beta_s_tilde.mul(&k.qp(-(i as i64))))).collect();
        WInput {
            params: k.params,
            q: k.q.clone(),
            qe: k.qe(),
            num_vertices: k.num_vertices(),
            counts: k.counts(),
            a: adjacency_closed_form(&k.q, &k.qe(), d),
            theta: (0..=d).map(|i| k.theta(i)).collect(),
            theta_s: (0..=d).map(|i| k.theta_s(i)).collect(),
            theta_s_t,
        }
    }
}

impl WInput<BigRational> {
    /// Everything measured on a concrete graph.
    pub fn from_graph(g: &DPGraph, analysis: &GraphAnalysis, part: &CliquePartition) -> Self {
        let r = |n: i64| BigRational::from_i64(n);
        let m = part.quotient.len();
        WInput {
            params: g.params(),
            q: r(analysis.ints.q),
            qe: r(analysis.ints.qe),
            num_vertices: r(g.len() as i64),
            counts: part.counts().iter().map(|&c| r(c as i64)).collect(),
            a: Matrix::from_fn(m, m, |k, j| r(part.quotient[k][j])),
            theta: analysis.profile.theta.clone(),
            theta_s: analysis.profile.theta_s.clone(),
            theta_s_t: analysis.profile.theta_s_t.clone(),
        }
    }
}

fn qpow<F: Field>(q: &F, n: i64) -> F {
    q.pow_i(n).expect("q != 0")
}

fn gauss<F: Field>(q: &F, n: i64) -> F {
    qpow(q, n).sub(&F::one()).div(&q.sub(&F::one())).expect("q != 1")
}

/// The action of `A` on the cell basis, from the intersection numbers.
pub fn adjacency_closed_form<F: Field>(q: &F, qe: &F, d: usize) -> Matrix<F> {
    let mut a = Matrix::zeros(2 * d, 2 * d);
    let one = F::one();
    let qm1 = q.sub(&one);
    let q_d = qpow(q, d as i64);
    for i in 0..d {
        let qi = qpow(q, i as i64);
        let b_i = qe.mul(&q_d.sub(&qi)).div(&qm1).expect("q != 1");
        let (m, p) = (minus(i), plus(i));
        if i >= 1 {
            a.set(minus(i - 1), m, b_i.clone());
            a.set(plus(i - 1), p, b_i);
        }
        a.set(m, m, qe.sub(&one).mul(&gauss(q, i as i64)));
        a.set(p, m, qi.clone());
        a.set(m, p, qe.mul(&qi));
        a.set(p, p, qe.sub(&one).mul(&gauss(q, i as i64 + 1)));
        if i + 1 < d {
            a.set(minus(i + 1), m, gauss(q, i as i64 + 1));
            a.set(plus(i + 1), p, gauss(q, i as i64 + 1));
        }
    }
    a
}

fn vadd<F: Field>(u: &[F], v: &[F]) -> Vec<F> {
    u.iter().zip(v).map(|(a, b)| a.add(b)).collect()
}

fn vscale<F: Field>(u: &[F], c: &F) -> Vec<F> {
    u.iter().map(|a| a.mul(c)).collect()
}

fn first_mismatch<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Option<(usize, usize)> {
    (0..a.rows()).flat_map(|r| (0..a.cols()).map(move |c| (r, c))).find(|&(r, c)| a.get(r, c) != b.get(r, c))
}

/// The module **W** with every operator and distinguished vector.
#[derive(Clone, Debug, PartialEq)]
pub struct WModule<F> {
    pub params: FamilyParams,
    pub q: F,
    pub qe: F,
    pub num_vertices: F,
    pub gram: Vec<F>,
    pub theta: Vec<F>,
    pub theta_s: Vec<F>,
    pub theta_s_t: Vec<F>,
    pub alpha_s: F,
    pub beta_s: F,
    pub a: Matrix<F>,
    pub a_s: Matrix<F>,
    pub a_s_t: Matrix<F>,
    /// `E_0, ..., E_D`.
    pub e: Vec<Matrix<F>>,
    /// `E_0^*, ..., E_D^*`.
    pub e_s: Vec<Matrix<F>>,
    /// `~E_0^*, ..., ~E_{D-1}^*`.
    pub e_s_t: Vec<Matrix<F>>,
    pub pi: Matrix<F>,
    pub pi_t: Matrix<F>,
    pub x_hat: Vec<F>,
    pub c_hat: Vec<F>,
    pub w: Vec<F>,
    pub w_t: Vec<F>,
    /// `u_0^perp, ..., u_{D-2}^perp`.
    pub u_perp: Vec<Vec<F>>,
    /// `~u_0^perp, ..., ~u_{D-1}^perp`.
    pub u_perp_t: Vec<Vec<F>>,
    pub c: F,
    pub c_t: F,
}

impl<F: Field> WModule<F> {
    pub fn d(&self) -> usize {
        self.params.d
    }

    pub fn dim(&self) -> usize {
        2 * self.params.d
    }

    /// `q^n` for any integer `n`.
    pub fn qp(&self, n: i64) -> F {
        qpow(&self.q, n)
    }

    pub fn unit(&self, k: usize) -> Vec<F> {
        (0..self.dim()).map(|j| if j == k { F::one() } else { F::zero() }).collect()
    }

    /// `A_i x̂ = Ĉ_i^- + Ĉ_{i-1}^+`, `0 <= i <= D`.
    pub fn a_i_xhat(&self, i: usize) -> Vec<F> {
        let d = self.d();
        (0..self.dim())
            .map(|k| {
                let hit = (i < d && k == minus(i)) || (i >= 1 && k == plus(i - 1));
                if hit {
                    F::one()
                } else {
                    F::zero()
                }
            })
            .collect()
    }

    /// `Ĉ_i = Ĉ_i^- + Ĉ_i^+`.
    pub fn c_i_hat(&self, i: usize) -> Vec<F> {
        vadd(&self.unit(minus(i)), &self.unit(plus(i)))
    }

    /// The all-ones vector `X̂`.
    pub fn all_ones(&self) -> Vec<F> {
        vec![F::one(); self.dim()]
    }

    /// `<u, v> = sum_k u_k conj(v_k) |cell_k|`.
    pub fn inner(&self, u: &[F], v: &[F]) -> F {
        let mut acc = F::zero();
        for ((a, b), g) in u.iter().zip(v).zip(&self.gram) {
            acc = acc.add(&a.mul(&b.conj()).mul(g));
        }
        acc
    }

    fn gram_matrix(&self) -> Matrix<F> {
        Matrix::diagonal(&self.gram)
    }

    /// Whether `M` is self-adjoint for the Gram form.
    pub fn is_self_adjoint(&self, m: &Matrix<F>) -> bool {
        let g = self.gram_matrix();
        g.mul(m) == m.conj_transpose().mul(&g)
    }

    /// Builds every operator and verifies the structure.
    pub fn build(input: WInput<F>) -> Result<Self, DrgError> {
        let WInput { params, q, qe, num_vertices, counts, a, theta, theta_s, theta_s_t } = input;
        let d = params.d;
        let dim = 2 * d;
        let one = F::one();
        ensure(counts.len() == dim && counts.iter().all(|c| !c.is_zero()), "cell sizes are nonzero")?;
        ensure(theta.len() == d + 1 && theta_s.len() == d + 1 && theta_s_t.len() == d, "sequence lengths")?;

        if let Some((row, col)) = first_mismatch(&a, &adjacency_closed_form(&q, &qe, d)) {
            return Err(DrgError::TableMismatch { what: "adjacency action on the cell basis", row, col });
        }

        // dual idempotents: cell minus(j) is at distance j from x, plus(j) at distance j + 1
        let dist_of = |k: usize| k / 2 + k % 2;
        let diag_where = |f: &dyn Fn(usize) -> bool| {
            Matrix::diagonal(&(0..dim).map(|k| if f(k) { one.clone() } else { F::zero() }).collect::<Vec<_>>())
        };
        let e_s: Vec<Matrix<F>> = (0..=d).map(|i| diag_where(&|k| dist_of(k) == i)).collect();
        let e_s_t: Vec<Matrix<F>> = (0..d).map(|i| diag_where(&|k| k / 2 == i)).collect();
        let a_s = Matrix::diagonal(&(0..dim).map(|k| theta_s[dist_of(k)].clone()).collect::<Vec<_>>());
        let a_s_t = Matrix::diagonal(&(0..dim).map(|k| theta_s_t[k / 2].clone()).collect::<Vec<_>>());
        let combo = |es: &[Matrix<F>], th: &[F]| {
            es.iter().zip(th).fold(Matrix::zeros(dim, dim), |acc, (e, t)| acc.add(&e.scale(t)))
        };
        let ones: Vec<F> = vec![one.clone(); d + 1];
        for (name, es, th, op) in [("E^*", &e_s, &theta_s, &a_s), ("~E^*", &e_s_t, &theta_s_t, &a_s_t)] {
            ensure(combo(es, &ones[..es.len()]) == Matrix::identity(dim), format!("sum of {name}_i is I"))?;
            ensure(idempotents_orthogonal(es), format!("{name}_i are orthogonal idempotents"))?;
            ensure(combo(es, th) == *op, format!("dual adjacency is sum of theta * {name}_i"))?;
        }

        // each E_i is a polynomial in A with A E_i = theta_i E_i, so
        // E_i E_j = delta_ij E_i follows from these checks
        let e = primitive_idempotents(&a, &theta)?;
        ensure(combo(&e, &ones) == Matrix::identity(dim), "sum of E_i is I")?;
        ensure(combo(&e, &theta) == a, "A = sum theta_i E_i")?;

        let mut w = WModule {
            params,
            q: q.clone(),
            qe: qe.clone(),
            num_vertices,
            gram: counts,
            theta,
            theta_s,
            theta_s_t,
            alpha_s: F::zero(),
            beta_s: F::zero(),
            a,
            a_s,
            a_s_t,
            e,
            e_s,
            e_s_t,
            pi: Matrix::zeros(dim, dim),
            pi_t: Matrix::zeros(dim, dim),
            x_hat: Vec::new(),
            c_hat: Vec::new(),
            w: Vec::new(),
            w_t: Vec::new(),
            u_perp: Vec::new(),
            u_perp_t: Vec::new(),
            c: F::zero(),
            c_t: F::zero(),
        };
        w.x_hat = w.unit(minus(0));
        w.c_hat = w.c_i_hat(0);

        for (name, m) in [("A", &w.a), ("A^*", &w.a_s), ("~A^*", &w.a_s_t)] {
            ensure(w.is_self_adjoint(m), format!("{name} is self-adjoint"))?;
        }
        let big_x = w.all_ones();
        ensure(w.e[0].rank() == 1 && w.e[0].apply(&big_x) == big_x, "E_0 W is spanned by the all-ones vector")?;
        for i in 1..d {
            ensure(w.e[i].rank() == 2, format!("E_{i} has rank two on W"))?;
        }
        ensure(w.e[d].rank() == 1, "E_D has rank one on W")?;
        ensure(w.e[d].apply(&w.c_hat).iter().all(|x| x.is_zero()), "E_D Ĉ = 0")?;
        let gens = [&w.a, &w.a_s, &w.a_s_t];
        ensure(cyclic_closure_dim(&gens, &w.x_hat) == dim, "x̂ generates W")?;
        ensure(cyclic_closure_dim(&gens, &big_x) == dim, "X̂ generates W")?;

        let mx: Vec<Vec<F>> = (0..=d).map(|i| w.a_i_xhat(i)).collect();
        let mc: Vec<Vec<F>> = (0..d).map(|i| w.c_i_hat(i)).collect();
        ensure(Matrix::from_columns(&mx).rank() == d + 1, "dim M x̂ = D + 1")?;
        ensure(Matrix::from_columns(&mc).rank() == d, "dim M Ĉ = D")?;
        for (i, v) in mx.iter().enumerate() {
            ensure(w.a_s.apply(v) == vscale(v, &w.theta_s[i]), format!("A^* A_{i} x̂ = theta^*_{i} A_{i} x̂"))?;
        }
        w.pi = gram_project(&mx, &w.gram)?;
        w.pi_t = gram_project(&mc, &w.gram)?;
        if let Some((row, col)) = first_mismatch(&w.pi, &w.pi_closed_form()) {
            return Err(DrgError::TableMismatch { what: "projection onto M x̂", row, col });
        }
        if let Some((row, col)) = first_mismatch(&w.pi_t, &w.pi_t_closed_form()) {
            return Err(DrgError::TableMismatch { what: "projection onto M Ĉ", row, col });
        }
        let id = Matrix::identity(dim);
        let g = w.gram_matrix();
        for (name, p, dual) in [("pi", &w.pi, &w.a_s), ("~pi", &w.pi_t, &w.a_s_t)] {
            ensure(p.mul(p) == *p, format!("{name}^2 = {name}"))?;
            ensure(w.is_self_adjoint(p), format!("{name} is self-adjoint"))?;
            ensure(p.conj_transpose().mul(&g).mul(&id.sub(p)).is_zero(), format!("{name} W is orthogonal to (1 - {name}) W"))?;
            ensure(p.mul(&w.a) == w.a.mul(p), format!("{name} commutes with A"))?;
            ensure(p.mul(dual) == dual.mul(p), format!("{name} commutes with its dual adjacency"))?;
        }
        for v in &mx {
            ensure(w.pi.apply(v) == *v, "pi fixes M x̂")?;
        }
        for v in &mc {
            ensure(w.pi_t.apply(v) == *v, "~pi fixes M Ĉ")?;
        }

        // dual eigenvalues have the form alpha^* + beta^* q^{-i}
        let q_inv = w.qp(-1);
        w.beta_s = w.theta_s[0].sub(&w.theta_s[1]).div(&one.sub(&q_inv)).expect("q != 1");
        w.alpha_s = w.theta_s[0].sub(&w.beta_s);
        for i in 0..=d {
            ensure(w.theta_s[i] == w.alpha_s.add(&w.beta_s.mul(&w.qp(-(i as i64)))), format!("theta^*_{i} = alpha^* + beta^* q^-{i}"))?;
        }
        w.check_norms()?;
        w.build_perp_vectors()?;
        Ok(w)
    }

    /// The projection onto `M x̂` from its explicit coefficients.
    pub fn pi_closed_form(&self) -> Matrix<F> {
        let d = self.d();
        let one = F::one();
        let q_d = self.qp(d as i64);
        let den = q_d.sub(&one);
        let mut p = Matrix::zeros(self.dim(), self.dim());
        p.set(minus(0), minus(0), one.clone());
        p.set(plus(d - 1), plus(d - 1), one.clone());
        for i in 1..d {
            let qi = self.qp(i as i64);
            let lo = qi.sub(&one).div(&den).expect("q^D != 1");
            let hi = q_d.sub(&qi).div(&den).expect("q^D != 1");
            for row in [plus(i - 1), minus(i)] {
                p.set(row, plus(i - 1), lo.clone());
                p.set(row, minus(i), hi.clone());
            }
        }
        p
    }

    /// The projection onto `M Ĉ` from its explicit coefficients.
    pub fn pi_t_closed_form(&self) -> Matrix<F> {
        let one_qe = F::one().add(&self.qe);
        let lo = F::one().div(&one_qe).expect("1 + q^e != 0");
        let hi = self.qe.div(&one_qe).expect("1 + q^e != 0");
        let mut p = Matrix::zeros(self.dim(), self.dim());
        for i in 0..self.d() {
            for row in [minus(i), plus(i)] {
                p.set(row, minus(i), lo.clone());
                p.set(row, plus(i), hi.clone());
            }
        }
        p
    }

    /// `||E_1 x̂||^2`, `<E_1 x̂, E_1 Ĉ>`, `||E_1 Ĉ||^2` against their values in terms of the dual eigenvalues.
    fn check_norms(&self) -> Result<(), DrgError> {
        let e1x = self.e[1].apply(&self.x_hat);
        let e1c = self.e[1].apply(&self.c_hat);
        let n = &self.num_vertices;
        let t01 = self.theta_s[0].add(&self.qe.mul(&self.theta_s[1]));
        let one_qe = F::one().add(&self.qe);
        ensure(self.inner(&e1x, &e1x) == self.theta_s[0].div(n).expect("|X| != 0"), "||E_1 x̂||^2 = theta^*_0 / |X|")?;
        ensure(self.inner(&e1x, &e1c) == t01.div(n).expect("|X| != 0"), "<E_1 x̂, E_1 Ĉ>")?;
        ensure(self.inner(&e1c, &e1c) == one_qe.mul(&t01).div(n).expect("|X| != 0"), "||E_1 Ĉ||^2")?;
        Ok(())
    }

    fn build_perp_vectors(&mut self) -> Result<(), DrgError> {
        let d = self.d() as i64;
        let one = F::one();
        let (alpha_s, beta_s) = (self.alpha_s.clone(), self.beta_s.clone());
        let q = self.q.clone();
        let qe = self.qe.clone();
        let qe_over_q = qe.div(&q).expect("q != 0");
        self.c = self
            .num_vertices
            .mul(&alpha_s.add(&beta_s))
            .div(&alpha_s.mul(&beta_s).mul(&qe_over_q).mul(&one.sub(&q)))
            .ok_or_else(|| DrgError::Invariant("normalizing constant c is undefined".into()))?;
        self.c_t = self
            .num_vertices
            .mul(&q)
            .mul(&one.add(&qe))
            .div(&beta_s.mul(&one.sub(&q)))
            .ok_or_else(|| DrgError::Invariant("normalizing constant ~c is undefined".into()))?;

        let mut w_cf = vec![F::zero(); self.dim()];
        let mut wt_cf = vec![F::zero(); self.dim()];
        for i in 0..d {
            let (m, p) = (minus(i as usize), plus(i as usize));
            w_cf[m] = self.qp(-i).sub(&one);
            w_cf[p] = self.qp(d - i - 1).sub(&one);
            wt_cf[m] = qe.mul(&self.qp(-i)).neg();
            wt_cf[p] = self.qp(-i);
        }
        let e1x = self.e[1].apply(&self.x_hat);
        let e1c = self.e[1].apply(&self.c_hat);
        let ratio = self.theta_s[0].add(&qe.mul(&self.theta_s[1])).div(&self.theta_s[0]).expect("theta^*_0 != 0");
        let w = vscale(&vadd(&e1c, &vscale(&e1x, &ratio.neg())), &self.c);
        ensure(w == w_cf, "w = c (E_1 Ĉ - ratio E_1 x̂) matches its expansion")?;
        let inv_one_qe = one.div(&one.add(&qe)).expect("1 + q^e != 0");
        let w_t = vscale(&vadd(&e1x, &vscale(&e1c, &inv_one_qe.neg())), &self.c_t);
        ensure(w_t == wt_cf, "~w = ~c (E_1 x̂ - E_1 Ĉ / (1 + q^e)) matches its expansion")?;
        let dd = self.d();
        ensure(self.e_s[0].apply(&w).iter().chain(self.e_s[dd].apply(&w).iter()).all(|x| x.is_zero()), "E^*_0 w = E^*_D w = 0")?;
        self.w = w;
        self.w_t = w_t;

        self.u_perp = (0..dd - 1).map(|i| self.e_s[i + 1].apply(&self.w)).collect();
        self.u_perp_t = (0..dd).map(|i| self.e_s_t[i].apply(&self.w_t)).collect();
        for (i, u) in self.u_perp.iter().enumerate() {
            let ii = i as i64;
            let mut cf = vec![F::zero(); self.dim()];
            cf[plus(i)] = self.qp(d - ii - 1).sub(&one);
            cf[minus(i + 1)] = self.qp(-ii - 1).sub(&one);
            ensure(*u == cf, format!("u_{i}^perp expansion"))?;
            ensure(self.pi.apply(u).iter().all(|x| x.is_zero()), format!("u_{i}^perp is orthogonal to M x̂"))?;
            ensure(self.a_s.apply(u) == vscale(u, &self.theta_s[i + 1]), format!("A^* u_{i}^perp"))?;
        }
        for (i, u) in self.u_perp_t.iter().enumerate() {
            let ii = i as i64;
            let mut cf = vec![F::zero(); self.dim()];
            cf[minus(i)] = qe.mul(&self.qp(-ii)).neg();
            cf[plus(i)] = self.qp(-ii);
            ensure(*u == cf, format!("~u_{i}^perp expansion"))?;
            ensure(self.pi_t.apply(u).iter().all(|x| x.is_zero()), format!("~u_{i}^perp is orthogonal to M Ĉ"))?;
            ensure(self.a_s_t.apply(u) == vscale(u, &self.theta_s_t[i]), format!("~A^* ~u_{i}^perp"))?;
        }

        // three-term recurrences for A on both perpendicular bases
        let qm1 = q.sub(&one);
        let frac = |x: F| x.div(&qm1).expect("q != 1");
        let q_d1 = qe.mul(&self.qp(d - 1));
        for (i, u) in self.u_perp.iter().enumerate() {
            let ii = i as i64;
            let mut rhs = vscale(u, &qe.sub(&one).mul(&gauss(&q, ii + 1)));
            if i >= 1 {
                rhs = vadd(&rhs, &vscale(&self.u_perp[i - 1], &frac(q_d1.sub(&qe.mul(&self.qp(ii))))));
            }
            if i + 1 < self.u_perp.len() {
                rhs = vadd(&rhs, &vscale(&self.u_perp[i + 1], &frac(self.qp(ii + 2).sub(&q))));
            }
            ensure(self.a.apply(u) == rhs, format!("A u_{i}^perp recurrence"))?;
        }
        for (i, u) in self.u_perp_t.iter().enumerate() {
            let ii = i as i64;
            let mid = frac(qe.mul(&self.qp(ii)).sub(&qe).sub(&self.qp(ii + 1)).add(&one));
            let mut rhs = vscale(u, &mid);
            if i >= 1 {
                rhs = vadd(&rhs, &vscale(&self.u_perp_t[i - 1], &frac(q_d1.sub(&qe.mul(&self.qp(ii - 1))))));
            }
            if i + 1 < self.u_perp_t.len() {
                rhs = vadd(&rhs, &vscale(&self.u_perp_t[i + 1], &frac(self.qp(ii + 2).sub(&q))));
            }
            ensure(self.a.apply(u) == rhs, format!("A ~u_{i}^perp recurrence"))?;
        }
        Ok(())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> WModule<G> {
        let v = |x: &[F]| x.iter().map(&f).collect::<Vec<G>>();
        let m = |x: &Matrix<F>| x.map(&f);
        WModule {
            params: self.params,
            q: f(&self.q),
            qe: f(&self.qe),
            num_vertices: f(&self.num_vertices),
            gram: v(&self.gram),
            theta: v(&self.theta),
            theta_s: v(&self.theta_s),
            theta_s_t: v(&self.theta_s_t),
            alpha_s: f(&self.alpha_s),
            beta_s: f(&self.beta_s),
            a: m(&self.a),
            a_s: m(&self.a_s),
            a_s_t: m(&self.a_s_t),
            e: self.e.iter().map(m).collect(),
            e_s: self.e_s.iter().map(m).collect(),
            e_s_t: self.e_s_t.iter().map(m).collect(),
            pi: m(&self.pi),
            pi_t: m(&self.pi_t),
            x_hat: v(&self.x_hat),
            c_hat: v(&self.c_hat),
            w: v(&self.w),
            w_t: v(&self.w_t),
            u_perp: self.u_perp.iter().map(|u| v(u)).collect(),
            u_perp_t: self.u_perp_t.iter().map(|u| v(u)).collect(),
            c: f(&self.c),
            c_t: f(&self.c_t),
        }
    }

    /// Name of the first component that differs from `other`.
    pub fn first_difference(&self, other: &Self) -> Option<&'static str> {
        let checks: [(&'static str, bool); 22] = [
            ("q", self.q == other.q),
            ("q^e", self.qe == other.qe),
            ("|X|", self.num_vertices == other.num_vertices),
            ("gram", self.gram == other.gram),
            ("theta", self.theta == other.theta),
            ("theta^*", self.theta_s == other.theta_s),
            ("~theta^*", self.theta_s_t == other.theta_s_t),
            ("A", self.a == other.a),
            ("A^*", self.a_s == other.a_s),
            ("~A^*", self.a_s_t == other.a_s_t),
            ("E_i", self.e == other.e),
            ("E^*_i", self.e_s == other.e_s),
            ("~E^*_i", self.e_s_t == other.e_s_t),
            ("pi", self.pi == other.pi),
            ("~pi", self.pi_t == other.pi_t),
            ("w", self.w == other.w),
            ("~w", self.w_t == other.w_t),
            ("u^perp", self.u_perp == other.u_perp),
            ("~u^perp", self.u_perp_t == other.u_perp_t),
            ("c", self.c == other.c),
            ("~c", self.c_t == other.c_t),
            ("alpha^*, beta^*", self.alpha_s == other.alpha_s && self.beta_s == other.beta_s),
        ];
        checks.iter().find(|(_, ok)| !ok).map(|(name, _)| *name)
    }
}

impl WModule<BigRational> {
    /// Builds **W** from a concrete graph and validates the dual adjacency
    /// matrices against `E_1` of the whole graph: `A^* = |X| diag(E_1 x̂)` and
    /// `~A^* = (1/|C|) sum_{z in C} A^*(z)`.
    pub fn from_graph(g: &DPGraph, analysis: &GraphAnalysis, part: &CliquePartition) -> Result<Self, DrgError> {
        let w = WModule::build(WInput::from_graph(g, analysis, part))?;
        let sp = &analysis.spectral;
        let ex = sp.scaled_e1_apply(g, &[(part.x, 1)]);
        let clique: Vec<(usize, i64)> = part.clique.iter().map(|&z| (z, 1)).collect();
        let size_c = BigRational::from_i64(part.clique.len() as i64);
        let ec = sp.scaled_e1_apply(g, &clique);
        for (k, cell) in part.cells.iter().enumerate() {
            for &y in cell {
                ensure(ex[y] == *w.a_s.get(k, k), format!("A^* on cell {k} agrees with |X| E_1 x̂ at vertex {y}"))?;
                ensure(ec[y].clone() / size_c.clone() == *w.a_s_t.get(k, k), format!("~A^* on cell {k} agrees with the clique average at vertex {y}"))?;
            }
        }
        Ok(w)
    }
}

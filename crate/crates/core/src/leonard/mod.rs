//! Leonard systems of dual q-Krawtchouk type: parameter sequences and
//! arrays, intersection numbers, the polynomials `f_i`, `v_i`, `h_i`, the
//! scalars `m_i`, and the four systems realized on **W**.

mod realize;

pub use realize::{realize_four_systems, FourSystems, LeonardSystem};

use crate::algebra::{Field, Ring};
use crate::laurent::LaurentPoly;
use crate::linalg::LinalgError;
use crate::scalars::{phi_32_terminating, q_pochhammer_in, ScalarError};
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LeonardError {
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("degenerate parameter array: {0}")]
    Degenerate(String),
    #[error("{what} disagree at index {index}")]
    RouteMismatch { what: &'static str, index: usize },
    #[error("{system}: axiom {axiom} fails ({detail})")]
    Axiom { system: SystemKind, axiom: &'static str, detail: String },
    #[error("{system}: {what} differs from the claimed parameter sequence at index {index}")]
    ParameterMismatch { system: SystemKind, what: &'static str, index: usize },
    #[error("{system}: {detail}")]
    Structure { system: SystemKind, detail: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The four Leonard systems carried by **W**.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum SystemKind {
    /// On `M x̂ = span{A_i x̂}`.
    Phi,
    /// On the orthogonal complement of `M x̂`.
    PhiPerp,
    /// On `M Ĉ = span{Ĉ_i}`.
    PhiTilde,
    /// On the orthogonal complement of `M Ĉ`.
    PhiTildePerp,
}

impl SystemKind {
    pub const ALL: [SystemKind; 4] = [SystemKind::Phi, SystemKind::PhiPerp, SystemKind::PhiTilde, SystemKind::PhiTildePerp];

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::Phi => "Phi",
            SystemKind::PhiPerp => "Phi-perp",
            SystemKind::PhiTilde => "Phi-tilde",
            SystemKind::PhiTildePerp => "Phi-tilde-perp",
        }
    }

    /// Diameter of the system for a graph of diameter `dd`.
    pub fn diameter(self, dd: usize) -> usize {
        match self {
            SystemKind::Phi => dd,
            SystemKind::PhiPerp => dd - 2,
            SystemKind::PhiTilde | SystemKind::PhiTildePerp => dd - 1,
        }
    }

    /// `k` such that the system's `tau` is `tau_Phi q^k`.
    pub fn tau_shift(self) -> i64 {
        match self {
            SystemKind::Phi | SystemKind::PhiTilde => 0,
            SystemKind::PhiPerp | SystemKind::PhiTildePerp => 1,
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn nonzero<F: Field>(x: &F, name: &'static str) -> Result<(), LeonardError> {
    if x.is_zero() {
        Err(LeonardError::ZeroParameter(name))
    } else {
        Ok(())
    }
}

fn div<F: Field>(a: &F, b: &F, what: &str) -> Result<F, LeonardError> {
    a.div(b).ok_or_else(|| LeonardError::Degenerate(format!("division by zero in {what}")))
}

fn qpow<F: Field>(q: &F, n: i64) -> F {
    q.pow_i(n).expect("q != 0")
}

/// A parameter sequence `(alpha, alpha^*, beta, beta^*, gamma; q, d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualQKSeq<F> {
    pub alpha: F,
    pub alpha_s: F,
    pub beta: F,
    pub beta_s: F,
    pub gamma: F,
    pub q: F,
    pub d: usize,
}

impl<F: Field> DualQKSeq<F> {
    pub fn new(alpha: F, alpha_s: F, beta: F, beta_s: F, gamma: F, q: F, d: usize) -> Result<Self, LeonardError> {
        nonzero(&beta, "beta")?;
        nonzero(&beta_s, "beta^*")?;
        nonzero(&gamma, "gamma")?;
        nonzero(&q, "q")?;
        if q.is_one() {
            return Err(LeonardError::Degenerate("q = 1".into()));
        }
        Ok(DualQKSeq { alpha, alpha_s, beta, beta_s, gamma, q, d })
    }

    /// The sequence of system `kind` on a dual polar graph of diameter `dd`
    /// with `q^e = qe`, computed from `q` and `q^e` alone.
    pub fn for_system(kind: SystemKind, q: &F, qe: &F, dd: usize) -> Result<Self, LeonardError> {
        let one = F::one();
        let qm1 = q.sub(&one);
        let one_m_q = one.sub(q);
        let q_de = qe.mul(&qpow(q, dd as i64));
        let alpha = div(&qe.sub(&one), &one_m_q, "alpha")?;
        let beta = div(&q_de, &qm1, "beta")?;
        let gamma = div(&one, &one_m_q, "gamma")?;
        let q_inv = qpow(q, -1);
        let t2 = one.add(&q_de.mul(&q_inv).mul(&q_inv));
        let t1 = one.add(&q_de.mul(&q_inv));
        let alpha_s = div(&q.mul(&t2), &one_m_q, "alpha^*")?;
        let qe_m1 = one.add(&qe.mul(&q_inv));
        let beta_s = div(&q.mul(&t2).mul(&t1), &qm1.mul(&qe_m1), "beta^*")?;
        let tilde = div(&qe_m1, &one.add(qe), "beta^* ratio")?;
        let (b, bs, g) = match kind {
            SystemKind::Phi => (beta, beta_s, gamma),
            SystemKind::PhiPerp => (beta.mul(&q_inv), beta_s.mul(&q_inv), gamma.mul(q)),
            SystemKind::PhiTilde => (beta, tilde.mul(&beta_s), gamma),
            SystemKind::PhiTildePerp => (beta.mul(&q_inv), tilde.mul(&beta_s), gamma.mul(q)),
        };
        DualQKSeq::new(alpha, alpha_s, b, bs, g, q.clone(), kind.diameter(dd))
    }

    pub fn qp(&self, n: i64) -> F {
        qpow(&self.q, n)
    }

    pub fn theta(&self, i: usize) -> F {
        let i = i as i64;
        self.alpha.add(&self.beta.mul(&self.qp(-i))).add(&self.gamma.mul(&self.qp(i)))
    }

    pub fn theta_s(&self, i: usize) -> F {
        self.alpha_s.add(&self.beta_s.mul(&self.qp(-(i as i64))))
    }

    /// `(1 - q^i)(1 - q^{i-d-1})`.
    fn split_core(&self, i: usize) -> F {
        let i = i as i64;
        let one = F::one();
        one.sub(&self.qp(i)).mul(&one.sub(&self.qp(i - self.d as i64 - 1)))
    }

    /// First split sequence, `1 <= i <= d`.
    pub fn varphi(&self, i: usize) -> F {
        let ii = i as i64;
        self.beta.mul(&self.beta_s).mul(&self.qp(1 - 2 * ii)).mul(&self.split_core(i))
    }

    /// Second split sequence, `1 <= i <= d`.
    pub fn phi(&self, i: usize) -> F {
        let ii = i as i64;
        self.gamma.mul(&self.beta_s).mul(&self.qp(self.d as i64 + 1 - 2 * ii)).mul(&self.split_core(i))
    }

    pub fn param_array(&self) -> Result<ParamArray<F>, LeonardError> {
        let d = self.d;
        let pa = ParamArray {
            theta: (0..=d).map(|i| self.theta(i)).collect(),
            theta_s: (0..=d).map(|i| self.theta_s(i)).collect(),
            varphi: (1..=d).map(|i| self.varphi(i)).collect(),
            phi: (1..=d).map(|i| self.phi(i)).collect(),
        };
        pa.validate()?;
        Ok(pa)
    }

    /// `b_i = beta (1 - q^{i-d})`, `c_i = gamma (1 - q^i)`, `a_i = theta_0 - b_i - c_i`.
    pub fn intersection_numbers(&self) -> IntersectionNumbers<F> {
        let one = F::one();
        let d = self.d as i64;
        let b: Vec<F> = (0..=d).map(|i| self.beta.mul(&one.sub(&self.qp(i - d)))).collect();
        let c: Vec<F> = (0..=d).map(|i| self.gamma.mul(&one.sub(&self.qp(i)))).collect();
        IntersectionNumbers::from_bc(&self.theta(0), b, c)
    }

    /// `beta^{-1} gamma`, the square of `tau`.
    pub fn tau_squared(&self) -> F {
        self.gamma.div(&self.beta).expect("beta != 0")
    }

    /// `f_i(theta_j)` as a terminating `3phi2`.
    pub fn f_value(&self, i: usize, j: usize) -> Result<F, LeonardError> {
        let jj = j as i64;
        let a2 = self.qp(-jj);
        let a3 = self.tau_squared().mul(&self.qp(jj));
        Ok(phi_32_terminating::<F, F>(i as u32, &a2, &a3, &self.qp(-(self.d as i64)), &self.q, &self.q)?)
    }

    /// `m_i` in closed form.
    pub fn m_closed(&self, i: usize) -> Result<F, LeonardError> {
        let ii = i as i64;
        let d = self.d as i64;
        let one = F::one();
        let r = self.beta.div(&self.gamma).expect("gamma != 0");
        let num = r
            .pow_u(i as u32)
            .mul(&q_pochhammer_in(&self.qp(-d), &self.q, i as u32))
            .mul(&one.sub(&r.mul(&self.qp(-2 * ii))));
        let den = self
            .qp(ii * (ii - 1))
            .mul(&q_pochhammer_in(&self.q, &self.q, i as u32))
            .mul(&q_pochhammer_in(&r.mul(&self.qp(-d - ii)), &self.q, self.d as u32 + 1));
        div(&num, &den, "m_i")
    }

    /// `(q^{-d}; q)_i / tau^i`.
    fn h_scale(&self, i: usize, tau: &F) -> Result<F, LeonardError> {
        let p = q_pochhammer_in(&self.qp(-(self.d as i64)), &self.q, i as u32);
        div(&p, &tau.pow_u(i as u32), "h_i normalization")
    }

    /// Checks `tau^2 = beta^{-1} gamma`.
    pub fn check_tau(&self, tau: &F) -> Result<(), LeonardError> {
        if tau.mul(tau) == self.tau_squared() {
            Ok(())
        } else {
            Err(LeonardError::Degenerate("tau^2 != gamma / beta".into()))
        }
    }

    /// The monic symmetric Laurent polynomial `h_i(eta; tau, d; q)`.
    pub fn h_poly(&self, i: usize, tau: &F) -> Result<LaurentPoly<F>, LeonardError> {
        h_poly(i, tau, &self.q, self.d)
    }

    /// `xi(eta) = alpha + beta tau (eta + eta^{-1})`, the eigenvalue variable in terms of `eta`.
    pub fn xi_of_eta(&self, tau: &F) -> LaurentPoly<F> {
        let bt = self.beta.mul(tau);
        LaurentPoly::new(-1, vec![bt.clone(), self.alpha.clone(), bt])
    }

    /// Checks the polynomial identities tying `h_i` to `f_i` and `v_i`:
    /// `h_i(eta) = (q^{-d};q)_i / tau^i f_i(xi(eta))`, monic and symmetric of
    /// degree `i`, and `v_i(theta_0) = (q^{-d};q)_i / (tau^{2i} (q;q)_i)`.
    pub fn check_h(&self, tau: &F) -> Result<Vec<LaurentPoly<F>>, LeonardError> {
        self.check_tau(tau)?;
        let pa = self.param_array()?;
        let ints = self.intersection_numbers();
        let xi = self.xi_of_eta(tau);
        let v0 = ints.v_at_theta0();
        let mut out = Vec::with_capacity(self.d + 1);
        for i in 0..=self.d {
            let h = self.h_poly(i, tau)?;
            let ii = i as i64;
            let ok_shape = h.low_degree() == -ii && h.high_degree() == ii && h.coeff(ii).is_one() && h.reflect() == h;
            if !ok_shape {
                return Err(LeonardError::RouteMismatch { what: "h_i shape (monic, symmetric, degree i)", index: i });
            }
            let scale = self.h_scale(i, tau)?;
            let from_f: LaurentPoly<F> = pa.f_poly(i)?.compose(&xi);
            if h != crate::algebra::Algebra::scale(&from_f, &scale) {
                return Err(LeonardError::RouteMismatch { what: "h_i and f_i(xi(eta))", index: i });
            }
            let expect = div(&scale, &tau.pow_u(i as u32).mul(&q_pochhammer_in(&self.q, &self.q, i as u32)), "v_i(theta_0)")?;
            if v0[i] != expect {
                return Err(LeonardError::RouteMismatch { what: "v_i(theta_0) and the h_i normalization", index: i });
            }
            out.push(h);
        }
        Ok(out)
    }
}

/// `h_i(eta; tau, d; q)`.
pub fn h_poly<F: Field>(i: usize, tau: &F, q: &F, d: usize) -> Result<LaurentPoly<F>, LeonardError> {
    let a2 = LaurentPoly::monomial(-1, tau.clone());
    let a3 = LaurentPoly::monomial(1, tau.clone());
    let q_md = qpow(q, -(d as i64));
    let s = phi_32_terminating::<F, LaurentPoly<F>>(i as u32, &a2, &a3, &q_md, q, q)?;
    let scale = div(&q_pochhammer_in(&q_md, q, i as u32), &tau.pow_u(i as u32), "h_i normalization")?;
    Ok(crate::algebra::Algebra::scale(&s, &scale))
}

/// `(theta_i; theta^*_i; varphi_i; phi_i)`, with the split sequences stored from index 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamArray<F> {
    pub theta: Vec<F>,
    pub theta_s: Vec<F>,
    pub varphi: Vec<F>,
    pub phi: Vec<F>,
}

/// `a_i`, `b_i`, `c_i` for `0 <= i <= d`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionNumbers<F> {
    pub a: Vec<F>,
    pub b: Vec<F>,
    pub c: Vec<F>,
}

impl<F: Field> IntersectionNumbers<F> {
    pub fn from_bc(theta0: &F, b: Vec<F>, c: Vec<F>) -> Self {
        let a = b.iter().zip(&c).map(|(bi, ci)| theta0.sub(bi).sub(ci)).collect();
        IntersectionNumbers { a, b, c }
    }

    pub fn d(&self) -> usize {
        self.b.len() - 1
    }

    /// `v_0, ..., v_d` from the three-term recurrence.
    pub fn v_polys(&self) -> Result<Vec<LaurentPoly<F>>, LeonardError> {
        let d = self.d();
        let xi = LaurentPoly::<F>::eta();
        let mut v = vec![LaurentPoly::one()];
        for i in 0..d {
            let mut r = xi.mul(&v[i]).sub(&LaurentPoly::constant(self.a[i].clone()).mul(&v[i]));
            if i >= 1 {
                r = r.sub(&LaurentPoly::constant(self.b[i - 1].clone()).mul(&v[i - 1]));
            }
            let ci = self.c[i + 1].inv().ok_or_else(|| LeonardError::Degenerate(format!("c_{} = 0", i + 1)))?;
            v.push(crate::algebra::Algebra::scale(&r, &ci));
        }
        Ok(v)
    }

    /// `b_0 ... b_{i-1} / (c_1 ... c_i)`.
    pub fn v_at_theta0(&self) -> Vec<F> {
        let mut out = vec![F::one()];
        for i in 1..=self.d() {
            let next = out[i - 1].mul(&self.b[i - 1]).div(&self.c[i]).expect("c_i != 0");
            out.push(next);
        }
        out
    }
}

impl<F: Field> ParamArray<F> {
    pub fn d(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn validate(&self) -> Result<(), LeonardError> {
        let d = self.d();
        if self.theta_s.len() != d + 1 || self.varphi.len() != d || self.phi.len() != d {
            return Err(LeonardError::Degenerate("sequence lengths".into()));
        }
        for i in 0..=d {
            for j in 0..i {
                if self.theta[i] == self.theta[j] {
                    return Err(LeonardError::Degenerate(format!("theta_{j} = theta_{i}")));
                }
                if self.theta_s[i] == self.theta_s[j] {
                    return Err(LeonardError::Degenerate(format!("theta^*_{j} = theta^*_{i}")));
                }
            }
        }
        for i in 0..d {
            if self.varphi[i].is_zero() || self.phi[i].is_zero() {
                return Err(LeonardError::Degenerate(format!("split sequence vanishes at {}", i + 1)));
            }
        }
        Ok(())
    }

    fn ds(&self, i: usize, k: usize) -> F {
        self.theta_s[i].sub(&self.theta_s[k])
    }

    /// `prod_{k<i} (theta^*_i - theta^*_k) / prod_{k<=i} (theta^*_{i+1} - theta^*_k)`.
    fn b_ratio(&self, i: usize) -> F {
        let mut num = F::one();
        for k in 0..i {
            num = num.mul(&self.ds(i, k));
        }
        let mut den = F::one();
        for k in 0..=i {
            den = den.mul(&self.ds(i + 1, k));
        }
        num.div(&den).expect("distinct dual eigenvalues")
    }

    /// `prod_{k>i} (theta^*_i - theta^*_k) / prod_{k>=i} (theta^*_{i-1} - theta^*_k)`.
    fn c_ratio(&self, i: usize) -> F {
        let d = self.d();
        let mut num = F::one();
        for k in i + 1..=d {
            num = num.mul(&self.ds(i, k));
        }
        let mut den = F::one();
        for k in i..=d {
            den = den.mul(&self.ds(i - 1, k));
        }
        num.div(&den).expect("distinct dual eigenvalues")
    }

    /// Intersection numbers from the split sequences and dual eigenvalues.
    pub fn intersection_numbers(&self) -> IntersectionNumbers<F> {
        let d = self.d();
        let b = (0..=d).map(|i| if i < d { self.varphi[i].mul(&self.b_ratio(i)) } else { F::zero() }).collect();
        let c = (0..=d).map(|i| if i >= 1 { self.phi[i - 1].mul(&self.c_ratio(i)) } else { F::zero() }).collect();
        IntersectionNumbers::from_bc(&self.theta[0], b, c)
    }

    /// Solves the intersection-number formulas for the split sequences.
    pub fn from_intersection_numbers(theta: Vec<F>, theta_s: Vec<F>, ints: &IntersectionNumbers<F>) -> Result<Self, LeonardError> {
        let d = theta.len() - 1;
        let mut pa = ParamArray { theta, theta_s, varphi: vec![F::zero(); d], phi: vec![F::zero(); d] };
        for i in 1..=d {
            pa.varphi[i - 1] = div(&ints.b[i - 1], &pa.b_ratio(i - 1), "varphi")?;
            pa.phi[i - 1] = div(&ints.c[i], &pa.c_ratio(i), "phi")?;
        }
        pa.validate()?;
        Ok(pa)
    }

    /// `m_i` from the parameter array.
    pub fn m_general(&self, i: usize) -> Result<F, LeonardError> {
        let d = self.d();
        let mut num = F::one();
        for k in 0..i {
            num = num.mul(&self.varphi[k]);
        }
        for k in 0..d - i {
            num = num.mul(&self.phi[k]);
        }
        let mut den = F::one();
        for k in 1..=d {
            den = den.mul(&self.ds(0, k));
        }
        for k in (0..=d).filter(|&k| k != i) {
            den = den.mul(&self.theta[i].sub(&self.theta[k]));
        }
        div(&num, &den, "m_i")
    }

    /// `f_i(xi) = sum_n prod_{k<n} (theta^*_i - theta^*_k)(xi - theta_k) / (varphi_1 ... varphi_n)`.
    pub fn f_poly(&self, i: usize) -> Result<LaurentPoly<F>, LeonardError> {
        let mut total = LaurentPoly::one();
        let mut term = LaurentPoly::one();
        for n in 1..=i {
            let k = n - 1;
            let factor = LaurentPoly::new(0, vec![self.theta[k].neg(), F::one()]);
            let s = div(&self.ds(i, k), &self.varphi[k], "f_i")?;
            term = crate::algebra::Algebra::scale(&term.mul(&factor), &s);
            total = total.add(&term);
        }
        Ok(total)
    }
}

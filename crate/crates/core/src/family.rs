//! The six families of dual polar graphs and the scalars attached to an
//! instance `(e, D)`, generic over the coefficient field.

use crate::algebra::Field;
use crate::scalars::{AlgNum, GaussInt, GaussRat, Modulus, Scalar, ScalarError};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    C,
    B,
    D,
    TwoD,
    TwoAEven,
    TwoAOdd,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 6] =
        [FamilyTag::C, FamilyTag::B, FamilyTag::D, FamilyTag::TwoD, FamilyTag::TwoAEven, FamilyTag::TwoAOdd];

    /// Twice the exponent `e`.
    pub fn e2(self) -> u8 {
        match self {
            FamilyTag::C | FamilyTag::B => 2,
            FamilyTag::D => 0,
            FamilyTag::TwoD => 4,
            FamilyTag::TwoAEven => 3,
            FamilyTag::TwoAOdd => 1,
        }
    }

    pub fn ambient_dim(self, d: usize) -> usize {
        match self {
            FamilyTag::C | FamilyTag::D | FamilyTag::TwoAOdd => 2 * d,
            FamilyTag::B | FamilyTag::TwoAEven => 2 * d + 1,
            FamilyTag::TwoD => 2 * d + 2,
        }
    }

    pub fn is_hermitian(self) -> bool {
        matches!(self, FamilyTag::TwoAEven | FamilyTag::TwoAOdd)
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::C => "C",
            FamilyTag::B => "B",
            FamilyTag::D => "D",
            FamilyTag::TwoD => "2D",
            FamilyTag::TwoAEven => "2A-even",
            FamilyTag::TwoAOdd => "2A-odd",
        }
    }

    /// The family used to stand for a given `e` in formal runs.
    pub fn representative(e2: u8) -> Option<FamilyTag> {
        match e2 {
            0 => Some(FamilyTag::D),
            1 => Some(FamilyTag::TwoAOdd),
            2 => Some(FamilyTag::C),
            3 => Some(FamilyTag::TwoAEven),
            4 => Some(FamilyTag::TwoD),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("unknown family '{0}' (expected one of C, B, D, 2D, 2A-even, 2A-odd)")]
    UnknownFamily(String),
    #[error("diameter must be at least 3, got {0}")]
    DiameterTooSmall(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl FromStr for FamilyTag {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// A family together with its diameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub tag: FamilyTag,
    pub d: usize,
}

impl FamilyParams {
    pub fn new(tag: FamilyTag, d: usize) -> Result<Self, FamilyError> {
        if d < 3 {
            return Err(FamilyError::DiameterTooSmall(d));
        }
        Ok(FamilyParams { tag, d })
    }

    pub fn e2(&self) -> u8 {
        self.tag.e2()
    }

    pub fn ambient_dim(&self) -> usize {
        self.tag.ambient_dim(self.d)
    }

    /// `q^e` at a concrete prime power, when it is an integer.
    pub fn q_to_e(&self, q0: u64) -> Option<u128> {
        let e2 = self.e2() as u32;
        if e2 % 2 == 0 {
            return (q0 as u128).checked_pow(e2 / 2);
        }
        let r = (q0 as f64).sqrt().round() as u128;
        (r * r == q0 as u128).then_some(())?;
        r.checked_pow(e2)
    }

    /// `e` as a display string (`0`, `1/2`, `1`, `3/2`, `2`).
    pub fn e_string(&self) -> String {
        let e2 = self.e2();
        if e2 % 2 == 0 {
            (e2 / 2).to_string()
        } else {
            format!("{e2}/2")
        }
    }
}

/// The scalars of an instance `(e, D)` over a field containing `v = q^{1/4}` and `i`.
///
/// Index conventions follow the basis `C_0^-, C_0^+, ..., C_{D-1}^-, C_{D-1}^+`.
#[derive(Clone, Debug)]
pub struct Consts<F> {
    pub params: FamilyParams,
    pub v: F,
    pub v_inv: F,
    pub i: F,
    pub q: F,
    pub tau: F,
    pub kappa: F,
    pub kappa_p: F,
    pub alpha: F,
    pub beta: F,
    pub gamma: F,
    pub alpha_s: F,
    pub beta_s: F,
    pub beta_s_tilde: F,
}

impl Consts<Scalar> {
    /// Formal constants over Q(i)(v).
    pub fn formal(params: FamilyParams) -> Self {
        Consts::new(params, Scalar::v_pow(1), Scalar::i())
    }
}

impl Consts<AlgNum> {
    /// Constants at a concrete prime power `q0`, with `v` the real fourth root of `q0`.
    pub fn concrete(params: FamilyParams, q0: u64) -> Result<Self, ScalarError> {
        let m = Modulus::for_prime_power(q0)?;
        Ok(Consts::new(params, AlgNum::generator(&m), AlgNum::constant(GaussRat::from_gauss(GaussInt::i()))))
    }

    pub fn modulus(&self) -> &Arc<Modulus> {
        self.v.modulus().expect("concrete constants carry a modulus")
    }
}

impl<F: Field> Consts<F> {
    pub fn new(params: FamilyParams, v: F, i: F) -> Self {
        let v_inv = v.inv().expect("v is nonzero");
        let e2 = params.e2() as i64;
        let d = params.d as i64;
        let vp = |k: i64| if k >= 0 { v.pow_u(k as u32) } else { v_inv.pow_u((-k) as u32) };
        let q = vp(4);
        let one = F::one();
        let qe = vp(2 * e2);
        let q_m1 = q.sub(&one);
        let one_m_q = one.sub(&q);
        let tau = i.mul(&vp(-2 * d - e2));
        let kappa = vp(-e2);
        let kappa_p = i.mul(&vp(-2 * d));
        let alpha = qe.sub(&one).div(&one_m_q).expect("q != 1");
        let beta = vp(4 * d + 2 * e2).div(&q_m1).expect("q != 1");
        let gamma = one.div(&one_m_q).expect("q != 1");
        let t2 = one.add(&vp(4 * d + 2 * e2 - 8));
        let t1 = one.add(&vp(4 * d + 2 * e2 - 4));
        let alpha_s = q.mul(&t2).div(&one_m_q).expect("q != 1");
        let qe_m1 = one.add(&vp(2 * e2 - 4));
        let beta_s = q.mul(&t2).mul(&t1).div(&q_m1.mul(&qe_m1)).expect("nonzero");
        let beta_s_tilde = qe_m1.mul(&beta_s).div(&one.add(&qe)).expect("nonzero");
        Consts { params, v, v_inv, i, q, tau, kappa, kappa_p, alpha, beta, gamma, alpha_s, beta_s, beta_s_tilde }
    }

    pub fn d(&self) -> usize {
        self.params.d
    }

    pub fn e2(&self) -> i64 {
        self.params.e2() as i64
    }

    /// `v^k`.
    pub fn vp(&self, k: i64) -> F {
        if k >= 0 {
            self.v.pow_u(k as u32)
        } else {
            self.v_inv.pow_u((-k) as u32)
        }
    }

    /// `q^n`.
    pub fn qp(&self, n: i64) -> F {
        self.vp(4 * n)
    }

    /// `q^{n + e}`.
    pub fn qpe(&self, n: i64) -> F {
        self.vp(4 * n + 2 * self.e2())
    }

    /// `q^e`.
    pub fn qe(&self) -> F {
        self.vp(2 * self.e2())
    }

    /// `[n] = (q^n - 1)/(q - 1)` for integer `n`.
    pub fn gauss(&self, n: i64) -> F {
        self.qp(n).sub(&F::one()).div(&self.q.sub(&F::one())).expect("q != 1")
    }

    /// Shorthand for `1 - x`.
    pub fn one_minus(&self, x: &F) -> F {
        F::one().sub(x)
    }

    pub fn a(&self, i: usize) -> F {
        self.qe().sub(&F::one()).mul(&self.gauss(i as i64))
    }

    pub fn b(&self, i: usize) -> F {
        self.qpe(i as i64).mul(&self.gauss(self.d() as i64 - i as i64))
    }

    pub fn c(&self, i: usize) -> F {
        self.gauss(i as i64)
    }

    pub fn theta(&self, i: usize) -> F {
        self.qe().mul(&self.gauss(self.d() as i64 - i as i64)).sub(&self.gauss(i as i64))
    }

    pub fn theta_s(&self, i: usize) -> F {
        self.alpha_s.add(&self.beta_s.mul(&self.qp(-(i as i64))))
    }

    pub fn theta_s_tilde(&self, i: usize) -> F {
        let qe = self.qe();
        let num = self.theta_s(i).add(&qe.mul(&self.theta_s(i + 1)));
        num.div(&F::one().add(&qe)).expect("1 + q^e != 0")
    }

    /// `prod_{n=1}^{i} (q^D - q^n)/(q^n - 1)`.
    fn count_core(&self, i: usize) -> F {
        let qd = self.qp(self.d() as i64);
        let mut acc = F::one();
        for n in 1..=i as i64 {
            let qn = self.qp(n);
            acc = acc.mul(&qd.sub(&qn)).div(&qn.sub(&F::one())).expect("q^n != 1");
        }
        acc
    }

    /// `|C_i^-|`.
    pub fn count_minus(&self, i: usize) -> F {
        self.vp(2 * self.e2() * i as i64).mul(&self.count_core(i))
    }

    /// `|C_i^+|`.
    pub fn count_plus(&self, i: usize) -> F {
        self.vp(2 * self.e2() * (i as i64 + 1)).mul(&self.count_core(i))
    }

    /// Cell sizes in basis order.
    pub fn counts(&self) -> Vec<F> {
        (0..self.d()).flat_map(|i| [self.count_minus(i), self.count_plus(i)]).collect()
    }

    /// `|X| = prod_{i=0}^{D-1} (q^{i+e} + 1)`.
    pub fn num_vertices(&self) -> F {
        let mut acc = F::one();
        for i in 0..self.d() as i64 {
            acc = acc.mul(&self.qpe(i).add(&F::one()));
        }
        acc
    }

    /// `(x; q)_n`.
    pub fn poch(&self, x: &F, n: usize) -> F {
        crate::scalars::q_pochhammer_in(x, &self.q, n as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_roundtrip() {
        for t in FamilyTag::ALL {
            assert_eq!(t.name().parse::<FamilyTag>().unwrap(), t);
        }
        assert!("E".parse::<FamilyTag>().is_err());
    }
}

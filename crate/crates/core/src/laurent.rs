//! Laurent polynomials in one variable `eta` over a field.

use crate::algebra::{Algebra, Field, Ring};
use crate::linalg::Matrix;
use std::fmt;

/// `sum_k c[k] eta^{low + k}`; both ends trimmed, zero is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<F> {
    low: i64,
    c: Vec<F>,
}

impl<F: Field> LaurentPoly<F> {
    pub fn new(low: i64, c: Vec<F>) -> Self {
        let mut p = LaurentPoly { low, c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().position(|x| !x.is_zero()).unwrap_or(0);
        if lead > 0 {
            self.c.drain(..lead);
            self.low += lead as i64;
        }
        if self.c.is_empty() {
            self.low = 0;
        }
    }

    /// `c * eta^k`.
    pub fn monomial(k: i64, c: F) -> Self {
        LaurentPoly::new(k, vec![c])
    }

    pub fn eta() -> Self {
        Self::monomial(1, F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(0, c)
    }

    /// Lowest exponent with nonzero coefficient (0 for the zero polynomial).
    pub fn low_degree(&self) -> i64 {
        self.low
    }

    /// Highest exponent with nonzero coefficient (`low - 1` for zero).
    pub fn high_degree(&self) -> i64 {
        self.low + self.c.len() as i64 - 1
    }

    pub fn coeff(&self, k: i64) -> F {
        let j = k - self.low;
        if j < 0 || j >= self.c.len() as i64 {
            F::zero()
        } else {
            self.c[j as usize].clone()
        }
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        self.c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(j, x)| (self.low + j as i64, x))
    }

    /// `eta -> eta^{-1}`.
    pub fn reflect(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        LaurentPoly::new(-self.high_degree(), c)
    }

    /// Multiply by `eta^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, c: self.c.clone() }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> LaurentPoly<G> {
        LaurentPoly::new(self.low, self.c.iter().map(f).collect())
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<LaurentPoly<G>, E> {
        Ok(LaurentPoly::new(self.low, self.c.iter().map(f).collect::<Result<_, _>>()?))
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Value at a nonzero point.
    pub fn eval(&self, x: &F) -> F {
        if self.c.is_empty() {
            return F::zero();
        }
        let mut acc = F::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        let xl = x.pow_i(self.low).expect("evaluation point is nonzero");
        acc.mul(&xl)
    }

    /// Substitutes `x` for `eta` in an ordinary polynomial (no negative exponents).
    pub fn compose<R: Algebra<F>>(&self, x: &R) -> R {
        assert!(self.low >= 0 || self.c.is_empty(), "compose needs an ordinary polynomial");
        let mut acc = R::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(&R::from_scalar(c.clone()));
        }
        acc.mul(&x.pow_u(self.low.max(0) as u32))
    }

    /// `p(X)` for a square matrix `X`; `x_inv` is used only for negative exponents.
    pub fn eval_matrix(&self, x: &Matrix<F>, x_inv: &Matrix<F>) -> Matrix<F> {
        let n = x.rows();
        let mut acc = Matrix::zeros(n, n);
        self.walk_powers(Matrix::identity(n), |m, up| m.mul(if up { x } else { x_inv }), |m, c| acc = acc.add(&m.scale(c)));
        acc
    }

    /// `p(X) v`, computed from the vectors `X^k v` without forming matrix powers.
    pub fn apply(&self, x: &Matrix<F>, x_inv: &Matrix<F>, v: &[F]) -> Vec<F> {
        let mut acc = vec![F::zero(); v.len()];
        self.walk_powers(
            v.to_vec(),
            |w, up| if up { x.apply(w) } else { x_inv.apply(w) },
            |w, c| {
                for (a, t) in acc.iter_mut().zip(w) {
                    *a = a.add(&c.mul(t));
                }
            },
        );
        acc
    }

    /// Feeds `(X^k s, c_k)` to `visit` for every term, stepping outward from
    /// `k = 0` in both directions so each power is computed once.
    fn walk_powers<T: Clone>(&self, start: T, step: impl Fn(&T, bool) -> T, mut visit: impl FnMut(&T, &F)) {
        let terms: Vec<(i64, &F)> = self.terms().collect();
        let split = terms.partition_point(|(k, _)| *k < 0);
        for (up, run) in [(true, terms[split..].to_vec()), (false, terms[..split].iter().rev().copied().collect())] {
            let mut cur = start.clone();
            let mut at = 0i64;
            for (k, c) in run {
                while at != k {
                    cur = step(&cur, up);
                    at += if up { 1 } else { -1 };
                }
                visit(&cur, c);
            }
        }
    }

    /// Whether all exponents lie in `[lo, hi]`.
    pub fn within(&self, lo: i64, hi: i64) -> bool {
        self.c.is_empty() || (self.low >= lo && self.high_degree() <= hi)
    }
}

impl<F: Field> Ring for LaurentPoly<F> {
    fn zero() -> Self {
        LaurentPoly { low: 0, c: vec![] }
    }
    fn one() -> Self {
        LaurentPoly::constant(F::one())
    }
    fn from_i64(n: i64) -> Self {
        LaurentPoly::constant(F::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        if self.c.is_empty() {
            return o.clone();
        }
        if o.c.is_empty() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.high_degree().max(o.high_degree());
        let c = (low..=high).map(|k| self.coeff(k).add(&o.coeff(k))).collect();
        LaurentPoly::new(low, c)
    }
    fn sub(&self, o: &Self) -> Self {
        Ring::add(self, &Ring::neg(o))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        LaurentPoly::new(self.low + o.low, c)
    }
    fn neg(&self) -> Self {
        LaurentPoly { low: self.low, c: self.c.iter().map(|x| x.neg()).collect() }
    }
}

impl<F: Field> Algebra<F> for LaurentPoly<F> {
    fn scale(&self, s: &F) -> Self {
        LaurentPoly::new(self.low, self.c.iter().map(|x| x.mul(s)).collect())
    }
    fn from_scalar(c: F) -> Self {
        LaurentPoly::constant(c)
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms().map(|(k, c)| format!("[{c}]*eta^{k}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

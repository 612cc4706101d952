//! Gaussian integers and Gaussian rationals with big-integer parts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// An element `re + im*i` of Z[i].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn one() -> Self {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    pub fn i() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::one() }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        GaussInt { re: n.into(), im: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> Self {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }

    pub fn neg(&self) -> Self {
        GaussInt { re: -&self.re, im: -&self.im }
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt { re: &self.re * &o.re, im: BigInt::zero() };
        }
        if o.im.is_zero() {
            return GaussInt { re: &self.re * &o.re, im: &self.im * &o.re };
        }
        if self.im.is_zero() {
            return GaussInt { re: &self.re * &o.re, im: &self.re * &o.im };
        }
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        GaussInt { re: &self.re * n, im: &self.im * n }
    }

    /// Multiply by `i^k`.
    pub fn mul_i_pow(&self, k: u32) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => GaussInt { re: -&self.im, im: self.re.clone() },
            2 => self.neg(),
            _ => GaussInt { re: self.im.clone(), im: -&self.re },
        }
    }

    /// Exact quotient; panics in debug builds if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Self {
        if d.im.is_zero() {
            debug_assert!((&self.re % &d.re).is_zero() && (&self.im % &d.re).is_zero());
            return GaussInt { re: &self.re / &d.re, im: &self.im / &d.re };
        }
        let n = d.norm();
        let p = self.mul(&d.conj());
        debug_assert!((&p.re % &n).is_zero() && (&p.im % &n).is_zero());
        GaussInt { re: p.re / &n, im: p.im / &n }
    }

    /// Quotient if `d` divides `self` exactly.
    pub fn checked_div(&self, d: &Self) -> Option<Self> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let p = self.mul(&d.conj());
        if (&p.re % &n).is_zero() && (&p.im % &n).is_zero() {
            Some(GaussInt { re: p.re / &n, im: p.im / &n })
        } else {
            None
        }
    }

    /// Euclidean remainder with the quotient rounded to the nearest lattice point.
    fn rem_round(&self, d: &Self) -> Self {
        let n = d.norm();
        let p = self.mul(&d.conj());
        let two_n: BigInt = &n << 1;
        let round = |x: &BigInt| -> BigInt { (x * BigInt::from(2) + &n).div_floor(&two_n) };
        let q = GaussInt { re: round(&p.re), im: round(&p.im) };
        self.sub(&q.mul(d))
    }

    /// Greatest common divisor, normalized to the first quadrant.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_real() && o.is_real() {
            let g = self.re.gcd(&o.re);
            return GaussInt::from_int(g);
        }
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem_round(&b);
            a = b;
            b = r;
        }
        a.normalized().0
    }

    /// Returns `(u*self, k)` where `u = i^k` puts the value in the half-open
    /// first quadrant (`re > 0, im >= 0`).
    pub fn normalized(&self) -> (Self, u32) {
        let k = self.unit_exponent();
        (self.mul_i_pow(k), k)
    }

    /// Exponent `k` with `i^k * self` in the first quadrant.
    pub fn unit_exponent(&self) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let (re, im) = (self.re.sign(), self.im.sign());
        use num_bigint::Sign::*;
        match (re, im) {
            (Plus, NoSign) | (Plus, Plus) => 0,
            // re <= 0, im > 0: multiply by -i
            (NoSign, Plus) | (Minus, Plus) => 3,
            (Minus, NoSign) | (Minus, Minus) => 2,
            // re >= 0, im < 0: multiply by i
            _ => 1,
        }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else {
            write!(f, "{}{}{}*i", self.re, if self.im.is_negative() { "" } else { "+" }, self.im)
        }
    }
}

/// A Gaussian rational `num/den` with `den > 0` and no common integer factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    num: GaussInt,
    den: BigInt,
}

impl GaussRat {
    pub fn new(num: GaussInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = GaussRat { num, den };
        r.reduce();
        r
    }

    pub fn from_gauss(num: GaussInt) -> Self {
        GaussRat { num, den: BigInt::one() }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        GaussRat { num: GaussInt::from_int(n), den: BigInt::one() }
    }

    pub fn from_ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        GaussRat::new(GaussInt::from_int(n), d.into())
    }

    pub fn zero() -> Self {
        GaussRat::from_int(0)
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn num(&self) -> &GaussInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn reduce(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            self.num = self.num.neg();
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = self.num.re.gcd(&self.num.im).gcd(&self.den);
        if !g.is_one() {
            self.num.re /= &g;
            self.num.im /= &g;
            self.den /= &g;
        }
    }

    pub fn neg(&self) -> Self {
        GaussRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn conj(&self) -> Self {
        GaussRat { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return GaussRat::new(self.num.add(&o.num), self.den.clone());
        }
        let num = self.num.scale(&o.den).add(&o.num.scale(&self.den));
        GaussRat::new(num, &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussRat::new(self.num.mul(&o.num), &self.den * &o.den)
    }

    pub fn mul_gauss(&self, g: &GaussInt) -> Self {
        GaussRat::new(self.num.mul(g), self.den.clone())
    }

    pub fn div_gauss(&self, g: &GaussInt) -> Self {
        // num / (den * g) = num * conj(g) / (den * N(g))
        GaussRat::new(self.num.mul(&g.conj()), &self.den * g.norm())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(GaussRat::new(self.num.conj().scale(&self.den), self.num.norm()))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|x| self.mul(&x))
    }

    pub fn mul_i_pow(&self, k: u32) -> Self {
        GaussRat { num: self.num.mul_i_pow(k), den: self.den.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real()
    }
}

impl fmt::Display for GaussRat {
    /// Format `a/b+c/d*i`; integer parts drop the `/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |x: &BigInt| -> String {
            let g = x.gcd(&self.den);
            let (n, d) = (x / &g, &self.den / &g);
            if d.is_one() {
                n.to_string()
            } else {
                format!("{n}/{d}")
            }
        };
        let (re, im) = (&self.num.re, &self.num.im);
        if im.is_zero() {
            write!(f, "{}", part(re))
        } else if re.is_zero() {
            write!(f, "{}*i", part(im))
        } else {
            let sign = if im.is_negative() { "" } else { "+" };
            write!(f, "{}{}{}*i", part(re), sign, part(im))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_gaussians() {
        // (1+i)(2+i) and (1+i)(2-i)
        let a = GaussInt::new(1, 1).mul(&GaussInt::new(2, 1));
        let b = GaussInt::new(1, 1).mul(&GaussInt::new(2, -1));
        assert_eq!(a.gcd(&b), GaussInt::new(1, 1));
        assert_eq!(GaussInt::from_int(12).gcd(&GaussInt::from_int(18)), GaussInt::from_int(6));
    }

    #[test]
    fn normalization_lands_in_first_quadrant() {
        for (re, im) in [(3, 0), (0, 3), (-3, 0), (0, -3), (2, 5), (-2, 5), (-2, -5), (2, -5)] {
            let (n, _) = GaussInt::new(re, im).normalized();
            assert!(n.re.is_positive() && !n.im.is_negative(), "{re},{im} -> {n}");
        }
    }

    #[test]
    fn rational_display() {
        let x = GaussRat::new(GaussInt::new(1, -3), BigInt::from(2));
        assert_eq!(x.to_string(), "1/2-3/2*i");
        assert_eq!(GaussRat::from_ratio(-4, 6).to_string(), "-2/3");
        assert_eq!(GaussRat::from_gauss(GaussInt::i()).to_string(), "1*i");
    }

    #[test]
    fn inverse_roundtrip() {
        let x = GaussRat::new(GaussInt::new(3, 4), BigInt::from(7));
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }
}

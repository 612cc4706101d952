//! Elements of the field Q(i)(v), with `q = v^4`.

use super::gauss::{GaussInt, GaussRat};
use super::zipoly::ZiPoly;
use num_bigint::BigInt;

use std::fmt;

/// A canonical element `v^k * c * f/g` of Q(i)(v).
///
/// Invariants:
/// - `f`, `g` are primitive in Z[i][v] with first-quadrant leading coefficients,
/// - `f(0) != 0`, `g(0) != 0` and `gcd(f, g) = 1`,
/// - zero is stored as `c = 0, f = g = 1, k = 0`.
///
/// The representation is unique, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    k: i64,
    c: GaussRat,
    f: ZiPoly,
    g: ZiPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { k: 0, c: GaussRat::zero(), f: ZiPoly::one(), g: ZiPoly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_rat(GaussRat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(GaussRat::from_int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::from_rat(GaussRat::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rat(GaussRat::from_ratio(n, d))
    }

    pub fn from_rat(c: GaussRat) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { k: 0, c, f: ZiPoly::one(), g: ZiPoly::one() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::from_rat(GaussRat::from_gauss(GaussInt::i()))
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        Scalar { k, c: GaussRat::one(), f: ZiPoly::one(), g: ZiPoly::one() }
    }

    /// `q^n = v^{4n}`.
    pub fn q_pow(n: i64) -> Self {
        Scalar::v_pow(4 * n)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    /// `num/den` for polynomials in `v`.
    pub fn from_polys(num: &ZiPoly, den: &ZiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Scalar::normalize(0, GaussRat::one(), num.clone(), den.clone(), false)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.k == 0 && self.c.is_one() && self.f.is_one() && self.g.is_one()
    }

    /// True when the value lies in Q(i).
    pub fn is_constant(&self) -> bool {
        self.k == 0 && self.f.is_one() && self.g.is_one()
    }

    pub fn as_constant(&self) -> Option<&GaussRat> {
        self.is_constant().then_some(&self.c)
    }

    pub fn v_exponent(&self) -> i64 {
        self.k
    }

    pub fn coefficient(&self) -> &GaussRat {
        &self.c
    }

    pub fn numerator_poly(&self) -> &ZiPoly {
        &self.f
    }

    pub fn denominator_poly(&self) -> &ZiPoly {
        &self.g
    }

    fn normalize(mut k: i64, mut c: GaussRat, f: ZiPoly, g: ZiPoly, coprime: bool) -> Self {
        if f.is_zero() || c.is_zero() {
            return Scalar::zero();
        }
        let (vf, vg) = (f.valuation(), g.valuation());
        let mut f = if vf > 0 { f.shift_down(vf) } else { f };
        let mut g = if vg > 0 { g.shift_down(vg) } else { g };
        k += vf as i64 - vg as i64;
        if !coprime {
            let h = f.gcd(&g);
            if !h.is_one() {
                f = f.div_exact(&h);
                g = g.div_exact(&h);
            }
        }
        let (cf, pf) = f.content_primitive();
        let (cg, pg) = g.content_primitive();
        if !cf.is_one() {
            c = c.mul_gauss(&cf);
        }
        if !cg.is_one() {
            c = c.div_gauss(&cg);
        }
        Scalar { k, c, f: pf, g: pg }
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Scalar { k: self.k, c: self.c.neg(), f: self.f.clone(), g: self.g.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        let c = self.c.mul(&o.c);
        let k = self.k + o.k;
        if self.f.is_one() && self.g.is_one() {
            return Scalar { k, c, f: o.f.clone(), g: o.g.clone() };
        }
        if o.f.is_one() && o.g.is_one() {
            return Scalar { k, c, f: self.f.clone(), g: self.g.clone() };
        }
        // cross-cancel: gcd(f1, g2) and gcd(f2, g1)
        let h1 = self.f.gcd(&o.g);
        let h2 = o.f.gcd(&self.g);
        let (f1, g2) = if h1.is_one() { (self.f.clone(), o.g.clone()) } else { (self.f.div_exact(&h1), o.g.div_exact(&h1)) };
        let (f2, g1) = if h2.is_one() { (o.f.clone(), self.g.clone()) } else { (o.f.div_exact(&h2), self.g.div_exact(&h2)) };
        let f = f1.mul(&f2);
        let g = g1.mul(&g2);
        Scalar::normalize(k, c, f, g, true)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar { k: -self.k, c: self.c.inv()?, f: self.g.clone(), g: self.f.clone() })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let k = self.k.min(o.k);
        let (s1, s2) = ((self.k - k) as usize, (o.k - k) as usize);
        // common denominator: gcd of the two polynomial denominators
        let h = if self.g == o.g { self.g.clone() } else { self.g.gcd(&o.g) };
        let (g1p, g2p) = if h.is_one() {
            (self.g.clone(), o.g.clone())
        } else {
            (self.g.div_exact(&h), o.g.div_exact(&h))
        };
        let (n1, d1) = (self.c.num(), self.c.den());
        let (n2, d2) = (o.c.num(), o.c.den());
        let d = num_integer::Integer::lcm(d1, d2);
        let m1 = n1.scale(&(&d / d1));
        let m2 = n2.scale(&(&d / d2));
        let t1 = self.f.shift_up(s1).mul(&g2p).scale(&m1);
        let t2 = o.f.shift_up(s2).mul(&g1p).scale(&m2);
        let num = t1.add(&t2);
        if num.is_zero() {
            return Scalar::zero();
        }
        let mut den = g1p.mul(&g2p);
        let mut num = num;
        let mut hh = h;
        if !hh.is_one() {
            let r = num.gcd(&hh);
            if !r.is_one() {
                num = num.div_exact(&r);
                hh = hh.div_exact(&r);
            }
            den = den.mul(&hh);
        }
        Scalar::normalize(k, GaussRat::new(GaussInt::one(), d), num, den, true)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// `self^n` for any integer `n`; panics on `0^n` with `n < 0`.
    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self.inv().expect("inverse of zero").pow(-n);
        }
        let mut result = Scalar::one();
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Field automorphism `i -> -i` fixing `v`.
    pub fn conj(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Scalar::normalize(self.k, self.c.conj(), self.f.conj(), self.g.conj(), true)
    }

    /// Numerator and denominator polynomials of `self` with the `v`-power and
    /// constant absorbed: `self = num/den` with `den` having a positive integer
    /// constant factor.
    pub fn to_polys(&self) -> (ZiPoly, ZiPoly) {
        let num_const = self.c.num().clone();
        let den_const = GaussInt::from_int(self.c.den().clone());
        let mut num = self.f.scale(&num_const);
        let mut den = self.g.scale(&den_const);
        if self.k >= 0 {
            num = num.shift_up(self.k as usize);
        } else {
            den = den.shift_up((-self.k) as usize);
        }
        (num, den)
    }

    /// Numerator/denominator rescaled so the denominator is monic,
    /// as Gaussian-rational coefficient lists (ascending), with an overall `v` shift.
    fn monic_form(&self) -> (i64, Vec<GaussRat>, Vec<GaussRat>) {
        let lc = self.g.lc().clone();
        let to_rat = |p: &ZiPoly, mult: &GaussRat| -> Vec<GaussRat> {
            p.coeffs().iter().map(|x| GaussRat::from_gauss(x.clone()).mul(mult).div_gauss(&lc)).collect()
        };
        let num = to_rat(&self.f, &self.c);
        let den = to_rat(&self.g, &GaussRat::one());
        (self.k, num, den)
    }

    /// Evaluate at `v = x` in a target field, with `x` nonzero.
    pub fn eval_with<T: Clone>(
        &self,
        v: &T,
        v_inv: &T,
        zero: T,
        one: T,
        lift_int: &impl Fn(&GaussInt) -> T,
        lift_rat: &impl Fn(&GaussRat) -> T,
        add: &impl Fn(&T, &T) -> T,
        mul: &impl Fn(&T, &T) -> T,
        inv: &impl Fn(&T) -> Option<T>,
    ) -> Option<T> {
        if self.is_zero() {
            return Some(zero);
        }
        let num = self.f.eval_with(v, zero.clone(), lift_int, add, mul);
        let den = self.g.eval_with(v, zero.clone(), lift_int, add, mul);
        let den_inv = inv(&den)?;
        let base = if self.k >= 0 { v } else { v_inv };
        let mut vk = one;
        for _ in 0..self.k.unsigned_abs() {
            vk = mul(&vk, base);
        }
        let c = lift_rat(&self.c);
        Some(mul(&mul(&mul(&num, &den_inv), &vk), &c))
    }
}

fn fmt_poly(coeffs: &[GaussRat], shift: i64) -> String {
    let mut terms = Vec::new();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = j as i64 + shift;
        terms.push(if e == 0 { format!("({c})") } else { format!("({c})*v^{e}") });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl fmt::Display for Scalar {
    /// Canonical text: `NUM` or `NUM / DEN` with monic denominator, ascending powers of `v`;
    /// a side with several terms is parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.is_constant() {
            return write!(f, "{}", self.c);
        }
        let (k, num, den) = self.monic_form();
        let n = fmt_poly(&num, k);
        if den.len() == 1 && den[0].is_one() {
            write!(f, "{n}")
        } else {
            let group = |p: &[GaussRat], s: String| if p.iter().filter(|c| !c.is_zero()).count() > 1 { format!("({s})") } else { s };
            write!(f, "{} / {}", group(&num, n.clone()), group(&den, fmt_poly(&den, 0)))
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<GaussRat> for Scalar {
    fn from(c: GaussRat) -> Self {
        Scalar::from_rat(c)
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::add(self, o)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::sub(self, o)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar::mul(self, o)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

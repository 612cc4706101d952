//! Dense univariate polynomials over Z[i] with exact gcd.
//!
//! The gcd first tries a modular coprimality test (a prime `p = 1 mod 4`
//! where `i` has a square root), falling back to a primitive PRS.

use super::gauss::GaussInt;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Coefficients in ascending degree order; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZiPoly {
    c: Vec<GaussInt>,
}

const P: u64 = 998_244_353;
/// A square root of -1 modulo `P` (3 is a primitive root).
fn sqrt_m1() -> u64 {
    pow_mod(3, (P - 1) / 4)
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn big_mod(x: &BigInt) -> u64 {
    let pb = BigInt::from(P);
    x.mod_floor(&pb).to_u64().expect("reduced residue fits")
}

impl ZiPoly {
    pub fn new(mut c: Vec<GaussInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZiPoly { c }
    }

    pub fn zero() -> Self {
        ZiPoly { c: vec![] }
    }

    pub fn one() -> Self {
        ZiPoly { c: vec![GaussInt::one()] }
    }

    pub fn constant(g: GaussInt) -> Self {
        ZiPoly::new(vec![g])
    }

    /// `sum c_k v^k` from integer coefficients.
    pub fn from_ints(c: &[i64]) -> Self {
        ZiPoly::new(c.iter().map(|&x| GaussInt::from_int(x)).collect())
    }

    pub fn coeffs(&self) -> &[GaussInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &GaussInt {
        self.c.last().expect("nonzero polynomial")
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    /// Divide by `v^k`; the low coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Self {
        ZiPoly { c: self.c[k..].to_vec() }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![GaussInt::zero(); k];
        c.extend_from_slice(&self.c);
        ZiPoly { c }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            });
        }
        ZiPoly::new(c)
    }

    pub fn neg(&self) -> Self {
        ZiPoly { c: self.c.iter().map(|x| x.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ZiPoly::zero();
        }
        if self.c.len() == 1 {
            return o.scale(&self.c[0]);
        }
        if o.c.len() == 1 {
            return self.scale(&o.c[0]);
        }
        let all_real = self.c.iter().chain(o.c.iter()).all(|x| x.is_real());
        if all_real {
            let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
            for (i, a) in self.c.iter().enumerate() {
                if a.re.is_zero() {
                    continue;
                }
                for (j, b) in o.c.iter().enumerate() {
                    if !b.re.is_zero() {
                        c[i + j] += &a.re * &b.re;
                    }
                }
            }
            return ZiPoly::new(c.into_iter().map(GaussInt::from_int).collect());
        }
        let mut c = vec![GaussInt::zero(); self.c.len() + o.c.len() - 1];
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
        ZiPoly::new(c)
    }

    pub fn scale(&self, g: &GaussInt) -> Self {
        if g.is_zero() {
            return ZiPoly::zero();
        }
        ZiPoly { c: self.c.iter().map(|x| x.mul(g)).collect() }
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        if n.is_zero() {
            return ZiPoly::zero();
        }
        ZiPoly { c: self.c.iter().map(|x| x.scale(n)).collect() }
    }

    pub fn mul_i_pow(&self, k: u32) -> Self {
        ZiPoly { c: self.c.iter().map(|x| x.mul_i_pow(k)).collect() }
    }

    pub fn conj(&self) -> Self {
        ZiPoly { c: self.c.iter().map(|x| x.conj()).collect() }
    }

    pub fn div_exact_scalar(&self, g: &GaussInt) -> Self {
        ZiPoly { c: self.c.iter().map(|x| x.div_exact(g)).collect() }
    }

    /// Gaussian content, first-quadrant normalized so that `self / content`
    /// has a first-quadrant leading coefficient.
    pub fn content(&self) -> GaussInt {
        if self.is_zero() {
            return GaussInt::zero();
        }
        let mut ig = BigInt::zero();
        for x in &self.c {
            ig = ig.gcd(&x.re).gcd(&x.im);
            if ig.is_one() {
                break;
            }
        }
        let mut g = if self.c.iter().all(|x| x.is_real()) {
            GaussInt::from_int(ig.clone())
        } else {
            let mut gg = GaussInt::zero();
            for x in &self.c {
                let y = x.div_exact(&GaussInt::from_int(ig.clone()));
                gg = gg.gcd(&y);
                if gg.is_unit() {
                    break;
                }
            }
            gg.scale(&ig)
        };
        // choose the unit making lc(self)/g first-quadrant
        let lc_over = self.lc().div_exact(&g);
        let k = lc_over.unit_exponent();
        // self/g has lc `lc_over`; scaling g by i^{-k} multiplies the quotient by i^k
        g = g.mul_i_pow((4 - k) % 4);
        g
    }

    /// `(content, primitive part)` with the primitive part first-quadrant normalized.
    pub fn content_primitive(&self) -> (GaussInt, ZiPoly) {
        if self.is_zero() {
            return (GaussInt::zero(), ZiPoly::zero());
        }
        let g = self.content();
        if g.is_one() {
            return (g, self.clone());
        }
        let p = self.div_exact_scalar(&g);
        (g, p)
    }

    pub fn primitive_part(&self) -> ZiPoly {
        self.content_primitive().1
    }

    /// Largest `s` such that only exponents divisible by `s` occur.
    pub fn stride(&self) -> usize {
        let mut s = 0usize;
        for (k, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                s = s.gcd(&k);
                if s == 1 {
                    return 1;
                }
            }
        }
        s.max(1)
    }

    pub fn compress(&self, s: usize) -> Self {
        if s == 1 {
            return self.clone();
        }
        ZiPoly { c: self.c.iter().step_by(s).cloned().collect() }
    }

    pub fn expand(&self, s: usize) -> Self {
        if s == 1 || self.c.len() <= 1 {
            return self.clone();
        }
        let mut c = vec![GaussInt::zero(); (self.c.len() - 1) * s + 1];
        for (k, x) in self.c.iter().enumerate() {
            c[k * s] = x.clone();
        }
        ZiPoly { c }
    }

    /// Pseudo-remainder of `self` by `d`.
    fn prem(&self, d: &Self) -> Self {
        let dd = d.deg();
        let lcd = d.lc().clone();
        let mut r = self.clone();
        let unit_lc = lcd.is_unit();
        while !r.is_zero() && r.deg() >= dd {
            let shift = r.deg() - dd;
            let lr = r.lc().clone();
            if unit_lc {
                let q = lr.div_exact(&lcd);
                let mut c = r.c;
                for (k, x) in d.c.iter().enumerate() {
                    if !x.is_zero() {
                        c[k + shift] = c[k + shift].sub(&x.mul(&q));
                    }
                }
                r = ZiPoly::new(c);
            } else {
                let mut c: Vec<GaussInt> = r.c.iter().map(|x| x.mul(&lcd)).collect();
                for (k, x) in d.c.iter().enumerate() {
                    if !x.is_zero() {
                        c[k + shift] = c[k + shift].sub(&x.mul(&lr));
                    }
                }
                r = ZiPoly::new(c);
            }
        }
        r
    }

    /// Exact quotient by `d`; `d` must divide `self` over Q(i) and `d` must be primitive.
    pub fn div_exact(&self, d: &Self) -> Self {
        if d.c.len() == 1 {
            return self.div_exact_scalar(&d.c[0]);
        }
        if self.is_zero() {
            return ZiPoly::zero();
        }
        let dd = d.deg();
        let lcd = d.lc();
        let mut r = self.c.clone();
        let qlen = self.c.len() - dd;
        let mut q = vec![GaussInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let t = top.div_exact(lcd);
            for (j, x) in d.c.iter().enumerate() {
                if !x.is_zero() {
                    r[k + j] = r[k + j].sub(&x.mul(&t));
                }
            }
            q[k] = t;
        }
        debug_assert!(r.iter().all(|x| x.is_zero()), "inexact polynomial division");
        ZiPoly::new(q)
    }

    fn to_mod_p(&self, s: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .c
            .iter()
            .map(|x| {
                let re = big_mod(&x.re);
                let im = big_mod(&x.im);
                (re + im * s % P) % P
            })
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Degree of gcd over F_p, or `None` if the reduction loses the leading term.
    fn modp_gcd_degree(&self, o: &Self) -> Option<usize> {
        let s = sqrt_m1();
        let mut a = self.to_mod_p(s);
        let mut b = o.to_mod_p(s);
        if a.len() != self.c.len() || b.len() != o.c.len() {
            return None;
        }
        while !b.is_empty() {
            // a mod b
            let inv = pow_mod(*b.last().unwrap(), P - 2);
            while a.len() >= b.len() {
                let shift = a.len() - b.len();
                let f = a.last().unwrap() * inv % P;
                for (k, &x) in b.iter().enumerate() {
                    a[k + shift] = (a[k + shift] + P - x * f % P) % P;
                }
                while a.last() == Some(&0) {
                    a.pop();
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        Some(a.len() - 1)
    }

    /// Primitive first-quadrant gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_part();
        }
        if o.is_zero() {
            return self.primitive_part();
        }
        let va = self.valuation().min(o.valuation());
        let (a, b) = (self.shift_down(self.valuation()), o.shift_down(o.valuation()));
        let g = a.gcd_nonzero_const(&b);
        g.shift_up(va)
    }

    /// gcd of polynomials with nonzero constant terms.
    fn gcd_nonzero_const(&self, o: &Self) -> Self {
        if self.c.len() == 1 || o.c.len() == 1 {
            return ZiPoly::one();
        }
        let s = self.stride().gcd(&o.stride());
        if s > 1 {
            return self.compress(s).gcd_nonzero_const(&o.compress(s)).expand(s);
        }
        if self == o {
            return self.primitive_part();
        }
        if self.modp_gcd_degree(o) == Some(0) {
            return ZiPoly::one();
        }
        let (mut a, mut b) = if self.deg() >= o.deg() {
            (self.primitive_part(), o.primitive_part())
        } else {
            (o.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            if r.is_zero() {
                break;
            }
            if r.deg() == 0 {
                return ZiPoly::one();
            }
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Evaluate with a caller-supplied ring.
    pub fn eval_with<T: Clone>(
        &self,
        x: &T,
        zero: T,
        lift: impl Fn(&GaussInt) -> T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        let mut acc = zero;
        for c in self.c.iter().rev() {
            acc = add(&mul(&acc, x), &lift(c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZiPoly {
        ZiPoly::from_ints(c)
    }

    #[test]
    fn gcd_shared_factor() {
        // (1+v)(2+v) and (1+v)(3+v^2)
        let a = p(&[1, 1]).mul(&p(&[2, 1]));
        let b = p(&[1, 1]).mul(&p(&[3, 0, 1]));
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn gcd_coprime() {
        assert!(p(&[1, 1]).gcd(&p(&[2, 1])).is_one());
    }

    #[test]
    fn gcd_with_stride() {
        // v^8-1 and v^4-1
        let a = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let b = p(&[-1, 0, 0, 0, 1]);
        assert_eq!(a.gcd(&b), b);
    }

    #[test]
    fn gcd_gaussian_factor() {
        // (v - i)(v+2) and (v - i)(v - 3)
        let vi = ZiPoly::new(vec![GaussInt::new(0, -1), GaussInt::one()]);
        let a = vi.mul(&p(&[2, 1]));
        let b = vi.mul(&p(&[-3, 1]));
        let g = a.gcd(&b);
        assert_eq!(g, vi);
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 2, 3]);
        let b = p(&[5, 0, 1, 7]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }

    #[test]
    fn content_normalizes_quadrant() {
        let a = p(&[-4, -6]);
        let (c, pp) = a.content_primitive();
        assert_eq!(c, GaussInt::from_int(-2));
        assert_eq!(pp, p(&[2, 3]));
    }
}

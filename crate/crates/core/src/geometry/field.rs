//! Table-driven arithmetic in small finite fields.

use super::GeometryError;
use crate::scalars::prime_power;

/// Field element, encoded as `sum c_j p^j` over the coefficient vector of
/// its polynomial representative.
pub type Elt = u16;

/// Largest field order supported by the tables.
pub const MAX_ORDER: u64 = 256;

/// Defining polynomials for the non-prime fields, low coefficient first,
/// leading 1 included.
const DEFINING_POLYS: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

/// The defining polynomial used for `F_{p^k}`, if `k > 1`.
pub fn defining_poly(p: u32, k: u32) -> Option<&'static [u32]> {
    DEFINING_POLYS.iter().find(|(pp, kk, _)| *pp == p && *kk == k).map(|(_, _, c)| *c)
}

#[derive(Clone, Debug)]
pub struct Fq {
    p: u32,
    k: u32,
    q: u32,
    poly: Vec<u32>,
    add: Vec<Elt>,
    mul: Vec<Elt>,
    neg: Vec<Elt>,
    inv: Vec<Elt>,
    conj: Option<Vec<Elt>>,
}

impl Fq {
    pub fn new(q0: u64) -> Result<Self, GeometryError> {
        let (p, k) = prime_power(q0).ok_or(GeometryError::NotPrimePower(q0))?;
        if q0 > MAX_ORDER {
            return Err(GeometryError::FieldTooLarge(q0));
        }
        let (p, q) = (p as u32, q0 as u32);
        let poly = if k == 1 {
            vec![0, 1]
        } else {
            defining_poly(p, k).ok_or(GeometryError::FieldTooLarge(q0))?.to_vec()
        };
        let digits = |x: u32| -> Vec<u32> {
            let mut d = vec![0; k as usize];
            let mut y = x;
            for c in d.iter_mut() {
                *c = y % p;
                y /= p;
            }
            d
        };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s) as Elt;
                // schoolbook product, then reduce by the monic defining polynomial
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for t in (k as usize..prod.len()).rev() {
                    let c = prod[t];
                    if c != 0 {
                        prod[t] = 0;
                        for (j, pc) in poly.iter().enumerate().take(k as usize) {
                            let idx = t - k as usize + j;
                            prod[idx] = (prod[idx] + (p - c) * pc) % p;
                        }
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..k as usize]) as Elt;
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..q {
            neg[a as usize] = (0..q).find(|&b| add[(a * q + b) as usize] == 0).expect("additive inverse") as Elt;
            if a != 0 {
                inv[a as usize] = (1..q)
                    .find(|&b| mul[(a * q + b) as usize] == 1)
                    .ok_or(GeometryError::ReducibleDefiningPoly(q0))? as Elt;
            }
        }
        let mut f = Fq { p, k, q, poly, add, mul, neg, inv, conj: None };
        if let Some(r) = f.sqrt_order() {
            f.conj = Some(f.elements().map(|a| f.pow(a, r as u64)).collect());
        }
        Ok(f)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn defining_poly(&self) -> &[u32] {
        &self.poly
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: Elt, mut n: u64) -> Elt {
        let (mut r, mut b) = (1, a);
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            n >>= 1;
        }
        r
    }

    pub fn frobenius(&self, a: Elt) -> Elt {
        self.pow(a, self.p as u64)
    }

    /// `sqrt(q)` when the order is a square.
    pub fn sqrt_order(&self) -> Option<u32> {
        (self.k % 2 == 0).then(|| self.p.pow(self.k / 2))
    }

    /// The involution `a -> a^r` of `F_{r^2}`.
    #[inline]
    pub fn hermitian_conj(&self, a: Elt) -> Elt {
        self.conj.as_ref().expect("square order")[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        0..self.q as Elt
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_uses_t2_t_1() {
        let f = Fq::new(4).unwrap();
        assert_eq!(f.defining_poly(), &[1, 1, 1]);
        // t = 2: t^2 = t + 1 = 3
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn every_tabulated_polynomial_gives_a_field() {
        for (p, k, _) in DEFINING_POLYS {
            let q = (*p as u64).pow(*k);
            Fq::new(q).unwrap_or_else(|e| panic!("{q}: {e}"));
        }
    }
}

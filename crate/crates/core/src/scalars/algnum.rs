//! Concrete algebraic numbers: Q(i)[s]/(m(s)) with `s` the real positive fourth root of a prime power.

use super::gauss::{GaussInt, GaussRat};
use super::scalar::Scalar;
use super::ScalarError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Minimal polynomial `s^deg - c` over Q(i) of `q0^{1/4}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    q0: u64,
    deg: usize,
    c: BigInt,
}

impl Modulus {
    /// The field Q(i)(q0^{1/4}) for a prime power `q0 = p^k`.
    pub fn for_prime_power(q0: u64) -> Result<Arc<Modulus>, ScalarError> {
        let (p, k) = prime_power(q0).ok_or(ScalarError::NotPrimePower(q0))?;
        let (deg, c) = match k % 4 {
            0 => (1, BigInt::from(p).pow(k / 4)),
            2 => (2, BigInt::from(p).pow(k / 2)),
            _ => (4, BigInt::from(q0)),
        };
        Ok(Arc::new(Modulus { q0, deg, c }))
    }

    pub fn q0(&self) -> u64 {
        self.q0
    }

    pub fn degree(&self) -> usize {
        self.deg
    }
}

/// Returns `(p, k)` with `n = p^k`, `p` prime, `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// An element `sum c_j s^j` of Q(i)[s]/(m(s)).
///
/// Elements built from Q(i) constants carry no modulus and combine with any context.
#[derive(Clone, Debug)]
pub struct AlgNum {
    c: Vec<GaussRat>,
    m: Option<Arc<Modulus>>,
}

impl PartialEq for AlgNum {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl Eq for AlgNum {}

impl AlgNum {
    fn make(mut c: Vec<GaussRat>, m: Option<Arc<Modulus>>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        AlgNum { c, m }
    }

    pub fn constant(x: GaussRat) -> Self {
        AlgNum::make(vec![x], None)
    }

    pub fn from_int(n: i64) -> Self {
        AlgNum::constant(GaussRat::from_int(n))
    }

    pub fn from_rational(r: &num_rational::BigRational) -> Self {
        AlgNum::constant(GaussRat::new(GaussInt::from_int(r.numer().clone()), r.denom().clone()))
    }

    /// The generator `s = q0^{1/4}`.
    pub fn generator(m: &Arc<Modulus>) -> Self {
        if m.deg == 1 {
            return AlgNum::make(vec![GaussRat::from_int(m.c.clone())], Some(m.clone()));
        }
        AlgNum::make(vec![GaussRat::zero(), GaussRat::one()], Some(m.clone()))
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.c
    }

    pub fn modulus(&self) -> Option<&Arc<Modulus>> {
        self.m.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn ctx(&self, o: &Self) -> Option<Arc<Modulus>> {
        match (&self.m, &o.m) {
            (Some(a), Some(b)) => {
                debug_assert_eq!(a, b, "mixed algebraic contexts");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|k| match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            })
            .collect();
        AlgNum::make(c, self.ctx(o))
    }

    pub fn neg(&self) -> Self {
        AlgNum { c: self.c.iter().map(|x| x.neg()).collect(), m: self.m.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return AlgNum::make(vec![], self.ctx(o));
        }
        let m = self.ctx(o);
        let mut prod = vec![GaussRat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        if let Some(md) = &m {
            let cst = GaussRat::from_int(md.c.clone());
            for k in (md.deg..prod.len()).rev() {
                let t = std::mem::replace(&mut prod[k], GaussRat::zero());
                if !t.is_zero() {
                    prod[k - md.deg] = prod[k - md.deg].add(&t.mul(&cst));
                }
            }
            prod.truncate(md.deg);
        } else {
            debug_assert!(prod.len() <= 1);
        }
        AlgNum::make(prod, m)
    }

    /// Inverse via the multiplication matrix (dimension at most 4).
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let deg = self.m.as_ref().map_or(1, |m| m.deg);
        if self.c.len() == 1 {
            return Some(AlgNum::make(vec![self.c[0].inv()?], self.m.clone()));
        }
        // columns: self * s^j
        let mut cols = Vec::with_capacity(deg);
        let mut sj = AlgNum::make(vec![GaussRat::one()], self.m.clone());
        let s = AlgNum::make(vec![GaussRat::zero(), GaussRat::one()], self.m.clone());
        for _ in 0..deg {
            let p = self.mul(&sj);
            let mut col = p.c.clone();
            col.resize(deg, GaussRat::zero());
            cols.push(col);
            sj = sj.mul(&s);
        }
        // augmented system M y = e0, M[r][j] = cols[j][r]
        let mut a: Vec<Vec<GaussRat>> = (0..deg)
            .map(|r| {
                let mut row: Vec<GaussRat> = (0..deg).map(|j| cols[j][r].clone()).collect();
                row.push(if r == 0 { GaussRat::one() } else { GaussRat::zero() });
                row
            })
            .collect();
        for col in 0..deg {
            let piv = (col..deg).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let inv = a[col][col].inv()?;
            for x in a[col].iter_mut() {
                *x = x.mul(&inv);
            }
            for r in 0..deg {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in col..=deg {
                        let t = a[col][j].mul(&f);
                        a[r][j] = a[r][j].sub(&t);
                    }
                }
            }
        }
        Some(AlgNum::make(a.into_iter().map(|row| row[deg].clone()).collect(), self.m.clone()))
    }

    pub fn conj(&self) -> Self {
        AlgNum { c: self.c.iter().map(|x| x.conj()).collect(), m: self.m.clone() }
    }

    /// Sign of a real element under the embedding `s -> q0^{1/4} > 0`; `None` if not real.
    pub fn real_sign(&self) -> Option<Ordering> {
        let mut r = Vec::with_capacity(self.c.len());
        for x in &self.c {
            if !x.num().is_real() {
                return None;
            }
            r.push(BigRational::new(x.num().re.clone(), x.den().clone()));
        }
        let at = |k: usize| r.get(k).cloned().unwrap_or_else(BigRational::zero);
        let Some(m) = &self.m else {
            return Some(sign(&at(0)));
        };
        let n = BigRational::from_integer(m.c.clone());
        Some(match m.deg {
            1 => sign(&at(0)),
            // a + b s with s^2 = n
            2 => sign_sqrt(&at(0), &at(1), &n),
            // (a + c r) + s (b + d r) with r = s^2, r^2 = n
            _ => {
                let (a, b, c, d) = (at(0), at(1), at(2), at(3));
                let sp = sign_sqrt(&a, &c, &n);
                let sq = sign_sqrt(&b, &d, &n);
                if sp == sq || sq == Ordering::Equal {
                    sp
                } else if sp == Ordering::Equal {
                    sq
                } else {
                    // compare P^2 with r Q^2
                    let two = BigRational::from_integer(2.into());
                    let u = &a * &a + &c * &c * &n - &two * &b * &d * &n;
                    let w = &two * &a * &c - &b * &b - &d * &d * &n;
                    match sign_sqrt(&u, &w, &n) {
                        Ordering::Greater => sp,
                        Ordering::Less => sq,
                        Ordering::Equal => Ordering::Equal,
                    }
                }
            }
        })
    }

    /// Value as a Gaussian rational, if it lies in Q(i).
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.c.len() {
            0 => Some(GaussRat::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_constant() {
            return write!(f, "{c}");
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| if j == 0 { format!("({x})") } else { format!("({x})*s^{j}") })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

fn sign(x: &BigRational) -> Ordering {
    x.cmp(&BigRational::zero())
}

/// Sign of `a + b sqrt(n)` for `n > 0`.
fn sign_sqrt(a: &BigRational, b: &BigRational, n: &BigRational) -> Ordering {
    let (sa, sb) = (sign(a), sign(b));
    if sa == sb || sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    match (a * a).cmp(&(b * b * n)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Image of `x` under `v -> q0^{1/4}`.
pub fn eval_at(x: &Scalar, m: &Arc<Modulus>) -> Result<AlgNum, ScalarError> {
    if let Some(c) = x.as_constant() {
        return Ok(AlgNum::constant(c.clone()));
    }
    let s = AlgNum::generator(m);
    let s_inv = s.inv().expect("generator is nonzero");
    let zero = AlgNum::make(vec![], Some(m.clone()));
    let one = AlgNum::make(vec![GaussRat::one()], Some(m.clone()));
    x.eval_with(
        &s,
        &s_inv,
        zero,
        one,
        &|g: &GaussInt| AlgNum::constant(GaussRat::from_gauss(g.clone())),
        &|r: &GaussRat| AlgNum::constant(r.clone()),
        &|a: &AlgNum, b: &AlgNum| a.add(b),
        &|a: &AlgNum, b: &AlgNum| a.mul(b),
        &|a: &AlgNum| a.inv(),
    )
    .ok_or(ScalarError::PoleAt(m.q0))
}

impl crate::algebra::Ring for AlgNum {
    fn zero() -> Self {
        AlgNum::make(vec![], None)
    }
    fn one() -> Self {
        AlgNum::from_int(1)
    }
    fn from_i64(n: i64) -> Self {
        AlgNum::from_int(n)
    }
    fn is_zero(&self) -> bool {
        AlgNum::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        AlgNum::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        AlgNum::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        AlgNum::mul(self, o)
    }
    fn neg(&self) -> Self {
        AlgNum::neg(self)
    }
    fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }
}

impl crate::algebra::Field for AlgNum {
    fn inv(&self) -> Option<Self> {
        AlgNum::inv(self)
    }
    fn conj(&self) -> Self {
        AlgNum::conj(self)
    }
}

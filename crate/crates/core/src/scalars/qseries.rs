//! q-shifted factorials and terminating 3phi2 sums.

use super::{Scalar, ScalarError, ZiPoly};
use crate::algebra::{Algebra, Field, Ring};

/// `[n] = (q^n - 1)/(q - 1) = 1 + q + ... + q^{n-1}`.
pub fn gauss_int(n: u32) -> Scalar {
    let mut c = vec![0i64; 4 * n as usize + 1];
    for k in 0..n as usize {
        c[4 * k] = 1;
    }
    Scalar::from_polys(&ZiPoly::from_ints(&c), &ZiPoly::one())
}

/// `(r; q)_n` over the formal `q`.
pub fn q_pochhammer(r: &Scalar, n: u32) -> Scalar {
    q_pochhammer_in(r, &Scalar::q(), n)
}

/// `(r; q)_n = prod_{k<n} (1 - r q^k)` in any ring.
pub fn q_pochhammer_in<R: Ring>(r: &R, q: &R, n: u32) -> R {
    let mut acc = R::one();
    let mut rq = r.clone();
    for _ in 0..n {
        acc = acc.mul(&R::one().sub(&rq));
        rq = rq.mul(q);
    }
    acc
}

/// `3phi2(q^{-i}, a2, a3; 0, b2 | q, z)` over formal `q`; `a1` must be `q^{-i}`.
pub fn phi_32(a1: &Scalar, a2: &Scalar, a3: &Scalar, b2: &Scalar, z: &Scalar) -> Result<Scalar, ScalarError> {
    let i = terminating_index(a1).ok_or(ScalarError::NonTerminating)?;
    phi_32_terminating(i, a2, a3, b2, z, &Scalar::q())
}

fn terminating_index(a1: &Scalar) -> Option<u32> {
    if a1.is_one() {
        return Some(0);
    }
    let k = a1.v_exponent();
    let pure_power = a1.numerator_poly().is_one() && a1.denominator_poly().is_one() && a1.coefficient().is_one();
    (pure_power && k < 0 && k % 4 == 0).then(|| (-k / 4) as u32)
}

/// `sum_{n=0}^{i} (q^{-i};q)_n (a2;q)_n (a3;q)_n / ((q;q)_n (b2;q)_n) z^n`
/// (the lower parameter `0` contributes trivially), with `a2`, `a3` in any `F`-algebra.
pub fn phi_32_terminating<F: Field, R: Algebra<F>>(
    i: u32,
    a2: &R,
    a3: &R,
    b2: &F,
    z: &F,
    q: &F,
) -> Result<R, ScalarError> {
    let qinv = q.inv().ok_or(ScalarError::PoleInSummand)?;
    let a1 = qinv.pow_u(i);
    let mut total = R::one();
    // running products for n
    let mut scal = F::one(); // (q^{-i};q)_n z^n / ((q;q)_n (b2;q)_n)
    let mut poly = R::one(); // (a2;q)_n (a3;q)_n
    let (mut a1q, mut b2q, mut qq) = (a1, b2.clone(), q.clone());
    let (mut a2q, mut a3q) = (a2.clone(), a3.clone());
    for _ in 1..=i {
        let den = F::one().sub(&qq).mul(&F::one().sub(&b2q));
        if den.is_zero() {
            return Err(ScalarError::PoleInSummand);
        }
        scal = scal.mul(&F::one().sub(&a1q)).mul(z).div(&den).expect("nonzero");
        poly = poly.mul(&R::one().sub(&a2q)).mul(&R::one().sub(&a3q));
        total = total.add(&poly.scale(&scal));
        a1q = a1q.mul(q);
        b2q = b2q.mul(q);
        qq = qq.mul(q);
        a2q = a2q.scale(q);
        a3q = a3q.scale(q);
    }
    Ok(total)
}

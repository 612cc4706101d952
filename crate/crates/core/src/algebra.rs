//! Minimal ring and field abstractions shared by the formal and concrete backends.

use crate::scalars::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::{Debug, Display};

pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign_ref(&mut self, o: &Self) {
        *self = Ring::add(self, o);
    }

    fn pow_u(&self, mut n: u32) -> Self {
        let mut r = Self::one();
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                r = Ring::mul(&r, &b);
            }
            n >>= 1;
            if n > 0 {
                b = Ring::mul(&b, &b);
            }
        }
        r
    }
}

/// A commutative field with a distinguished involution (`i -> -i`).
pub trait Field: Ring + Display {
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;

    fn div(&self, o: &Self) -> Option<Self> {
        Some(Ring::mul(self, &Field::inv(o)?))
    }

    fn pow_i(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { Field::inv(self)? } else { self.clone() };
        Some(base.pow_u(n.unsigned_abs() as u32))
    }
}

/// A ring that is also a vector space over `F`.
pub trait Algebra<F: Field>: Ring {
    fn scale(&self, c: &F) -> Self;
    fn from_scalar(c: F) -> Self;
}

impl<F: Field> Algebra<F> for F {
    fn scale(&self, c: &F) -> Self {
        Ring::mul(self, c)
    }
    fn from_scalar(c: F) -> Self {
        c
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_i64(n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Scalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Scalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Scalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
}

impl Field for Scalar {
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self)
    }
    fn conj(&self) -> Self {
        Scalar::conj(self)
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

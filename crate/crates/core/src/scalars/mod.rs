//! Exact base field Q(i)(v) with `q = v^4`, q-combinatorics, terminating
//! basic hypergeometric sums, and evaluation into concrete number fields.

mod algnum;
mod gauss;
mod qseries;
mod scalar;
mod zipoly;

pub use algnum::{eval_at, prime_power, AlgNum, Modulus};
pub use gauss::{GaussInt, GaussRat};
pub use qseries::{gauss_int, phi_32, phi_32_terminating, q_pochhammer, q_pochhammer_in};
pub use scalar::Scalar;
pub use zipoly::ZiPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("pole at q0 = {0}")]
    PoleAt(u64),
    #[error("series does not terminate")]
    NonTerminating,
    #[error("pole in summand")]
    PoleInSummand,
}

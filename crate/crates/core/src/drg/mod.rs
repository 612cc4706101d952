//! Distance-regular structure of a dual polar graph, up to the module **W**
//! spanned by the characteristic vectors of the clique partition `{C_i^-, C_i^+}`.

mod partition;
mod profile;
mod spectral;
mod wmodule;

pub use partition::{default_choice, seeded_choice, verify_edge_cliques, CliquePartition};
pub use profile::{profile_formal, profile_from_graph, DrgProfile, GraphAnalysis, IntConsts};
pub use spectral::Spectral;
pub use wmodule::{WInput, WModule};

use crate::geometry::GeometryError;
use crate::linalg::LinalgError;
use crate::scalars::ScalarError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DrgError {
    #[error("intersection number inconsistent at distance {0}")]
    IntersectionInconsistent(usize),
    #[error("vertex {0} has a different degree or distance distribution")]
    NotWalkRegular(usize),
    #[error("spectrum mismatch: {0}")]
    SpectrumMismatch(String),
    #[error("dual eigenvalue inconsistent at distance {0}")]
    DualEigenvalueInconsistent(usize),
    #[error("invalid clique: {0}")]
    InvalidClique(String),
    #[error("edge {0}-{1} does not lie in a unique maximal clique of size 1 + q^e")]
    EdgeClique(usize, usize),
    #[error("vertex {0} lies outside every cell of the clique partition")]
    OutsidePartition(usize),
    #[error("partition is not equitable at cell {0}")]
    NotEquitable(usize),
    #[error("{what} disagrees with the closed form at ({row}, {col})")]
    TableMismatch { what: &'static str, row: usize, col: usize },
    #[error("invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub(crate) fn ensure(ok: bool, what: impl Into<String>) -> Result<(), DrgError> {
    if ok {
        Ok(())
    } else {
        Err(DrgError::Invariant(what.into()))
    }
}

/// Index of `C_i^-` in the ordered basis.
#[inline]
pub fn minus(i: usize) -> usize {
    2 * i
}

/// Index of `C_i^+` in the ordered basis.
#[inline]
pub fn plus(i: usize) -> usize {
    2 * i + 1
}

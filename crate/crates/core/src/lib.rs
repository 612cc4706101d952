//! Exact computations on dual polar graphs: the module spanned by the
//! clique-partition characteristic vectors, its four Leonard systems, the
//! rank-one nil-DAHA acting on it, and the non-symmetric dual q-Krawtchouk
//! polynomials.

pub mod algebra;
pub mod checks;
pub mod family;
pub mod drg;
pub mod geometry;
pub mod laurent;
pub mod leonard;
pub mod linalg;
pub mod nildaha;
pub mod nonsym;
pub mod scalars;

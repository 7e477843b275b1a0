//! Exact arithmetic kernel: finite fields, dense matrices over them,
//! truncated polynomial matrices and echelonized subspaces.

mod field;
mod matrix;
mod poly;
pub(crate) mod ring;
mod subspace;

pub use field::{Field, FieldSpec};
pub use matrix::Matrix;
pub use poly::{PolyMatrix, TruncationPolicy};
pub use subspace::Subspace;

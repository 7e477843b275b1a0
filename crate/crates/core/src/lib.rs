//! Support varieties for polynomial `GL_n`-modules at 1-parameter subgroups,
//! computed exactly over small finite fields.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of immutable inputs; IO, file formats and the command line live
//! in the companion `nilsupport` crate.
//!
//! Layout:
//! - [`ffmat`]: finite fields, dense matrices, truncated polynomial matrices.
//! - [`liealg`]: `gl_n` with bracket and `p`-operation, commuting `p`-nilpotent tuples.
//! - [`repcore`]: module expressions, their action matrices and weights,
//!   submodule closure and modules for elementary abelian groups.
//! - [`oneparam`]: truncated exponentials and 1-parameter subgroups.
//! - [`support`]: local operators, Jordan types, support membership and the
//!   property checks.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod ffmat;
pub mod liealg;
pub mod oneparam;
pub mod repcore;
pub mod support;

pub use error::{Error, Result};
pub use ffmat::{Field, FieldSpec, Matrix, PolyMatrix, Subspace, TruncationPolicy};
pub use liealg::{NilTuple, Violation};
pub use oneparam::OneParamSubgroup;
pub use repcore::{EAModule, ModuleExpr, Node, WeightTable};
pub use support::{JordanType, LocalOperator, SupportReport};

/// Default number of candidates an exhaustive enumeration may scan.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

//! Polynomial `GL_n`-modules given as construction trees, their action
//! matrices over fields and polynomial rings, weights, submodules, and
//! modules for elementary abelian `p`-groups.

mod closure;
mod ea;
mod eval;
mod expr;
mod weights;

pub use closure::{
    group_generators, is_irreducible_exhaustive, is_irreducible_with, quotient_and_restrict,
    submodule_closure, GeneratorSet,
};
pub use ea::{ea_free, EAModule};
pub use expr::{ModuleExpr, Node, MAX_MODULE_DIM};
pub use weights::WeightTable;

//! Local operators at 1-parameter subgroups, Jordan types, support
//! membership, support tables, and the property suite.

mod jordan;
mod local;
mod report;
pub mod verify;

pub use jordan::{block_partition, is_free_operator, jordan_type_of, JordanType};
pub use local::{
    alpha_operator, conjugate_tuple, ga_alpha, in_support, jordan_type, lambda_reverse,
    mu_operator, restrict_along, LocalOperator, OperatorSource,
};
pub use report::{
    enumerate_support, sample_support, support_row, Scope, SupportReport, SupportRow,
};
pub use verify::{verify_grid, verify_properties, Grid, ItemReport, VerifyConfig, VerifyReport};

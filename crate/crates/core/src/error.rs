use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The characteristic is not a prime, or the modulus is unusable.
    InvalidField(String),
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    FieldMismatch,
    /// A non-truncating polynomial matrix grew past its degree cap.
    DegreeCapExceeded {
        cap: usize,
        degree: usize,
    },
    NotNilpotent {
        index: usize,
    },
    NotCommuting {
        i: usize,
        j: usize,
    },
    /// An exhaustive scan would visit more candidates than allowed.
    BudgetExceeded {
        candidates: u128,
        budget: u64,
    },
    /// The module contains a dual or adjoint factor but no inverse was given.
    MissingInverse,
    /// The supplied inverse does not invert the group element.
    BadInverse,
    Singular,
    NotInvariant,
    InvalidModule(String),
    InvalidArgument(String),
    /// A mathematical invariant that must always hold was violated.
    InvariantBreach(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidField(msg) => write!(f, "invalid field: {msg}"),
            Error::DimensionMismatch { op, left, right } => write!(
                f,
                "dimension mismatch in {op}: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::FieldMismatch => write!(f, "operands live over different fields"),
            Error::DegreeCapExceeded { cap, degree } => {
                write!(f, "polynomial degree {degree} exceeds cap {cap}")
            }
            Error::NotNilpotent { index } => write!(f, "matrix {index} is not p-nilpotent"),
            Error::NotCommuting { i, j } => write!(f, "matrices {i} and {j} do not commute"),
            Error::BudgetExceeded { candidates, budget } => write!(
                f,
                "enumeration needs {candidates} candidates but the budget is {budget}; use sampling instead"
            ),
            Error::MissingInverse => write!(f, "module needs the inverse group element"),
            Error::BadInverse => write!(f, "supplied inverse does not invert the group element"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::NotInvariant => write!(f, "subspace is not invariant under the operator"),
            Error::InvalidModule(msg) => write!(f, "invalid module expression: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InvariantBreach(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

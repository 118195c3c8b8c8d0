//! Crate-wide error type.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in a computation or while loading data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operand shapes are incompatible.
    #[error("shape error: {0}")]
    Shape(String),
    /// A matrix is singular; `pivot` is the column where elimination found no pivot.
    #[error("singular matrix: zero pivot in column {pivot}")]
    Singular { pivot: usize },
    /// An overdetermined linear system has no solution.
    #[error("inconsistent linear system: equation {row} cannot be satisfied")]
    Inconsistent { row: usize },
    /// A polynomial variable name is not one of the declared variables.
    #[error("unknown variable `{0}` (expected t1 or t2)")]
    UnknownVariable(String),
    /// Classes live over different base surfaces.
    #[error("geometry mismatch: {0}")]
    Geometry(String),
    /// A unit series was expected (degree-0 part equal to one).
    #[error("series error: {0}")]
    Series(String),
    /// A class of pure degree was expected.
    #[error("grading error: {0}")]
    Grading(String),
    /// A documented precondition of an operation is violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The requested matrix representation does not exist for this input.
    #[error("representation error: {0}")]
    Representation(String),
    /// A derived matrix matches the printed one under no convention.
    #[error("reconciliation error: {message}")]
    Reconciliation { message: String, derived: String, printed: String },
    /// A charge dictionary is not invertible on the lattice.
    #[error("rank error: {0}")]
    Rank(String),
    /// An integer argument has the wrong parity.
    #[error("parity error: {0}")]
    Parity(String),
    /// Malformed input text (numbers, polynomials, configuration).
    #[error("parse error: {0}")]
    Parse(String),
    /// A name was not found in the model registry.
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

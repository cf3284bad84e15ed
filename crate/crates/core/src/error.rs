use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
///
/// Check failures (a law that does not hold on some sample) are reported as
/// data in a [`crate::report::CheckReport`], never through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("coefficient domain mismatch: {0} vs {1}")]
    DomainMismatch(&'static str, &'static str),
    #[error("operation requires rational coefficients (Euclidean domain)")]
    RequiresRationals,
    #[error("result is not integral; cannot stay in Z[x]")]
    NotIntegral,
    #[error("automorphism unit must be nonzero")]
    ZeroUnit,
    #[error("order {requested} exceeds the family's order bound {bound}")]
    OrderBoundExceeded { requested: usize, bound: usize },
    #[error("degree {degree} exceeds the table's degree bound {bound}")]
    TableDegreeExceeded { degree: usize, bound: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("filter base must be a nonzero nonunit polynomial")]
    InvalidFilterBase,
    #[error("ideal {0} is not a power of the filter base")]
    NotBasePower(String),
    #[error("filter is not invariant under {0}")]
    NotInvariant(String),
    #[error("filters are not nested: {0}")]
    NotNested(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("algebra has no unit element")]
    NoUnit,
    #[error("module family is not well defined: {0}")]
    IllDefined(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Vector or matrix sizes do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// An entry lies outside its allowed range (e.g. a pattern cell that is
    /// neither 0 nor 1, or a ceiling of 0).
    #[error("invalid entry: {0}")]
    InvalidEntry(String),
    /// Valley filling requires a non-increasing input vector.
    #[error("input vector must be non-increasing")]
    UnsortedInput,
    /// A positive amount cannot be poured into an empty vector.
    #[error("cannot add a positive amount to an empty vector")]
    EmptyFill,
    /// A tensor index has the wrong arity or a component above its block width.
    #[error("tensor index out of range: {0}")]
    IndexOutOfRange(String),
    /// The dense tensor would exceed the configured element cap; callers can
    /// fall back to the flow oracle.
    #[error("structure tensor has {elements} elements, above the cap of {cap}")]
    TensorTooLarge { elements: u128, cap: u64 },
    /// A load demands more than its ceiling times its covered slots, so no
    /// amount of extra supply can serve it. The id is a 1-based row index.
    #[error("load {load} cannot be served even with every covered slot at its ceiling")]
    InstanceUnsatisfiable { load: usize },
    /// Exhaustive enumeration was asked for an instance above the size guard.
    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),
    /// A candidate matrix fails the instance constraints.
    #[error("matrix violates instance constraints: {0}")]
    ConstraintViolation(String),
    /// Fixed ones fall outside the pattern or exceed a row/column sum.
    #[error("fixed ones conflict with the instance: {0}")]
    InvalidFixedOnes(String),
    /// A service window or block index is malformed.
    #[error("invalid service specification: {0}")]
    InvalidService(String),
    /// An instance file could not be parsed or is inconsistent.
    #[error("instance file: {0}")]
    Parse(String),
    /// Reading or writing a file failed.
    #[error("io: {0}")]
    Io(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    /// An internal invariant did not hold; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

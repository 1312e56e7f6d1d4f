//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Validation failures carry
//! enough context (cell lists, names) to locate the offending input.

use thiserror::Error;

/// Errors produced by construction, validation and the calculus operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Structurally invalid input data (duplicate vertices, empty facet
    /// lists, unknown cells, ...).
    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// A cell set that is not order-convex in the face poset, i.e. whose
    /// realization is not locally closed.
    #[error("cell set is not locally closed: {0}")]
    NotLocallyClosed(String),

    /// Two values that should live on the same space do not.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// A vertex map that fails to be simplicial or does not carry cells
    /// into cells.
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    /// A map outside the supported fragment (e.g. a graph embedding that is
    /// not realizable even after one subdivision).
    #[error("unsupported map: {0}")]
    UnsupportedMap(String),

    /// An operation required an open (resp. closed) subset and got
    /// something else.
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    /// A function or cell set was expected to be supported on a subset of
    /// another space.
    #[error("not a subset: {0}")]
    NotSubset(String),

    /// A Čech cover with more pieces than the supported bound.
    #[error("cover too large: {n} pieces exceeds the limit of {max}")]
    CoverTooLarge { n: usize, max: usize },

    /// The target of a nearby-values computation is not a pointed cone
    /// (the open star of its unique vertex cell).
    #[error("target is not a pointed cone: {0}")]
    NotDiskModel(String),

    /// Nearby cycles recomputed with different admissible generic cells of
    /// the same dimension disagreed.
    #[error("generic-cell choices disagree: {0}")]
    GenericCellDisagreement(String),

    /// Group element enumeration exceeded the supported order.
    #[error("group too large: more than {0} elements")]
    GroupTooLarge(usize),

    /// An action that is still irregular after the maximum number of
    /// barycentric subdivisions.
    #[error("action is not regular after {0} subdivisions")]
    RegularityNotAchieved(usize),

    /// Two internal routes that must agree (e.g. the fixed-set trace and
    /// the chain-level trace) did not.
    #[error("internal consistency: {0}")]
    Inconsistency(String),

    /// A scenario or eval argument referring to a name that resolves
    /// neither in the scenario definitions nor in the model registry.
    #[error("unknown reference: {0}")]
    UnknownReference(String),

    /// An `eval` operation name outside the documented set.
    #[error("unknown operation: {0}")]
    UnknownOp(String),

    /// Arguments that do not fit the requested operation.
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),

    /// JSON that does not match the documented schema.
    #[error("schema error: {0}")]
    Schema(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name of the error kind, used by scenario
    /// checks that expect a specific failure.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedInput(_) => "MalformedInput",
            Error::NotLocallyClosed(_) => "NotLocallyClosed",
            Error::SpaceMismatch(_) => "SpaceMismatch",
            Error::InvalidMap(_) => "InvalidMap",
            Error::UnsupportedMap(_) => "UnsupportedMap",
            Error::InvalidDecomposition(_) => "InvalidDecomposition",
            Error::NotSubset(_) => "NotSubset",
            Error::CoverTooLarge { .. } => "CoverTooLarge",
            Error::NotDiskModel(_) => "NotDiskModel",
            Error::GenericCellDisagreement(_) => "GenericCellDisagreement",
            Error::GroupTooLarge(_) => "GroupTooLarge",
            Error::RegularityNotAchieved(_) => "RegularityNotAchieved",
            Error::Inconsistency(_) => "Inconsistency",
            Error::UnknownReference(_) => "UnknownReference",
            Error::UnknownOp(_) => "UnknownOp",
            Error::InvalidArgs(_) => "InvalidArgs",
            Error::Schema(_) => "Schema",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

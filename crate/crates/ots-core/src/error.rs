use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Pairing code does not fit in the host integer range.
    #[error("arithmetic overflow while pairing ({0}, {1})")]
    ArithmeticOverflow(u64, u64),

    /// A term uses a function level or generator index that does not exist
    /// in the requested structure, or is not in normal form where one is
    /// required.
    #[error("malformed term: {0}")]
    MalformedTerm(String),

    /// A term was built over a different structure descriptor than the one
    /// it is used with.
    #[error("structure mismatch: {0}")]
    StructureMismatch(String),

    /// subtract(a, b) with a > b.
    #[error("subtraction underflow: left argument exceeds right argument")]
    Underflow,

    /// A dilation map is missing an index, moves 0, or is not strictly
    /// order preserving.
    #[error("invalid dilation: {0}")]
    InvalidDilation(String),

    /// The transitive closure of the relation is not irreflexive.
    #[error("relation is not well founded: node {0} reaches itself")]
    NotWellFounded(u32),

    /// The relation exceeds the configured enumeration limit.
    #[error("instance too large: {0} nodes exceeds the limit of {1}")]
    InstanceTooLarge(u32, u32),

    /// An exponent falls outside the fragment a bound operation supports.
    #[error("unsupported exponent: {0}")]
    UnsupportedExponent(String),

    /// A bound-function precondition fails (the closed form does not apply).
    #[error("unsupported bound: {0}")]
    UnsupportedBound(String),

    /// Text input that does not conform to the expression or relation
    /// grammar.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// A generator or sequence index outside the input order.
    #[error("index {0} is not valid for the input order")]
    InvalidIndex(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

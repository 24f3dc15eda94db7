use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("duplicate symbol '{0}' in alphabet")]
    DuplicateSymbol(char),
    #[error("symbol '{0}' is not in the alphabet")]
    SymbolNotInAlphabet(char),
    #[error("empty decomposition")]
    EmptyDecomposition,
    #[error("decomposition contains an empty part")]
    EmptyPart,
    #[error("composition sums to {sum} but the word has length {len}")]
    LengthMismatch { sum: usize, len: usize },
    #[error("composition part {part} is below the minimum {min}")]
    PartTooSmall { part: usize, min: usize },
    #[error("word of length {len} admits no {k}-restricted decomposition")]
    TooShort { len: usize, k: usize },
    #[error("search space has {count} decompositions, above the limit {limit}")]
    GuardExceeded { count: String, limit: String },
    #[error("search cancelled")]
    Cancelled,
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

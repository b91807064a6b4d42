use thiserror::Error;

/// Errors shared across the toolkit's modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex or arc id {id} out of range (limit {limit})")]
    IdOutOfRange { id: u64, limit: u64 },
    #[error("capacity {value} out of range: {detail}")]
    CapacityOutOfRange { value: u64, detail: String },
    #[error("dart {dart} listed more than once in the rotation system")]
    DuplicateDart { dart: u32 },
    #[error("dart {dart} dangling: {detail}")]
    DanglingDart { dart: u32, detail: String },
    #[error("graph has no rotation system; an embedding is required")]
    MissingRotation,
    #[error("graph is not connected")]
    NotConnected,
    #[error("rotation system is not a planar embedding: n={n}, m={m}, f={f} (n - m + f != 2)")]
    EulerViolation { n: usize, m: usize, f: usize },
    #[error("syntax error on line {line}: {detail}")]
    SyntaxError { line: usize, detail: String },
    #[error("missing `p max <n> <m>` problem line")]
    MissingProblemLine,
    #[error("rotation lines incomplete: {detail}")]
    RotationIncomplete { detail: String },
    #[error("source equals sink{}", match .index { Some(i) => format!(" (pair #{i})"), None => String::new() })]
    SameSourceSink { index: Option<usize> },
    #[error("embedding invalid or absent for a planar-only routine")]
    InvalidEmbedding,
    #[error("flow is not maximal: an augmenting path remains")]
    NotMaximal,
    #[error("instance too large for exhaustive enumeration: n={n} (limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("pair value table is incomplete")]
    IncompleteTable,
    #[error("invalid generator range: {detail}")]
    BadRange { detail: String },
    #[error("path generator needs at least one capacity")]
    EmptyCaps,
}

pub type Result<T> = std::result::Result<T, Error>;

//! Crate-wide error type.

/// Errors shared by every layer of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Two bit vectors (or a vector and an expected width) disagree in length.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A bitstring contained a character other than '0' or '1'.
    #[error("invalid bit character {character:?} at position {position}")]
    InvalidBitChar { position: usize, character: char },

    /// The register count n must be at least 1.
    #[error("register width n must be at least 1")]
    InvalidN,

    /// Preparing the requested state would exceed the qubit budget.
    #[error("{required} qubits exceed the configured cap of {cap}")]
    QubitLimitExceeded { required: usize, cap: usize },

    /// A register block name is not part of the layout.
    #[error("unknown register block {name:?}")]
    UnknownBlock { name: String },

    /// A global qubit index is outside the state.
    #[error("qubit index {index} out of range for {total} qubits")]
    IndexOutOfRange { index: usize, total: usize },

    /// The state norm collapsed below tolerance; signals an internal bug.
    #[error("state norm fell below tolerance (internal bug)")]
    DegenerateState,

    /// A requested probability table would not fit in memory.
    #[error("probability table over {bits} bits exceeds the {max}-bit cap")]
    TableTooLarge { bits: usize, max: usize },

    /// A transcript failed to parse or is missing fields a consumer needs.
    #[error("malformed transcript: {reason}")]
    MalformedTranscript { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

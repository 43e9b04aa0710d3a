use thiserror::Error;

/// Errors produced by the codec, container, and analysis layers.
///
/// Bit-level errors carry the bit offset at which the problem was detected so
/// corrupted streams can be diagnosed without a debugger.
#[derive(Debug, Error)]
pub enum EbpcError {
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("truncated stream: needed {needed} bit(s) at bit offset {bit_offset}")]
    TruncatedStream { bit_offset: u64, needed: u64 },

    #[error("malformed stream at bit offset {bit_offset}: {reason}")]
    MalformedStream { bit_offset: u64, reason: String },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("bad magic: expected {expected:?}, found {found:?}")]
    BadMagic { expected: [u8; 4], found: [u8; 4] },

    #[error("unsupported version {0}")]
    UnsupportedVersion(u8),

    #[error("unknown dtype code {0}")]
    UnknownDtype(u8),

    #[error("unknown layout code {0}")]
    UnknownLayout(u8),

    #[error("length mismatch: expected {expected} byte(s), found {actual}")]
    LengthMismatch { expected: u64, actual: u64 },

    #[error("unsatisfiable sparsity: target {target}, achieved {achieved}")]
    UnsatisfiableSparsity { target: f64, achieved: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, EbpcError>;

//! Error type shared across the library.
//!
//! Every fallible operation returns [`Error`] with enough context to name the
//! offending input (index, label, or value) without chasing a backtrace.

use thiserror::Error;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// One-line form is not a bijection on {1..L}.
    #[error("invalid permutation {entries:?}: {reason}")]
    InvalidPermutation { entries: Vec<usize>, reason: String },

    /// Two permutations (or series windows) of different lengths were combined.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A degree/size is outside the supported range.
    #[error("unsupported size {value}: {reason}")]
    UnsupportedSize { value: usize, reason: String },

    /// A multiplication table failed a group axiom.
    #[error("invalid group table: {reason}")]
    InvalidGroupTable { reason: String },

    /// Elements of different groups (or incompatible alphabets) were combined.
    #[error("group mismatch: {reason}")]
    GroupMismatch { reason: String },

    /// A symbol index falls outside the alphabet.
    #[error("symbol {symbol} out of range for alphabet of size {size} (position {position})")]
    SymbolOutOfRange {
        symbol: usize,
        size: usize,
        position: usize,
    },

    /// A real-valued input contains NaN or infinity.
    #[error("non-finite value at index {index}")]
    NonFiniteValue { index: usize },

    /// A series is too short for the requested operation.
    #[error("series too short: length {len}, need at least {need}")]
    SeriesTooShort { len: usize, need: usize },

    /// An empty input where at least one element is required.
    #[error("empty input: {what}")]
    EmptyInput { what: &'static str },

    /// A probability vector fails validation.
    #[error("invalid distribution: {reason}")]
    InvalidDistribution { reason: String },

    /// Two distributions of different support sizes were combined.
    #[error("support size mismatch: {left} vs {right}")]
    SupportMismatch { left: usize, right: usize },

    /// A scalar parameter is outside its admissible range.
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        reason: String,
    },

    /// A simulated trajectory left the guarded region.
    #[error("trajectory diverged at step {step} (|state| > {bound})")]
    TrajectoryDiverged { step: usize, bound: f64 },
}

impl Error {
    /// Shorthand for [`Error::InvalidParameter`].
    pub fn invalid_parameter(
        name: &'static str,
        value: impl std::fmt::Display,
        reason: impl Into<String>,
    ) -> Self {
        Error::InvalidParameter {
            name,
            value: value.to_string(),
            reason: reason.into(),
        }
    }
}

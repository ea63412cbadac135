use thiserror::Error;

/// Errors raised by constructions, file I/O and decoders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("X row {row_x} and Z row {row_z} anticommute")]
    NotCommuting { row_x: usize, row_z: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix must have full row rank ({rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },

    #[error("residual has a nonzero syndrome")]
    NonZeroSyndrome,

    #[error("no error supported on the erased set reproduces the syndrome")]
    NoErasureSolution,

    #[error("search gave up after {attempts} attempts")]
    SearchExhausted { attempts: usize },

    #[error("incompatible configuration: {0}")]
    Config(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use std::io;

use crate::image::Shape;

/// Errors produced by the augmentation engine and its file formats.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("bit depth {0} out of range, expected 1..=7")]
    InvalidBitDepth(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: Shape, right: Shape },
    #[error("label length mismatch: {left} vs {right}")]
    LabelLengthMismatch { left: usize, right: usize },
    #[error("invalid label vector: {0}")]
    InvalidLabel(String),
    #[error("pixel buffer of {actual} bytes does not match shape {shape}")]
    BufferSize { shape: Shape, actual: usize },
    #[error("batch of {0} samples is too small, augmentation needs at least 2")]
    BatchTooSmall(usize),
    #[error("truncated record at offset {offset}")]
    TruncatedRecord { offset: u64 },
    #[error("class label {label} out of range at offset {offset}")]
    LabelOutOfRange { offset: u64, label: u8 },
    #[error("bad magic: expected \"SAUG1\", found {found:?}")]
    BadMagic { found: Vec<u8> },
    #[error("size mismatch: header declares {expected} bytes, found {actual}")]
    SizeMismatch { expected: u64, actual: u64 },
    #[error("label byte {value} at offset {offset} is not 0 or 1")]
    LabelByte { offset: u64, value: u8 },
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("malformed header at offset {offset}: {reason}")]
    MalformedHeader { offset: u64, reason: String },
    #[error("ragged table: row {row} has {found} cells, header has {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("empty population")]
    EmptyPopulation,
    #[error("empty parameter grid")]
    EmptyGrid,
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of the environment (filesystem, OS) rather than of
    /// the caller's input.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io(_) => true,
            Error::Csv(e) => matches!(e.kind(), csv::ErrorKind::Io(_)),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

use crate::lorenz::Variant;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("integration blew up at step {step} (variant {variant}): state is no longer finite")]
    Blowup { variant: Variant, step: usize },

    #[error("not enough samples: {required} required, {available} available")]
    Length { required: usize, available: usize },

    #[error("iteration count overflows for a {rows}x{cols} image")]
    Overflow { rows: usize, cols: usize },

    #[error(
        "dimension mismatch: image is {image_rows}x{image_cols}, key is {key_rows}x{key_cols}"
    )]
    DimensionMismatch {
        image_rows: usize,
        image_cols: usize,
        key_rows: usize,
        key_cols: usize,
    },

    #[error("correlation undefined: {0} series has zero standard deviation")]
    UndefinedCorrelation(&'static str),

    #[error("efficiency index undefined: work {label:?} has zero {category}")]
    ZeroScore {
        label: String,
        category: &'static str,
    },

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {kind}")]
    Pgm { path: PathBuf, kind: PgmError },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

/// Ways a PGM file can be rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PgmError {
    #[error("unsupported netpbm format {0:?}, only binary PGM (P5) is accepted")]
    UnsupportedFormat(String),
    #[error("not a netpbm file (bad magic number)")]
    BadMagic,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("maxval {0} is not supported (16-bit PGM); maxval must be in 1..=255")]
    MaxvalTooLarge(u32),
    #[error("truncated pixel data: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

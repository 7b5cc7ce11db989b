//! Error type shared by all modules.

use std::fmt;

/// Errors reported by builders, accessors, and the container codec.
#[derive(Debug)]
pub enum Error {
    /// A value does not fit the requested bit width or parameter range.
    Range(String),
    /// An index or offset is outside the addressable range.
    Bounds(String),
    /// Input rejected before any structure was built (empty input,
    /// letter outside the alphabet, bad parameter combination).
    InvalidInput(String),
    /// Stored data decodes to nothing valid (bad window, truncated
    /// section, inconsistent header fields).
    Corruption(String),
    /// Bytes do not look like a container at all.
    Format(String),
    /// A container written by an incompatible format version.
    UnsupportedVersion(u8),
    Io(std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    pub fn bounds(msg: impl Into<String>) -> Self {
        Error::Bounds(msg.into())
    }

    pub fn invalid_input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn corruption(msg: impl Into<String>) -> Self {
        Error::Corruption(msg.into())
    }

    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Range(msg) => write!(f, "value out of range: {msg}"),
            Error::Bounds(msg) => write!(f, "index out of bounds: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Corruption(msg) => write!(f, "corrupted data: {msg}"),
            Error::Format(msg) => write!(f, "unrecognized format: {msg}"),
            Error::UnsupportedVersion(v) => write!(f, "unsupported container version: {v}"),
            Error::Io(err) => write!(f, "io error: {err}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err)
    }
}

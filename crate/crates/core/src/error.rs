use thiserror::Error;

/// Errors raised by the partition maps and the enumeration oracle.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("input is not in {set}: {reason}")]
    NotInSet { set: String, reason: String },

    #[error("input is not in the image of {map}: {reason}")]
    NotInImage { map: String, reason: String },

    #[error("exceptional element: {0}")]
    Exceptional(String),

    #[error("enumeration of {family} at n = {n} exceeds the cap of {cap} elements")]
    CapExceeded { family: String, n: u64, cap: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn not_in_set(set: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::NotInSet {
        set: set.into(),
        reason: reason.into(),
    }
}

pub(crate) fn not_in_image(map: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::NotInImage {
        map: map.into(),
        reason: reason.into(),
    }
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

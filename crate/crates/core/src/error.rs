use alloc::string::String;

/// Errors raised by graph construction, generators, the engine and the bounds.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("vertex {vertex} is outside 0..{n}")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("puzzle graph is disconnected ({components} components)")]
    DisconnectedPuzzle { components: usize },
    #[error("people graph has {people} vertices but puzzle graph has {puzzle}")]
    SizeMismatch { people: usize, puzzle: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Shorthand for [`Error::InvalidParameter`] with a formatted message.
macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidParameter(alloc::format!($($arg)*))
    };
}
pub(crate) use invalid;

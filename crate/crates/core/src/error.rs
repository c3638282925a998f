use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("generator index 0 is not allowed (generators are g1, g2, ...)")]
    ZeroGenerator,

    #[error("word too long: {0}")]
    WordTooLong(String),

    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("table does not define a group: {0}")]
    NotAGroup(String),

    #[error("generator g{0} is not assigned")]
    Unassigned(u32),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

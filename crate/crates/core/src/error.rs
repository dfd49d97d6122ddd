use thiserror::Error;

use crate::frac::FracIndex;

#[derive(Debug, Error)]
pub enum VosaError {
    #[error("mode {mode} of generator {generator} lies outside the sector support")]
    ModeOutOfSupport { generator: String, mode: FracIndex },

    #[error("state is not homogeneous")]
    NonHomogeneous,

    #[error("mode index {index} is not in the twist class {class} + Z")]
    IndexClass { index: FracIndex, class: FracIndex },

    #[error("invalid generator data: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("truncation too small: {0}")]
    Truncation(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("value is not rational: {0}")]
    NonRational(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, VosaError>;

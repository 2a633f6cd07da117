use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Numeric,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown preset `{name}` (valid: {})", valid.join(", "))]
    UnknownPreset { name: String, valid: Vec<&'static str> },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid has {points} points, above the cap of {cap}")]
    GridTooLarge { points: usize, cap: usize },

    #[error("grid too coarse: spacing {spacing:.4} exceeds {required:.4} (γ31 units)")]
    GridTooCoarse { spacing: f64, required: f64 },

    #[error("overdamped dressing on the {transition} transition: radicand {radicand:.4} ≤ 0")]
    Overdamped { transition: &'static str, radicand: f64 },

    #[error("no EIT channel: |Ωc2| = 0")]
    NoEitChannel,

    #[error("slow-light formula gives v3 = {v3:.3e} m/s ≥ c")]
    NotSlowLight { v3: f64 },

    #[error("expected a `{expected}` field, got `{found}`")]
    WrongQuantity { expected: &'static str, found: &'static str },

    #[error("no peaks found in field")]
    NoPeaks,

    #[error("Im χs3 changes sign on the sweep ({positive} positive, {negative} negative samples)")]
    SignConvention { positive: usize, negative: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::UnknownPreset { .. } | Error::Config(_) | Error::InvalidParams(_) => {
                ErrorKind::Config
            }
            Error::InvalidGrid(_)
            | Error::GridTooLarge { .. }
            | Error::GridTooCoarse { .. }
            | Error::Overdamped { .. }
            | Error::NoEitChannel
            | Error::NotSlowLight { .. }
            | Error::NoPeaks => ErrorKind::Numeric,
            Error::WrongQuantity { .. }
            | Error::SignConvention { .. }
            | Error::Invariant(_)
            | Error::Io(_)
            | Error::Json(_) => ErrorKind::Internal,
        }
    }
}

use thiserror::Error;

use crate::planner::HoverFlyHoverPlan;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid system parameter `{field}`: {reason}")]
    InvalidParams { field: &'static str, reason: String },

    #[error("invalid energy profile ({alpha1}, {alpha2}): {reason}")]
    InvalidProfile { alpha1: f64, alpha2: f64, reason: String },

    #[error("energy receiver index must be 1 or 2, got {0}")]
    InvalidReceiver(u8),

    #[error("dual weights must not both be zero")]
    ZeroWeights,

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    #[error("{0}")]
    Config(String),

    /// The time-sharing split could not meet the fairness target even after clamping.
    #[error("time-sharing split failed fairness check: tau = {tau} s, ratio error = {ratio_error:e}")]
    TimeSharing { tau: f64, ratio_error: f64 },

    #[error("no feasible hover-fly-hover plan; nearest candidate {nearest:?} misses the window by {miss:e} s")]
    NoFeasiblePlan {
        nearest: Option<HoverFlyHoverPlan>,
        miss: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operator is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not unitary (‖U†U − I‖ = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("rotation angle {theta} outside [0, 2π)")]
    AngleOutOfRange { theta: f64 },

    #[error("negative evolution time: t1 = {t1}, t2 = {t2}")]
    NegativeTime { t1: f64, t2: f64 },

    #[error("no tabulated solution for {gate} at global phase {phi}")]
    UnknownCombination { gate: String, phi: f64 },

    #[error("theta = {theta} outside the validated domain [0, π]")]
    ThetaOutOfValidatedDomain { theta: f64 },

    #[error("no feasible point found: {reason}")]
    NoFeasiblePointFound { reason: String },

    #[error("pulse amplitude must be positive, got {omega}")]
    NonpositiveAmplitude { omega: f64 },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

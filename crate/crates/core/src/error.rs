use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("dimension {0} exceeds the dense cap of {cap}", cap = crate::qcore::MAX_DIM)]
    DimensionTooLarge(usize),

    #[error("matrix is not Hermitian (‖H − H†‖_F = {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (‖U†U − I‖_F = {0:.3e})")]
    NotUnitary(f64),

    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("time {t} outside the pulse horizon [0, {horizon}]")]
    TimeOutOfRange { t: f64, horizon: f64 },

    #[error("objective returned a non-finite value {value} at {point:?}")]
    NonFiniteObjective { value: f64, point: Vec<f64> },

    #[error("Lie closure did not converge within depth {0}")]
    Unconverged(usize),

    #[error("propagation failed for coefficients {coefficients:?}: {source}")]
    Propagation {
        coefficients: Vec<f64>,
        #[source]
        source: Box<Error>,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

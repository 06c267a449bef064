use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma function has a pole at x = {0}")]
    GammaPole(f64),
    #[error("{func}: argument {x} outside the domain")]
    Domain { func: &'static str, x: f64 },
    #[error("{func}: overflow at x = {x}")]
    Overflow { func: &'static str, x: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("functions live on different grids")]
    GridMismatch,
    #[error("coupling outside the critical regime sqrt(3)/2 < |nu| < 1: {0}")]
    Regime(String),
    #[error("integrator step underflow near r = {0}")]
    StepUnderflow(f64),
    #[error("unreliable boundary fit: {0}")]
    UnreliableFit(String),
    #[error("degenerate boundary data: both coefficients vanish")]
    DegenerateData,
    #[error("limit did not converge: {0}")]
    NonConvergentLimit(String),
    #[error("routes disagree: {0}")]
    RouteDisagreement(String),
    #[error("extension is not invertible: {0}")]
    NotInvertible(String),
    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by bad user input rather than failed numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParams(_)
                | Error::InvalidRange(_)
                | Error::Regime(_)
                | Error::GridMismatch
                | Error::Malformed(_)
                | Error::NotInvertible(_)
                | Error::Domain { .. }
                | Error::GammaPole(_)
        )
    }
}

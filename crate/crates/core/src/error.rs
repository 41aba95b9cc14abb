use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("level {level} exceeds the exact-arithmetic limit of {limit}")]
    LevelTooLarge { level: usize, limit: usize },

    #[error("level {level} is beyond the coefficient table (max level {max})")]
    LevelBeyondTable { level: usize, max: usize },

    #[error("grid with n_max = {n_max} cannot hold level {j_max} (need n_max >= {needed})")]
    GridTooShort {
        n_max: usize,
        j_max: usize,
        needed: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("continued fraction hit an exact zero denominator at coefficient d_{index}")]
    DegenerateContinuedFraction { index: usize },

    #[error("quadrature did not converge: estimate {estimate}, error {error:e} after {levels} levels")]
    QuadratureFailed {
        estimate: f64,
        error: f64,
        levels: usize,
    },
}

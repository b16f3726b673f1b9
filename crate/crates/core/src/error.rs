use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("temperature {0} is too low to evaluate Boltzmann weights (use a temperature floor)")]
    TemperatureTooLow(f64),

    #[error("parameter `{name}` must be finite (got {value})")]
    NonFiniteParam { name: &'static str, value: f64 },

    #[error("Ising spin must be +1/2 or -1/2 (got {0})")]
    InvalidIsingSpin(f64),

    #[error("density matrix is not positive semidefinite (min eigenvalue {0:e})")]
    PositivityViolation(f64),

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("density matrix trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("state is not Bell-diagonal (structural residual {0:e})")]
    NotBellDiagonal(f64),

    #[error("sweep grid has {points} points, above the cap of {cap}")]
    GridTooLarge { points: u128, cap: u64 },

    #[error("invalid sweep range: {0}")]
    InvalidRange(String),

    #[error("invalid grid specification: {0}")]
    InvalidGrid(String),

    #[error("no bracket: {0}")]
    NoBracket(String),

    #[error("output error: {0}")]
    Io(String),

    #[error("measure stays above the dead threshold over the whole bracket")]
    NoThreshold,
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

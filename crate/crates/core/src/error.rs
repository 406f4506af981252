use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a street needs at least one spot")]
    EmptyStreet,

    #[error("preference vector is empty")]
    NoCars,

    #[error("car {car} prefers spot {pref}, outside 1..={spots}")]
    PreferenceOutOfRange { car: usize, pref: usize, spots: usize },

    #[error("{cars} cars do not fit the street (at most {max} allowed)")]
    TooManyCars { cars: usize, max: usize },

    #[error("car {car} is unlucky but the coin sequence is exhausted")]
    CoinsExhausted { car: usize },

    #[error("{what}: size {size} exceeds the enumeration cap {cap}")]
    SizeLimit { what: &'static str, size: u128, cap: u128 },

    #[error("zero base raised to negative exponent {exp}")]
    ZeroBaseNegativeExponent { exp: i64 },

    #[error("distributions have different support sizes ({left} vs {right})")]
    SupportMismatch { left: usize, right: usize },

    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("identity violated: {0}")]
    IdentityViolated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line frontend.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeLimit { .. } => 3,
            Error::IdentityViolated(_) => 1,
            _ => 2,
        }
    }
}

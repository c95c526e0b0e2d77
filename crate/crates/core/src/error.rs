use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient rings differ: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("leading coefficient at q^{exponent} is not a unit in {ring}")]
    NonUnit { exponent: i64, ring: String },

    #[error("coefficient of q^{exponent} requested but the series is only known below q^{prec}")]
    OutOfPrecision { exponent: i64, prec: i64 },

    #[error("eta prefactor weight {weight} is not divisible by 24")]
    NonIntegralPrefactor { weight: i64 },

    #[error("closed form for mu_{r} needs |c + 11d| < 11^{r} (c + 11d = {weight})")]
    Guard { r: u32, weight: i64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("series of {needed} coefficients exceeds the budget of {budget}")]
    Resource { needed: u128, budget: u128 },
}

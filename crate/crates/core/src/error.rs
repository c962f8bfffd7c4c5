use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("dimension {p}^{exponent} exceeds the limit of {limit}")]
    DimensionTooLarge { p: u64, exponent: u32, limit: u64 },

    #[error("exceptional prime p={p} < n={n}: only primes p >= n are handled by the uniform standard form (exceptional primes are out of scope)")]
    ExceptionalPrime { p: u64, n: usize },

    #[error("nilpotency class n must be at least 2, got {0}")]
    ClassTooSmall(usize),

    #[error("exponent residues belong to different prime powers ({left} vs {right})")]
    ContextMismatch { left: u64, right: u64 },

    #[error("invalid lambda tuple: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration of {tails} tails exceeds the budget of {budget}")]
    BudgetExceeded { tails: String, budget: u64 },

    #[error("orbit-size law violated for tail {tail:?}: orbit has {observed} elements, expected {expected}")]
    OrbitSizeLaw {
        tail: Vec<u64>,
        observed: u64,
        expected: u64,
    },

    #[error("closed form evaluated to the non-integer {0}")]
    NonIntegral(String),

    #[error("rational function is not a power series in t: {0}")]
    NotPowerSeries(String),

    #[error("representation is reducible (commutant dimension {0})")]
    Reducible(usize),
}

use thiserror::Error;

use crate::quadrature::QuadratureResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("n!·[x^{index}] of the generating series is not an integer")]
    IntegralityViolation { index: usize },

    #[error("{what} at index {index} does not reduce to an integer")]
    NonIntegral { what: &'static str, index: usize },

    #[error("{op}: index {index} exceeds the double-precision guard {max}")]
    RangeExceeded {
        op: &'static str,
        index: usize,
        max: usize,
    },

    #[error("contour radius {radius} must lie in (0, pi)")]
    DivergentParameters { radius: f64 },

    #[error("integral diverges: {0}")]
    DivergentIntegral(String),

    #[error("tolerance not reached (best estimate {:e}, error {:e})", .0.value, .0.error_estimate)]
    ToleranceNotReached(Box<QuadratureResult>),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} exceeds the trial-division limit 10000")]
    PrimeTooLarge(u64),

    #[error("p = 2 is rejected by this probe; an odd prime is required")]
    EvenPrimeRejected,

    #[error("n_max = {n_max} is too small for modulus {modulus} (need at least {needed})")]
    InsufficientRange {
        modulus: u64,
        n_max: usize,
        needed: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

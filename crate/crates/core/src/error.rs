use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Simpson panel count must be even and at least 2, got {0}")]
    OddPanels(usize),

    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },

    /// Refinement stopped before the requested tolerance. Carries the best
    /// estimate so callers can still report it.
    #[error(
        "tolerance {tol:e} not reached after {panels} panels \
         (best value {value}, estimated error {est_error:e})"
    )]
    ToleranceNotReached {
        value: f64,
        est_error: f64,
        panels: usize,
        tol: f64,
    },

    #[error("integrand does not decay like |x|^-{exponent} beyond radius {radius}")]
    DecayCheckFailed { radius: f64, exponent: f64 },

    #[error("test function support {support} exceeds the admissible limit {limit}")]
    SupportTooWide { support: f64, limit: f64 },

    #[error("test function support {support} does not match the required support {expected}")]
    SupportMismatch { support: f64, expected: f64 },

    #[error("brute-force evaluation supports i <= 3, got i = {0}")]
    DimensionTooLarge(u32),

    #[error("{0}!! does not fit in 64 bits")]
    Overflow(u32),

    #[error("{operation} is not defined for symmetry group {group}")]
    UnsupportedGroup {
        operation: &'static str,
        group: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures of the numerical policy (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ToleranceNotReached { .. } | Error::DecayCheckFailed { .. } | Error::NonFinite { .. }
        )
    }
}

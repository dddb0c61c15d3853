use thiserror::Error;

/// Errors raised by the p-adic kernels and the series machinery built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{value} is not a p-adic integer for p = {p} (denominator divisible by p)")]
    NotPIntegral { value: String, p: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("precision budget exceeded: need {needed} p-adic digits, have {available}")]
    PrecisionBudget { needed: i64, available: i64 },

    #[error("working precision p^{digits} does not fit in 63 bits for p = {p}")]
    PrecisionTooLarge { p: u64, digits: u32 },

    #[error("Dwork orbit of {value} not periodic within {steps} steps")]
    OrbitBudget { value: String, steps: usize },

    #[error("denominator is not a unit: {0}")]
    NonUnitDenominator(String),

    #[error("special value undefined: [F^({orbit_index})]_{{<p}}(alpha) vanishes mod p")]
    ValueUndefined { orbit_index: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

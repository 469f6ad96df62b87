use thiserror::Error;

/// Errors raised by capacity computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a formula (for example a
    /// G-function argument below 1/4, which signals an unphysical state).
    #[error("domain error in {what}: {value} (must be {bound})")]
    Domain {
        what: &'static str,
        value: f64,
        bound: &'static str,
    },

    /// A parameter violates a type invariant.
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The constraint cannot be met by any admissible input.
    #[error("infeasible constraint: {0}")]
    Infeasible(String),

    /// The closed form does not cover these parameters.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    /// A Gram or overlap spectrum has a significantly negative eigenvalue.
    #[error("invalid spectrum: eigenvalue {0} is negative")]
    Spectrum(f64),

    #[error("no convergence after {iters} iterations (last change {last_change:e})")]
    NonConvergence { iters: usize, last_change: f64 },

    /// No multiplier inside the configured bracket meets the energy budget.
    #[error("multiplier bracket [{lo}, {hi}] cannot meet budget {budget} (mean at hi = {mean_at_hi})")]
    InfeasibleBracket {
        lo: f64,
        hi: f64,
        budget: f64,
        mean_at_hi: f64,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

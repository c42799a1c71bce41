//! Crate-wide error type.
//!
//! All fallible operations return [`Result`].  Errors carry enough context to
//! distinguish construction-time parameter violations from runtime numerical
//! failures (series divergence, step-size underflow, quadrature stagnation),
//! because the two are handled differently at the CLI boundary.

use thiserror::Error;

/// Errors produced by construction, evaluation, and integration routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor was handed values violating a documented invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The Fuchs relation `u + v + w = a + b + 1` fails beyond tolerance.
    #[error("Fuchs relation violated: |u+v+w-a-b-1| = {residual:.3e} > 1e-12")]
    FuchsViolation { residual: f64 },

    /// A coefficient recursion hit a zero denominator (e.g. `u = 0`, `c = 0`,
    /// or `u` a negative integer).
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    /// The requested evaluation point lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A power series failed to meet tolerance within the term cap.
    #[error("series did not converge in {terms_used} terms (relative tail {tail_estimate:.3e})")]
    SeriesDivergence { terms_used: usize, tail_estimate: f64 },

    /// Evaluation at or too near a pole of the function.
    #[error("pole: {0}")]
    Pole(String),

    /// The Gauss summation formula at z = 1 requires `Re(c-a-b) > 0`.
    #[error("hypergeometric series diverges at z = 1: Re(c-a-b) = {re_cab:.3e} <= 0")]
    GaussDivergence { re_cab: f64 },

    /// Adaptive step-size control underflowed near a singular point.
    #[error("step size underflow at t = {reached:.12e}")]
    StepUnderflow { reached: f64 },

    /// The integrator exhausted its step budget.
    #[error("integration exceeded {max_steps} steps at t = {reached:.12e}")]
    MaxSteps { max_steps: usize, reached: f64 },

    /// Adaptive quadrature failed to meet tolerance; carries the best estimate.
    #[error("quadrature did not converge: best estimate {best:.12e} (error estimate {error_estimate:.3e})")]
    QuadratureNonConvergence { best: f64, error_estimate: f64 },

    /// The operation is not defined for the given pulse kind or parameters.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

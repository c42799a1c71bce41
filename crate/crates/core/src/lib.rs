//! Exactly solvable two-level-atom (TLA) pulse families.
//!
//! This crate evaluates the closed-form amplitude solutions of the driven
//! two-level atom for pulse envelopes whose amplitude equations reduce, under
//! the monotone phase map `2τ = ln[φ^μ / (1-φ)^{μ+λ}]`, to Heun, confluent
//! Heun, or Gauss hypergeometric equations.  It provides:
//!
//! * [`specfun`] — the special functions the solutions are written in: Heun
//!   local solutions and their analytic continuation, confluent Heun
//!   solutions, Gauss ₂F₁, complex log-gamma, and Bessel J₀/J₁;
//! * [`pulses`] — the solvable pulse envelopes (general Heun and confluent
//!   families plus the named sech-class shapes) and the phase map;
//! * [`dynamics`] — a reference adaptive Runge–Kutta integrator for the
//!   amplitude equations, a Riccati cross-oracle, and the analytic solutions,
//!   so the two can be compared pointwise;
//! * [`xuv`] — order-of-magnitude estimates for coherence-brightened XUV
//!   emission: signal Rabi frequency, pulse energy, coherence lifetime, and
//!   the Bessel-function solution of the linearized propagation equation.
//!
//! All dynamics are computed in dimensionless form: time `τ = αt`, detuning
//! `β = Δ/α`, peak Rabi frequency `γ = Ω₀/α`.  Physical units appear only in
//! the [`xuv`] module, which documents its unit conventions explicitly.

// Validation deliberately writes `!(x > 0.0)` so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod ode;
pub mod pulses;
pub mod quad;
pub mod series;
pub mod specfun;
pub mod xuv;

pub use error::{Error, Result};

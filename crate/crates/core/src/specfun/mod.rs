//! Special-function evaluation: Heun local solutions and their analytic
//! continuation, confluent Heun solutions, the Gauss hypergeometric function
//! ₂F₁, complex log-gamma, and Bessel functions J₀/J₁.
//!
//! All evaluators are pure functions built on the shared power-series driver
//! in [`crate::series`]; continuation past a series' convergence disk marches
//! the defining ODE with the adaptive integrator in [`crate::ode`].

mod bessel;
mod confluent;
mod gamma;
mod heun;
mod hyp2f1;

pub use bessel::{bessel_j, bessel_j0, bessel_j1};
pub use confluent::{
    confluent_branch_transform, confluent_heun_continue, confluent_heun_local, ConfluentHeunParams,
};
pub use gamma::{gamma, log_gamma};
pub use heun::{
    heun_branch_transform, heun_coefficients, heun_continue, heun_local, CoefficientTable,
    HeunParams,
};
pub use hyp2f1::{hyp2f1, hyp2f1_at_one};

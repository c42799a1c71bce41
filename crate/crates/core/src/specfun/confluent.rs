//! Confluent Heun solutions: Frobenius series at φ = 0 and ODE continuation.
//!
//! The non-symmetric confluent form handled here, with regular singular
//! points {0, 1} and an irregular point at ∞, is
//!
//! ```text
//! y'' + (u/φ + v/(φ−1)) y' + (p·φ + q) y / (φ(φ−1)) = 0
//! ```
//!
//! The analytic branch at the origin (normalized to 1) has Taylor
//! coefficients obeying the three-term recursion
//!
//! ```text
//! (n+1)(n+u) s_{n+1} = [n(n−1+u+v) + q] s_n + p s_{n−1}
//! ```
//!
//! with s₀ = 1, s₁ = q/u, and convergence radius 1.  For p = 0 the recursion
//! collapses to two terms and the branch reduces to a Gauss hypergeometric
//! function ₂F₁(A, B; u; φ) with A+B = u+v−1 and A·B = q.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ode::{integrate, OdeOptions};
use crate::series::{sum_power_series, SeriesResult};

const CONTINUATION_SEED_Z: f64 = 0.5;
const NEAR_ONE_PROXY: f64 = 1.0 - 1e-8;
/// Point past which continuation switches to the stretched variable
/// s = −ln(1−z), which keeps step sizes bounded as z → 1.
const LOG_LEG_START: f64 = 0.9;

/// The four parameters (u, v, p, q) of the confluent equation above.
/// No intrinsic constraint ties them together; finiteness is enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfluentHeunParams {
    pub u: Complex64,
    pub v: Complex64,
    pub p: Complex64,
    pub q: Complex64,
}

impl ConfluentHeunParams {
    pub fn new(u: Complex64, v: Complex64, p: Complex64, q: Complex64) -> Result<Self> {
        for (name, value) in [("u", u), ("v", v), ("p", p), ("q", q)] {
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "confluent Heun parameter {name} must be finite, got {value}"
                )));
            }
        }
        Ok(ConfluentHeunParams { u, v, p, q })
    }

    /// Right-hand side of the confluent equation as a first-order system in
    /// (y, y′).  Valid away from φ ∈ {0, 1}.
    pub fn ode_rhs(&self, z: f64, state: &[Complex64; 2]) -> [Complex64; 2] {
        let zc = Complex64::new(z, 0.0);
        let y = state[0];
        let dy = state[1];
        let p_coeff = self.u / zc + self.v / (zc - 1.0);
        let q_coeff = (self.p * zc + self.q) / (zc * (zc - 1.0));
        [dy, -p_coeff * dy - q_coeff * y]
    }

    /// Right-hand side of the same system in the stretched variable
    /// s = −ln(1−z).  With e = e^{−s} and z = 1 − e the factor z − 1 = −e
    /// cancels analytically, so every term stays regular as z → 1:
    /// d/ds [y, y′] = [e·y′, (v − e·u/z)·y′ + ((p·z + q)/z)·y].
    fn stretched_rhs(&self, s: f64, state: &[Complex64; 2]) -> [Complex64; 2] {
        let e = (-s).exp();
        let z = Complex64::new(1.0 - e, 0.0);
        let y = state[0];
        let dy = state[1];
        [
            e * dy,
            (self.v - e * self.u / z) * dy + ((self.p * z + self.q) / z) * y,
        ]
    }
}

fn coefficient_stepper(
    params: &ConfluentHeunParams,
) -> impl FnMut(usize, Complex64, Complex64) -> Result<Complex64> {
    let ConfluentHeunParams { u, v, p, q } = *params;
    move |n, sn, snm1| {
        let nf = n as f64;
        let denom = (nf + 1.0) * (u + nf);
        if denom.norm() == 0.0 {
            return Err(Error::DegenerateParameters(format!(
                "zero denominator in the confluent recursion at n = {n} (u = {u})"
            )));
        }
        let drive = nf * (u + v + (nf - 1.0)) + q;
        Ok((drive * sn + p * snm1) / denom)
    }
}

/// Frobenius-series value and derivative of the analytic branch at `z`,
/// requiring |z| < 1.
pub fn confluent_heun_local(
    params: &ConfluentHeunParams,
    z: Complex64,
    tol: f64,
) -> Result<SeriesResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "confluent_heun_local tolerance must be positive, got {tol}"
        )));
    }
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "confluent_heun_local requires |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    if params.u == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateParameters(
            "series requires u ≠ 0".to_string(),
        ));
    }
    let mut advance = coefficient_stepper(params);
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    sum_power_series(z, tol, move |n| {
        let out = cur;
        let next = advance(n, cur, prev)?;
        prev = cur;
        cur = next;
        Ok(out)
    })
}

/// Evaluates the analytic branch at a real point beyond the comfortable part
/// of the series disk by seeding from the series at z = 0.5 and marching the
/// ODE to `z_target` (the exact input 1.0 maps to the proxy 1 − 1e−8).
pub fn confluent_heun_continue(
    params: &ConfluentHeunParams,
    z_target: f64,
    tol: f64,
) -> Result<SeriesResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "confluent_heun_continue tolerance must be positive, got {tol}"
        )));
    }
    let z_end = if z_target == 1.0 { NEAR_ONE_PROXY } else { z_target };
    if !(z_end > 0.0) || z_end >= 1.0 {
        return Err(Error::Domain(format!(
            "continuation target must lie in (0, 1), got {z_target}"
        )));
    }
    let seed = confluent_heun_local(params, Complex64::new(CONTINUATION_SEED_Z, 0.0), tol)?;
    if z_end == CONTINUATION_SEED_Z {
        return Ok(seed);
    }
    let opts = OdeOptions {
        rel_tol: tol,
        abs_tol: tol * 1e-3,
        h_min: 1e-12,
        ..OdeOptions::default()
    };
    let mut state = [seed.value, seed.derivative];
    let mut steps = seed.terms_used;
    let mid = z_end.min(LOG_LEG_START);
    if mid != CONTINUATION_SEED_Z {
        let sol = integrate(
            |z, y| params.ode_rhs(z, y),
            CONTINUATION_SEED_Z,
            mid,
            state,
            &opts,
            None,
        )?;
        state = sol.y_end;
        steps += sol.steps;
    }
    if z_end > mid {
        let sol = integrate(
            |s, y| params.stretched_rhs(s, y),
            -(1.0 - mid).ln(),
            -(1.0 - z_end).ln(),
            state,
            &opts,
            None,
        )?;
        state = sol.y_end;
        steps += sol.steps;
    }
    Ok(SeriesResult {
        value: state[0],
        derivative: state[1],
        terms_used: steps,
        tail_estimate: seed.tail_estimate,
        converged: true,
    })
}

/// Parameters of the exponent-(1−u) Frobenius branch at the origin: if the
/// branch is written φ^{1−u}·g(φ), then g solves the confluent equation with
/// u* = 2−u, v* = v, p* = p, q* = q + v(1−u).
pub fn confluent_branch_transform(params: &ConfluentHeunParams) -> Result<ConfluentHeunParams> {
    let one = Complex64::new(1.0, 0.0);
    let shift = one - params.u;
    ConfluentHeunParams::new(
        one + shift,
        params.v,
        params.p,
        params.q + params.v * shift,
    )
}

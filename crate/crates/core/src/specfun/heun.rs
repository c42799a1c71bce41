//! Heun local solutions: Frobenius series at φ = 0 and ODE continuation.
//!
//! The equation handled here is the Fuchsian form with regular singular
//! points {0, 1, c, ∞}:
//!
//! ```text
//! y'' + (u/φ + v/(φ−1) + w/(φ−c)) y' + (a·b·φ − q) y / (φ(φ−1)(φ−c)) = 0
//! ```
//!
//! The analytic branch at the origin, normalized to y(0) = 1, has Taylor
//! coefficients obeying a three-term recursion; its convergence radius is
//! min(1, |c|).  Values beyond the disk are obtained by marching the ODE
//! along the real segment from a seed point inside the disk.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ode::{integrate, OdeOptions};
use crate::series::{sum_power_series, SeriesResult};

/// Fraction of the convergence radius at which continuation seeds its series.
const CONTINUATION_SEED_FRACTION: f64 = 0.5;
/// Proxy target used when continuation is asked for the singular point 1.
const NEAR_ONE_PROXY: f64 = 1.0 - 1e-8;
/// Point past which continuation switches to the stretched variable
/// s = −ln(1−z), which keeps step sizes bounded as z → 1.
const LOG_LEG_START: f64 = 0.9;

/// The seven parameters of the Heun equation.  `c` is the third finite
/// singular point and is real in this crate's applications.
///
/// Invariants enforced at construction: the Fuchs relation
/// u + v + w = a + b + 1 to within 1e−12, and (for [`HeunParams::new`])
/// c ∉ {0, 1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: f64,
    pub q: Complex64,
    pub u: Complex64,
    pub v: Complex64,
    pub w: Complex64,
}

impl HeunParams {
    /// Constructs a parameter set, rejecting Fuchs violations and the merged
    /// singular-point values c ∈ {0, 1}.
    pub fn new(
        a: Complex64,
        b: Complex64,
        c: f64,
        q: Complex64,
        u: Complex64,
        v: Complex64,
        w: Complex64,
    ) -> Result<Self> {
        let params = Self::new_degenerate(a, b, c, q, u, v, w)?;
        if params.c == 0.0 || params.c == 1.0 {
            return Err(Error::InvalidParameter(format!(
                "singular point c must differ from 0 and 1, got c = {c}"
            )));
        }
        Ok(params)
    }

    /// Constructs a parameter set allowing c ∈ {0, 1} (merged singular
    /// points, used by the hypergeometric reduction identities).  The Fuchs
    /// relation is still enforced.
    pub fn new_degenerate(
        a: Complex64,
        b: Complex64,
        c: f64,
        q: Complex64,
        u: Complex64,
        v: Complex64,
        w: Complex64,
    ) -> Result<Self> {
        for (name, value) in [("a", a), ("b", b), ("q", q), ("u", u), ("v", v), ("w", w)] {
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "Heun parameter {name} must be finite, got {value}"
                )));
            }
        }
        if !c.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Heun parameter c must be finite, got {c}"
            )));
        }
        let params = HeunParams { a, b, c, q, u, v, w };
        let residual = params.fuchs_residual();
        if residual > 1e-12 {
            return Err(Error::FuchsViolation { residual });
        }
        Ok(params)
    }

    /// |u + v + w − a − b − 1|, which must vanish for a Fuchsian equation
    /// with this singularity structure.
    pub fn fuchs_residual(&self) -> f64 {
        (self.u + self.v + self.w - self.a - self.b - Complex64::new(1.0, 0.0)).norm()
    }

    /// Convergence radius of the Frobenius series at the origin.
    pub fn radius(&self) -> f64 {
        self.c.abs().min(1.0)
    }

    /// Right-hand side of the Heun equation as a first-order system in
    /// (y, y′).  Valid away from the singular points.
    pub fn ode_rhs(&self, z: f64, state: &[Complex64; 2]) -> [Complex64; 2] {
        let zc = Complex64::new(z, 0.0);
        let y = state[0];
        let dy = state[1];
        let p_coeff = self.u / zc + self.v / (zc - 1.0) + self.w / (zc - self.c);
        let q_coeff = (self.a * self.b * zc - self.q) / (zc * (zc - 1.0) * (zc - self.c));
        [dy, -p_coeff * dy - q_coeff * y]
    }

    /// Right-hand side of the same system in the stretched variable
    /// s = −ln(1−z).  With e = e^{−s} and z = 1 − e the factor z − 1 = −e
    /// cancels analytically, so every term stays regular as z → 1 (for c
    /// bounded away from 1):
    /// d/ds [y, y′] = [e·y′, (v − e·u/z − e·w/(z−c))·y′
    ///                       + ((a·b·z − q)/(z(z−c)))·y].
    fn stretched_rhs(&self, s: f64, state: &[Complex64; 2]) -> [Complex64; 2] {
        let e = (-s).exp();
        let z = Complex64::new(1.0 - e, 0.0);
        let y = state[0];
        let dy = state[1];
        let zmc = z - self.c;
        [
            e * dy,
            (self.v - e * self.u / z - e * self.w / zmc) * dy
                + ((self.a * self.b * z - self.q) / (z * zmc)) * y,
        ]
    }
}

/// Taylor coefficients s₀ … s_n of the analytic branch at φ = 0.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub s: Vec<Complex64>,
}

/// Generates s₀ … s_n by the forward three-term recursion
///
/// ```text
/// c (j+1)(j+u) s_{j+1} = { j[(j−1+u)(1+c) + v·c + w] + q } s_j
///                        − (j−1+a)(j−1+b) s_{j−1}
/// ```
///
/// with s₀ = 1 and s₁ = q/(u·c).
pub fn heun_coefficients(params: &HeunParams, n: usize) -> Result<CoefficientTable> {
    if params.u == Complex64::new(0.0, 0.0) || params.c == 0.0 {
        return Err(Error::DegenerateParameters(format!(
            "coefficient recursion requires u ≠ 0 and c ≠ 0 (u = {}, c = {})",
            params.u, params.c
        )));
    }
    let mut s = Vec::with_capacity(n + 1);
    s.push(Complex64::new(1.0, 0.0));
    if n == 0 {
        return Ok(CoefficientTable { s });
    }
    let mut advance = coefficient_stepper(params);
    for j in 0..n {
        s.push(advance(j, s[j], if j == 0 { Complex64::new(0.0, 0.0) } else { s[j - 1] })?);
    }
    Ok(CoefficientTable { s })
}

/// Returns a closure computing s_{j+1} from (j, s_j, s_{j−1}).
fn coefficient_stepper(
    params: &HeunParams,
) -> impl FnMut(usize, Complex64, Complex64) -> Result<Complex64> {
    let HeunParams { a, b, c, q, u, v, w } = *params;
    move |j, sj, sjm1| {
        let jf = j as f64;
        let denom = c * (jf + 1.0) * (u + jf);
        if denom.norm() == 0.0 {
            return Err(Error::DegenerateParameters(format!(
                "zero denominator in the Heun recursion at j = {j} (u = {u}, c = {c})"
            )));
        }
        let drive = jf * ((u + (jf - 1.0)) * (1.0 + c) + v * c + w) + q;
        let pull = (a + (jf - 1.0)) * (b + (jf - 1.0));
        Ok((drive * sj - pull * sjm1) / denom)
    }
}

/// Frobenius-series value and derivative of the analytic branch at `z`,
/// requiring |z| < min(1, |c|).
pub fn heun_local(params: &HeunParams, z: Complex64, tol: f64) -> Result<SeriesResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "heun_local tolerance must be positive, got {tol}"
        )));
    }
    let radius = params.radius();
    if z.norm() >= radius {
        return Err(Error::Domain(format!(
            "heun_local requires |z| < {radius}, got |z| = {}",
            z.norm()
        )));
    }
    if params.u == Complex64::new(0.0, 0.0) || params.c == 0.0 {
        return Err(Error::DegenerateParameters(format!(
            "series requires u ≠ 0 and c ≠ 0 (u = {}, c = {})",
            params.u, params.c
        )));
    }
    let mut advance = coefficient_stepper(params);
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    sum_power_series(z, tol, move |j| {
        let out = cur;
        let next = advance(j, cur, prev)?;
        prev = cur;
        cur = next;
        Ok(out)
    })
}

/// Evaluates the same analytic branch at a real point beyond the series
/// disk by seeding (value, derivative) from the series at
/// `0.5·min(1, |c|)` and marching the Heun ODE to `z_target`.
///
/// `z_target` must lie in (0, 1) after mapping the exact input 1.0 to the
/// proxy point 1 − 1e−8; a target past the singular point at 1 is rejected.
pub fn heun_continue(params: &HeunParams, z_target: f64, tol: f64) -> Result<SeriesResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "heun_continue tolerance must be positive, got {tol}"
        )));
    }
    let z_end = if z_target == 1.0 { NEAR_ONE_PROXY } else { z_target };
    if !(z_end > 0.0) || z_end >= 1.0 || (params.c > 0.0 && z_end >= params.c) {
        return Err(Error::Domain(format!(
            "continuation target must lie in (0, 1) strictly below c (got {z_target}, c = {})",
            params.c
        )));
    }
    let seed_z = CONTINUATION_SEED_FRACTION * params.radius();
    let seed = heun_local(params, Complex64::new(seed_z, 0.0), tol)?;
    if z_end == seed_z {
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
    if mid != seed_z {
        let sol = integrate(|z, y| params.ode_rhs(z, y), seed_z, mid, state, &opts, None)?;
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

/// Parameters of the second Frobenius branch at the origin.
///
/// If y(φ) solves the Heun equation for `params`, then the exponent-(1−u)
/// branch can be written φ^{1−u}·g(φ) where g solves the Heun equation with
/// the returned parameter set (same c):
/// u* = 2−u, v* = v, w* = w, a* = a+1−u, b* = b+1−u,
/// q* = q + (1−u)(v·c + w).
pub fn heun_branch_transform(params: &HeunParams) -> Result<HeunParams> {
    let one = Complex64::new(1.0, 0.0);
    let shift = one - params.u;
    HeunParams::new_degenerate(
        params.a + shift,
        params.b + shift,
        params.c,
        params.q + shift * (params.v * params.c + params.w),
        one + shift,
        params.v,
        params.w,
    )
}

//! Pulse envelopes and the phase map linking time to the Heun variable.
//!
//! The driven two-level problem is posed in dimensionless variables: time
//! τ = αt, detuning β = Δ/α, peak Rabi rate γ = Ω₀/α.  A monotone map
//! φ(τ) ∈ (0, 1) defined by 2τ = ln[φ^μ / (1−φ)^{μ+λ}] turns the amplitude
//! equation into an equation of Heun class; equating coefficients then fixes
//! the family of envelopes
//!
//! ```text
//! Ω(τ) = √[4φ(1−φ)(ab·φ − q)/(c − φ)] / (μ + λφ)      (Heun family)
//! Ω(τ) = √[4φ(φ−1)(p·φ + q)] / (μ + λφ)               (confluent family)
//! ```
//!
//! together with a set of named closed-form envelopes (sech and its
//! square-root-of-tanh relatives, a rectangular box, and a smooth box).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::integrate_adaptive;
use crate::specfun::{ConfluentHeunParams, HeunParams};

/// Dimensionless drive parameters: τ = αt, β = Δ/α, γ = Ω₀/α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    /// Inverse time scale α > 0 (rad/time); converts physical time to τ.
    pub alpha: f64,
    /// Dimensionless detuning β = Δ/α.
    pub beta: f64,
    /// Dimensionless peak Rabi rate γ = Ω₀/α ≥ 0.
    pub gamma: f64,
}

impl DimensionlessParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        if !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite, got {beta}"
            )));
        }
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gamma must be non-negative and finite, got {gamma}"
            )));
        }
        Ok(DimensionlessParams { alpha, beta, gamma })
    }

    /// Builds the dimensionless set from carrier-unit inputs (Ω₀, α, Δ all in
    /// the same frequency unit): γ = Ω₀/α, β = Δ/α.
    pub fn from_physical(omega0: f64, alpha: f64, delta: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        Self::new(alpha, delta / alpha, omega0 / alpha)
    }
}

/// The monotone change of variables 2τ = ln[φ^μ / (1−φ)^{μ+λ}].
///
/// μ > 0 and λ/μ > −1 make τ(φ) a strictly increasing bijection from (0, 1)
/// onto the whole real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseMap {
    mu: f64,
    lambda: f64,
}

impl PhaseMap {
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "phase map requires mu > 0, got {mu}"
            )));
        }
        if !lambda.is_finite() || !(lambda / mu > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "phase map requires lambda/mu > -1, got lambda = {lambda}, mu = {mu}"
            )));
        }
        Ok(PhaseMap { mu, lambda })
    }

    /// The symmetric map μ = 1, λ = 0, for which φ = (1 + tanh τ)/2.
    pub fn symmetric() -> Self {
        PhaseMap { mu: 1.0, lambda: 0.0 }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Result of inverting the phase map at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    /// The phase value φ(τ).
    pub phi: f64,
    /// True when |τ| was extreme enough that φ is reported directly from its
    /// boundary asymptote (within 1e−16 of 0 or 1).
    pub saturated: bool,
}

/// τ(φ) = ½ ln[φ^μ / (1−φ)^{μ+λ}] for φ strictly inside (0, 1).
pub fn time_of_phase(map: &PhaseMap, phi: f64) -> Result<f64> {
    if !(phi > 0.0 && phi < 1.0) {
        return Err(Error::Domain(format!(
            "time_of_phase requires 0 < phi < 1 (the boundary is at infinite time), got {phi}"
        )));
    }
    Ok(0.5 * (map.mu * phi.ln() - (map.mu + map.lambda) * (1.0 - phi).ln()))
}

/// The unique φ ∈ (0, 1) with τ(φ) = τ, located to |Δτ| ≤ tol by bracketed
/// bisection refined with safeguarded Newton steps.
///
/// Extreme |τ| saturates: once the boundary asymptote φ ≈ e^{2τ/μ} (left) or
/// 1 − φ ≈ e^{−2τ/(μ+λ)} (right) falls below 1e−16, that asymptote is
/// returned directly with the `saturated` flag set.
pub fn phase_of_time(map: &PhaseMap, tau: f64, tol: f64) -> PhasePoint {
    let tol = tol.abs().max(1e-15);
    let mu = map.mu;
    let lam = map.lambda;

    if tau <= 0.0 {
        let lo_asym = (2.0 * tau / mu).exp();
        if lo_asym <= 1e-16 {
            return PhasePoint { phi: lo_asym, saturated: true };
        }
    } else {
        let hi_asym = (-2.0 * tau / (mu + lam)).exp();
        if hi_asym <= 1e-16 {
            return PhasePoint { phi: 1.0 - hi_asym, saturated: true };
        }
    }

    let mut a = 1e-300;
    let mut b = 1.0 - 1e-16;
    let mut x = if tau <= 0.0 {
        (2.0 * tau / mu).exp().min(0.5)
    } else {
        (1.0 - (-2.0 * tau / (mu + lam)).exp()).max(0.5)
    };
    if !(x > a && x < b) {
        x = 0.5;
    }
    for _ in 0..200 {
        let fx = 0.5 * (mu * x.ln() - (mu + lam) * (1.0 - x).ln()) - tau;
        if fx.abs() <= tol {
            return PhasePoint { phi: x, saturated: false };
        }
        if fx > 0.0 {
            b = x;
        } else {
            a = x;
        }
        let slope = (mu + lam * x) / (2.0 * x * (1.0 - x));
        let newton = x - fx / slope;
        x = if newton > a && newton < b { newton } else { 0.5 * (a + b) };
    }
    PhasePoint { phi: x, saturated: false }
}

/// The supported envelope shapes.  Family kinds carry their defining
/// coefficients and phase map; named kinds are fixed closed forms in τ
/// (scaled by γ) with the symmetric phase map μ = 1, λ = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseKind {
    /// Ω = √[4φ(1−φ)(ab·φ − q)/(c − φ)]/(μ+λφ); requires c > 1 and a
    /// non-negative radicand throughout (0, 1).
    HeunFamily { ab: f64, q: f64, c: f64, map: PhaseMap },
    /// Ω = √[4φ(φ−1)(p·φ + q)]/(μ+λφ); requires a non-negative radicand.
    ConfluentFamily { p: f64, q: f64, map: PhaseMap },
    /// Ω = γ sech τ.
    Sech,
    /// Ω = γ sech τ / √(δ − tanh τ), δ > 1.
    OmegaDelta { delta: f64 },
    /// Ω = γ √(1 + tanh τ) — saturating, does not vanish at late times.
    OmegaOne,
    /// Ω = γ sech τ · √(1 + tanh τ).
    OmegaPlus,
    /// Ω = γ sech τ · √(1 − tanh τ).
    OmegaMinus,
    /// Ω = γ on 0 < τ < α·t₀, zero elsewhere; t₀ is the physical width.
    Box { t0: f64 },
    /// Same envelope as [`PulseKind::OmegaDelta`]; δ − 1 → 0 approaches a
    /// rectangular box of height γ√2 and half-duration ln(2/(δ−1))/2.
    SmoothBox { delta: f64 },
}

/// A validated envelope: shape plus dimensionless drive parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    kind: PulseKind,
    params: DimensionlessParams,
}

const RADICAND_GRID: usize = 1024;

impl PulseSpec {
    /// Validates shape-specific invariants (radicand sign on a 1024-point φ
    /// grid plus the endpoint limits, δ > 1, t₀ > 0) and freezes the spec.
    pub fn new(kind: PulseKind, params: DimensionlessParams) -> Result<Self> {
        match kind {
            PulseKind::HeunFamily { ab, q, c, .. } => {
                if !(c > 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "heun_family requires c > 1, got {c}"
                    )));
                }
                let scale = 1.0 + ab.abs() + q.abs();
                // Endpoint limits: radicand ~ 4φ(−q)/c at 0 and
                // ~ 4(1−φ)(ab−q)/(c−1) at 1.
                if -q < -1e-12 * scale || ab - q < -1e-12 * scale {
                    return Err(Error::InvalidParameter(format!(
                        "heun_family radicand is negative near an endpoint (ab = {ab}, q = {q})"
                    )));
                }
                for i in 1..RADICAND_GRID {
                    let phi = i as f64 / RADICAND_GRID as f64;
                    let rad = 4.0 * phi * (1.0 - phi) * (ab * phi - q) / (c - phi);
                    if rad < -1e-12 * scale {
                        return Err(Error::InvalidParameter(format!(
                            "heun_family radicand is negative at phi = {phi} (ab = {ab}, q = {q}, c = {c})"
                        )));
                    }
                }
            }
            PulseKind::ConfluentFamily { p, q, .. } => {
                let scale = 1.0 + p.abs() + q.abs();
                if -q < -1e-12 * scale || -(p + q) < -1e-12 * scale {
                    return Err(Error::InvalidParameter(format!(
                        "confluent_family radicand is negative near an endpoint (p = {p}, q = {q})"
                    )));
                }
                for i in 1..RADICAND_GRID {
                    let phi = i as f64 / RADICAND_GRID as f64;
                    let rad = 4.0 * phi * (phi - 1.0) * (p * phi + q);
                    if rad < -1e-12 * scale {
                        return Err(Error::InvalidParameter(format!(
                            "confluent_family radicand is negative at phi = {phi} (p = {p}, q = {q})"
                        )));
                    }
                }
            }
            PulseKind::OmegaDelta { delta } | PulseKind::SmoothBox { delta } => {
                if !(delta > 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "delta must exceed 1, got {delta}"
                    )));
                }
            }
            PulseKind::Box { t0 } => {
                if !(t0 > 0.0) || !t0.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "box width t0 must be positive, got {t0}"
                    )));
                }
            }
            PulseKind::Sech | PulseKind::OmegaOne | PulseKind::OmegaPlus
            | PulseKind::OmegaMinus => {}
        }
        Ok(PulseSpec { kind, params })
    }

    pub fn kind(&self) -> &PulseKind {
        &self.kind
    }

    pub fn params(&self) -> &DimensionlessParams {
        &self.params
    }

    /// The phase map under which this spec's amplitude equation becomes a
    /// Heun-class equation: the family's own map, or the symmetric map for
    /// the named shapes.  The box pulse has none.
    pub fn phase_map(&self) -> Option<PhaseMap> {
        match self.kind {
            PulseKind::HeunFamily { map, .. } | PulseKind::ConfluentFamily { map, .. } => Some(map),
            PulseKind::Box { .. } => None,
            _ => Some(PhaseMap::symmetric()),
        }
    }
}

fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

/// Evaluates a named (closed-form) envelope at dimensionless time τ.
pub fn omega_named(spec: &PulseSpec, tau: f64) -> Result<f64> {
    let g = spec.params.gamma;
    match spec.kind {
        PulseKind::Sech => Ok(g * sech(tau)),
        PulseKind::OmegaDelta { delta } | PulseKind::SmoothBox { delta } => {
            Ok(g * sech(tau) / (delta - tau.tanh()).sqrt())
        }
        PulseKind::OmegaOne => Ok(g * (1.0 + tau.tanh()).sqrt()),
        PulseKind::OmegaPlus => Ok(g * sech(tau) * (1.0 + tau.tanh()).sqrt()),
        PulseKind::OmegaMinus => Ok(g * sech(tau) * (1.0 - tau.tanh()).sqrt()),
        PulseKind::Box { t0 } => {
            let width = spec.params.alpha * t0;
            Ok(if tau > 0.0 && tau < width { g } else { 0.0 })
        }
        PulseKind::HeunFamily { .. } | PulseKind::ConfluentFamily { .. } => {
            Err(Error::InvalidParameter(
                "omega_named requires a named pulse kind, not a family kind".to_string(),
            ))
        }
    }
}

fn heun_family_radicand(ab: f64, q: f64, c: f64, phi: f64) -> f64 {
    4.0 * phi * (1.0 - phi) * (ab * phi - q) / (c - phi)
}

fn confluent_family_radicand(p: f64, q: f64, phi: f64) -> f64 {
    4.0 * phi * (phi - 1.0) * (p * phi + q)
}

/// Ω(τ) for a general Heun-family spec.
pub fn omega_heun_family(spec: &PulseSpec, tau: f64) -> Result<f64> {
    let PulseKind::HeunFamily { ab, q, c, map } = spec.kind else {
        return Err(Error::InvalidParameter(
            "omega_heun_family requires a heun_family spec".to_string(),
        ));
    };
    let phi = phase_of_time(&map, tau, 1e-13).phi;
    if phi <= 0.0 || phi >= 1.0 {
        return Ok(0.0);
    }
    let rad = heun_family_radicand(ab, q, c, phi);
    let scale = 1.0 + ab.abs() + q.abs();
    if rad < -1e-9 * scale {
        return Err(Error::Domain(format!(
            "negative radicand {rad} at phi = {phi}"
        )));
    }
    Ok(rad.max(0.0).sqrt() / (map.mu + map.lambda * phi))
}

/// Ω(τ) for a confluent-family spec.
pub fn omega_confluent_family(spec: &PulseSpec, tau: f64) -> Result<f64> {
    let PulseKind::ConfluentFamily { p, q, map } = spec.kind else {
        return Err(Error::InvalidParameter(
            "omega_confluent_family requires a confluent_family spec".to_string(),
        ));
    };
    let phi = phase_of_time(&map, tau, 1e-13).phi;
    if phi <= 0.0 || phi >= 1.0 {
        return Ok(0.0);
    }
    let rad = confluent_family_radicand(p, q, phi);
    let scale = 1.0 + p.abs() + q.abs();
    if rad < -1e-9 * scale {
        return Err(Error::Domain(format!(
            "negative radicand {rad} at phi = {phi}"
        )));
    }
    Ok(rad.max(0.0).sqrt() / (map.mu + map.lambda * phi))
}

/// Ω(τ) for any spec, dispatching on the kind.
pub fn omega(spec: &PulseSpec, tau: f64) -> Result<f64> {
    match spec.kind {
        PulseKind::HeunFamily { .. } => omega_heun_family(spec, tau),
        PulseKind::ConfluentFamily { .. } => omega_confluent_family(spec, tau),
        _ => omega_named(spec, tau),
    }
}

/// ∫ Ω(τ) dτ over [tau_min, tau_max] by adaptive quadrature to relative
/// tolerance `tol`.  The box pulse integrates exactly as a rectangle.
pub fn pulse_area(spec: &PulseSpec, tau_min: f64, tau_max: f64, tol: f64) -> Result<f64> {
    if !(tau_min < tau_max) {
        return Err(Error::InvalidParameter(format!(
            "pulse_area requires tau_min < tau_max, got [{tau_min}, {tau_max}]"
        )));
    }
    if let PulseKind::Box { t0 } = spec.kind {
        let width = spec.params.alpha * t0;
        let overlap = tau_max.min(width) - tau_min.max(0.0);
        return Ok(spec.params.gamma * overlap.max(0.0));
    }
    integrate_adaptive(|t| omega(spec, t), tau_min, tau_max, tol)
}

/// The ODE parameter set an exactly solvable spec maps to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolvableParams {
    Heun(HeunParams),
    Confluent(ConfluentHeunParams),
}

/// Maps a solvable spec to its Heun or confluent-Heun parameter set.
///
/// The Heun family solves in Heun class only when ab = 0: otherwise the
/// radicand factor (ab·φ − q) vanishes at φ = q/ab, which adds a singular
/// point beyond the four the Heun equation allows.  The confluent family
/// solves only on the branches q = 0, p = 0, or p = −q for the analogous
/// reason.  The box pulse has an elementary closed-form solution and is not
/// mapped here; the envelope that does not vanish as τ → +∞ (omega_one)
/// still maps (its equation is of confluent class with p = 0).
pub fn heun_params_for(spec: &PulseSpec) -> Result<SolvableParams> {
    let beta = spec.params.beta;
    let g = spec.params.gamma;
    let i = Complex64::new(0.0, 1.0);
    let half = Complex64::new(0.5, 0.0);
    match spec.kind {
        PulseKind::OmegaDelta { delta } | PulseKind::SmoothBox { delta } => {
            let c = 0.5 * (delta + 1.0);
            Ok(SolvableParams::Heun(HeunParams::new(
                Complex64::new(0.0, 0.0),
                half,
                c,
                Complex64::new(-0.5 * g * g, 0.0),
                half - i * (0.5 * beta),
                half + i * (0.5 * beta),
                half,
            )?))
        }
        PulseKind::Sech => Ok(SolvableParams::Confluent(ConfluentHeunParams::new(
            half - i * (0.5 * beta),
            half + i * (0.5 * beta),
            Complex64::new(0.0, 0.0),
            Complex64::new(-g * g, 0.0),
        )?)),
        PulseKind::OmegaOne => Ok(SolvableParams::Confluent(ConfluentHeunParams::new(
            half - i * (0.5 * beta),
            Complex64::new(1.0, 0.5 * beta),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5 * g * g, 0.0),
        )?)),
        PulseKind::OmegaPlus => Ok(SolvableParams::Confluent(ConfluentHeunParams::new(
            -i * (0.5 * beta),
            half + i * (0.5 * beta),
            Complex64::new(-2.0 * g * g, 0.0),
            Complex64::new(0.0, 0.0),
        )?)),
        PulseKind::OmegaMinus => Ok(SolvableParams::Confluent(ConfluentHeunParams::new(
            half - i * (0.5 * beta),
            i * (0.5 * beta),
            Complex64::new(2.0 * g * g, 0.0),
            Complex64::new(-2.0 * g * g, 0.0),
        )?)),
        PulseKind::HeunFamily { ab, q, c, map } => {
            if ab != 0.0 {
                return Err(Error::Unsupported(format!(
                    "heun_family with ab = {ab} ≠ 0: the radicand factor vanishes at phi = q/ab, \
                     adding a singular point beyond the Heun class"
                )));
            }
            let mu = map.mu();
            let lam = map.lambda();
            Ok(SolvableParams::Heun(HeunParams::new(
                Complex64::new(0.0, 0.0),
                half + i * (0.5 * beta * lam),
                c,
                Complex64::new(q, 0.0),
                half - i * (0.5 * beta * mu),
                half + i * (0.5 * beta * (lam + mu)),
                half,
            )?))
        }
        PulseKind::ConfluentFamily { p, q, map } => {
            let q_zero = q == 0.0;
            let p_zero = p == 0.0;
            let pq_zero = p + q == 0.0;
            if !(q_zero || p_zero || pq_zero) {
                return Err(Error::Unsupported(format!(
                    "confluent_family with p = {p}, q = {q}: the radicand factor vanishes at \
                     phi = -q/p, adding a singular point; solvable branches are q = 0, p = 0, \
                     or p = -q"
                )));
            }
            let mu = map.mu();
            let lam = map.lambda();
            // Frobenius exponents of the envelope at the two ends fix the
            // indicial offsets: Ω ~ φ^ρ at 0 (ρ = 1 when q = 0, else ½) and
            // Ω ~ (1−φ)^ρ₁ at 1 (ρ₁ = 1 when p + q = 0, else ½).
            let rho = if q_zero { 1.0 } else { 0.5 };
            let rho1 = if pq_zero { 1.0 } else { 0.5 };
            Ok(SolvableParams::Confluent(ConfluentHeunParams::new(
                Complex64::new(1.0 - rho, -0.5 * beta * mu),
                Complex64::new(1.0 - rho1, 0.5 * beta * (mu + lam)),
                Complex64::new(p, 0.0),
                Complex64::new(q, 0.0),
            )?))
        }
        PulseKind::Box { .. } => Err(Error::Unsupported(
            "the box pulse has an elementary closed-form solution; no Heun-class parameters"
                .to_string(),
        )),
    }
}

/// Leading small-φ behavior of a solvable envelope, Ω ≈ coefficient·φ^ρ.
///
/// Used to fix solution prefactors by matching the perturbative small-time
/// amplitude; ρ is ½ unless the radicand's constant term vanishes (then 1).
pub fn leading_envelope(spec: &PulseSpec) -> Result<(f64, f64)> {
    let g = spec.params.gamma;
    match spec.kind {
        PulseKind::Sech => Ok((0.5, 2.0 * g)),
        PulseKind::OmegaDelta { delta } | PulseKind::SmoothBox { delta } => {
            let c = 0.5 * (delta + 1.0);
            Ok((0.5, g * (2.0 / c).sqrt()))
        }
        PulseKind::OmegaOne => Ok((0.5, g * 2.0_f64.sqrt())),
        PulseKind::OmegaPlus => Ok((1.0, 2.0 * 2.0_f64.sqrt() * g)),
        PulseKind::OmegaMinus => Ok((0.5, 2.0 * 2.0_f64.sqrt() * g)),
        PulseKind::HeunFamily { ab, q, c, map } => {
            if ab != 0.0 {
                return Err(Error::Unsupported(
                    "leading envelope is defined for the solvable (ab = 0) family only"
                        .to_string(),
                ));
            }
            Ok((0.5, 2.0 / map.mu() * (-q / c).max(0.0).sqrt()))
        }
        PulseKind::ConfluentFamily { p, q, map } => {
            if q != 0.0 {
                Ok((0.5, 2.0 / map.mu() * (-q).max(0.0).sqrt()))
            } else {
                Ok((1.0, 2.0 / map.mu() * (-p).max(0.0).sqrt()))
            }
        }
        PulseKind::Box { .. } => Err(Error::Unsupported(
            "the box pulse has no power-law onset".to_string(),
        )),
    }
}

//! The verification suite: ten checks covering the area theorem, the
//! rectangle closed form, analytic–numeric equivalence, the hypergeometric
//! reductions, normalization, the Riccati cross-check, smooth-box
//! convergence, post-pulse coherence, the emitted-energy estimate, and the
//! collective-emission profiles.
//!
//! Each check reports a `max_error` and `tolerance`; `status` is "pass"
//! exactly when every condition of the check holds.  Checks that aggregate
//! heterogeneous conditions (4, 9, 10) normalize each condition by its own
//! bound and report the worst ratio against a tolerance of 1.  Trajectory
//! sets shared between checks are computed once and cached for the process
//! lifetime.

use std::f64::consts::PI;
use std::sync::OnceLock;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use heun_tla::dynamics::{
    analytic_box, analytic_trajectory, evolve_numeric, evolve_riccati, final_population,
    resonant_probability, IntegratorConfig, Trajectory,
};
use heun_tla::error::Error as CoreError;
use heun_tla::ode::{integrate, OdeOptions};
use heun_tla::pulses::{pulse_area, DimensionlessParams, PulseKind, PulseSpec};
use heun_tla::quad::integrate_adaptive;
use heun_tla::specfun::{
    confluent_heun_local, gamma, heun_local, hyp2f1, ConfluentHeunParams, HeunParams,
};
use heun_tla::xuv::{
    coherence_lifetime, energy_bracket, rabi_profile, theta_profile, EmissionSolution,
    MediumParams,
};

/// Outcome of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    /// "pass" or "fail".
    pub status: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub runtime_s: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    /// One-line human-readable summary, numbered for the suite listing.
    pub fn summary_line(&self, index: usize) -> String {
        format!(
            "criterion {:02} {}: {} max_err={:.3e} tol={:.3e} runtime={:.2}s",
            index,
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.max_error,
            self.tolerance,
            self.runtime_s
        )
    }
}

/// The whole suite's outcome; `overall` is "pass" iff every check passed.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub overall: String,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall == "pass"
    }
}

/// Runs every check in order.
pub fn run_all() -> VerificationReport {
    let checks: Vec<CheckOutcome> = (1..=10).map(run_check).collect();
    let overall = if checks.iter().all(CheckOutcome::passed) { "pass" } else { "fail" };
    VerificationReport {
        schema_version: 1,
        overall: overall.to_string(),
        checks,
    }
}

/// Runs one check by its 1-based suite index.
pub fn run_check(index: usize) -> CheckOutcome {
    match index {
        1 => check_area_theorem(),
        2 => check_box_closed_form(),
        3 => check_analytic_numeric_equivalence(),
        4 => check_hypergeometric_reductions(),
        5 => check_normalization(),
        6 => check_riccati_cross_check(),
        7 => check_smooth_box_convergence(),
        8 => check_coherence_magnitude(),
        9 => check_emission_estimate(),
        10 => check_emission_profiles(),
        _ => panic!("check index must be 1..=10, got {index}"),
    }
}

fn finish(name: &str, started: Instant, max_error: f64, tolerance: f64, passed: bool) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        status: if passed { "pass" } else { "fail" }.to_string(),
        max_error,
        tolerance,
        runtime_s: started.elapsed().as_secs_f64(),
    }
}

fn broken(name: &str, started: Instant, tolerance: f64, err: &str) -> CheckOutcome {
    eprintln!("{name}: {err}");
    finish(name, started, f64::INFINITY, tolerance, false)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn dimensionless(beta: f64, gamma: f64) -> Result<DimensionlessParams, CoreError> {
    DimensionlessParams::new(1.0, beta, gamma)
}

// ---------------------------------------------------------------------------
// Shared trajectory sets.

struct AreaRun {
    target_area: f64,
    traj: Trajectory,
}

static AREA_RUNS: OnceLock<Result<Vec<AreaRun>, String>> = OnceLock::new();

fn area_runs() -> Result<&'static [AreaRun], String> {
    AREA_RUNS
        .get_or_init(|| build_area_runs().map_err(|e| e.to_string()))
        .as_ref()
        .map(|v| v.as_slice())
        .map_err(Clone::clone)
}

fn build_area_runs() -> Result<Vec<AreaRun>, CoreError> {
    let shapes = [
        PulseKind::Sech,
        PulseKind::OmegaPlus,
        PulseKind::OmegaMinus,
        PulseKind::OmegaDelta { delta: 2.0 },
    ];
    let areas = [PI, 2.0 * PI, 0.5 * PI];
    let mut out = Vec::with_capacity(shapes.len() * areas.len());
    for kind in shapes {
        let unit = PulseSpec::new(kind, dimensionless(0.0, 1.0)?)?;
        let unit_area = pulse_area(&unit, -30.0, 30.0, 1e-12)?;
        for target_area in areas {
            // The rotation angle is twice the envelope integral, so the
            // rescaled drive strength is (A/2) / unit-strength area.
            let gamma = 0.5 * target_area / unit_area;
            let spec = PulseSpec::new(kind, dimensionless(0.0, gamma)?)?;
            let cfg = IntegratorConfig::new(1e-12, 1e-14, (-30.0, 30.0), 10_000_000, 201)?;
            out.push(AreaRun {
                target_area,
                traj: evolve_numeric(&spec, &cfg)?,
            });
        }
    }
    Ok(out)
}

struct BoxRun {
    traj: Trajectory,
    exact: Vec<Complex64>,
}

static BOX_RUN: OnceLock<Result<BoxRun, String>> = OnceLock::new();

fn box_run() -> Result<&'static BoxRun, String> {
    BOX_RUN
        .get_or_init(|| build_box_run().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(Clone::clone)
}

fn build_box_run() -> Result<BoxRun, CoreError> {
    let spec = PulseSpec::new(PulseKind::Box { t0: 150.0 }, dimensionless(0.2, 0.02)?)?;
    let cfg = IntegratorConfig::new(1e-12, 1e-14, (-20.0, 150.0), 10_000_000, 681)?;
    let traj = evolve_numeric(&spec, &cfg)?;
    let exact = traj
        .samples
        .iter()
        .map(|(t, _)| analytic_box(0.2, 0.02, 150.0, *t))
        .collect();
    Ok(BoxRun { traj, exact })
}

struct ShapeRun {
    label: &'static str,
    traj: Trajectory,
    analytic: Vec<Complex64>,
}

/// First grid index of the τ ∈ [−8, 8] comparison window inside the
/// (−20, 8) / 701-sample trajectory grid.
const COMPARE_FROM: usize = 300;

static SHAPE_RUNS: OnceLock<Result<Vec<ShapeRun>, String>> = OnceLock::new();

fn shape_runs() -> Result<&'static [ShapeRun], String> {
    SHAPE_RUNS
        .get_or_init(|| build_shape_runs().map_err(|e| e.to_string()))
        .as_ref()
        .map(|v| v.as_slice())
        .map_err(Clone::clone)
}

fn build_shape_runs() -> Result<Vec<ShapeRun>, CoreError> {
    let shapes: [(&'static str, PulseKind); 6] = [
        ("omega-delta-1.1", PulseKind::OmegaDelta { delta: 1.1 }),
        ("omega-delta-2", PulseKind::OmegaDelta { delta: 2.0 }),
        ("omega-delta-11", PulseKind::OmegaDelta { delta: 11.0 }),
        ("omega-one", PulseKind::OmegaOne),
        ("omega-plus", PulseKind::OmegaPlus),
        ("omega-minus", PulseKind::OmegaMinus),
    ];
    let mut out = Vec::with_capacity(shapes.len());
    for (label, kind) in shapes {
        let spec = PulseSpec::new(kind, dimensionless(2.5, 0.25)?)?;
        let cfg = IntegratorConfig::new(1e-12, 1e-14, (-20.0, 8.0), 10_000_000, 701)?;
        let traj = evolve_numeric(&spec, &cfg)?;
        let taus: Vec<f64> = traj.samples.iter().map(|(t, _)| *t).collect();
        let analytic = analytic_trajectory(&spec, &taus)?;
        out.push(ShapeRun { label, traj, analytic });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Checks.

/// Check 1: on resonance, the final population equals sin²(A/2) for four
/// shapes rescaled to areas {π, 2π, π/2}.
fn check_area_theorem() -> CheckOutcome {
    let name = "area-theorem";
    let t = Instant::now();
    let tol = 1e-6;
    match area_runs() {
        Err(e) => broken(name, t, tol, &e),
        Ok(runs) => {
            let max_err = runs
                .iter()
                .map(|r| {
                    (r.traj.final_state().population_excited()
                        - resonant_probability(r.target_area))
                    .abs()
                })
                .fold(0.0, f64::max);
            finish(name, t, max_err, tol, max_err <= tol)
        }
    }
}

/// Check 2: the rectangle's closed-form C_a matches the numeric integration
/// over the pulse interior.
fn check_box_closed_form() -> CheckOutcome {
    let name = "box-closed-form";
    let t = Instant::now();
    let tol = 1e-8;
    match box_run() {
        Err(e) => broken(name, t, tol, &e),
        Ok(run) => {
            let max_err = run
                .traj
                .samples
                .iter()
                .zip(run.exact.iter())
                .filter(|((tau, _), _)| (0.0..150.0).contains(tau))
                .map(|((_, state), exact)| (state.ca - exact).norm())
                .fold(0.0, f64::max);
            finish(name, t, max_err, tol, max_err <= tol)
        }
    }
}

/// Check 3: series-route analytic amplitudes match the numeric integrator on
/// τ ∈ [−8, 8] for all six solvable shapes at γ = 1/4, β = 5/2.
fn check_analytic_numeric_equivalence() -> CheckOutcome {
    let name = "analytic-numeric-equivalence";
    let t = Instant::now();
    let tol = 1e-6;
    match shape_runs() {
        Err(e) => broken(name, t, tol, &e),
        Ok(runs) => {
            let max_err = runs
                .iter()
                .flat_map(|r| {
                    r.traj.samples[COMPARE_FROM..]
                        .iter()
                        .zip(r.analytic[COMPARE_FROM..].iter())
                        .map(|((_, state), a)| (state.ca - a).norm())
                })
                .fold(0.0, f64::max);
            finish(name, t, max_err, tol, max_err <= tol)
        }
    }
}

/// Check 4: the three Gauss reductions of the four-point series hold across
/// seeded random draws, and the 1/(1−z) connection identity expresses the
/// Gauss function through the confluent-class series.
fn check_hypergeometric_reductions() -> CheckOutcome {
    let name = "hypergeometric-reductions";
    let t = Instant::now();
    match reductions_body() {
        Err(e) => broken(name, t, 1.0, &e),
        Ok((reduction_err, connection_err)) => {
            let score = (reduction_err / 1e-10).max(connection_err / 1e-8);
            finish(name, t, score, 1.0, score <= 1.0)
        }
    }
}

fn reductions_body() -> Result<(f64, f64), String> {
    let run = |e: CoreError| e.to_string();
    let mut reduction_err = 0.0_f64;

    let gauss_points = [c(0.35, 0.0), c(-0.5, 0.0), c(0.25, 0.35), c(-0.2, -0.4)];
    let mut compare = |params: &HeunParams, aa: Complex64, bb: Complex64, cc: Complex64| {
        for z in gauss_points {
            let lhs = heun_local(params, z, 1e-13).map_err(run)?.value;
            let rhs = hyp2f1(aa, bb, cc, z, 1e-13).map_err(run)?.value;
            reduction_err = reduction_err.max((lhs - rhs).norm());
        }
        Ok::<(), String>(())
    };

    // Merged singularity at z = 1 (c = 1, q = ab).
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0001);
    for _ in 0..50 {
        let u = c(rng.random_range(0.3..2.0), rng.random_range(-1.5..1.5));
        let a = c(rng.random_range(-1.5..1.5), rng.random_range(-1.0..1.0));
        let b = c(rng.random_range(-1.5..1.5), rng.random_range(-1.0..1.0));
        let w = c(rng.random_range(0.2..1.5), rng.random_range(-1.0..1.0));
        let v = a + b + 1.0 - u - w;
        let params = HeunParams::new_degenerate(a, b, 1.0, a * b, u, v, w).map_err(run)?;
        compare(&params, a, b, u)?;
    }

    // Apparent third singular point (w = 0, q = c·ab).
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0002);
    for _ in 0..50 {
        let u = c(rng.random_range(0.3..2.0), rng.random_range(-1.5..1.5));
        let a = c(rng.random_range(-1.5..1.5), rng.random_range(-1.0..1.0));
        let b = c(rng.random_range(-1.5..1.5), rng.random_range(-1.0..1.0));
        let cc = rng.random_range(1.2..3.0);
        let v = a + b + 1.0 - u;
        let params = HeunParams::new(a, b, cc, cc * a * b, u, v, c(0.0, 0.0)).map_err(run)?;
        compare(&params, a, b, u)?;
    }

    // Merged origin (c = 0, q = 0): march the equation from a series seed.
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0003);
    let opts = OdeOptions::default();
    let mut checked = 0;
    while checked < 50 {
        let u = c(rng.random_range(0.3..2.0), rng.random_range(-1.5..1.5));
        let a = c(rng.random_range(-1.5..1.5), rng.random_range(-1.0..1.0));
        let b = c(rng.random_range(-1.5..1.5), rng.random_range(-1.0..1.0));
        let w = c(rng.random_range(0.2..1.5), rng.random_range(-1.0..1.0));
        let r = u + w;
        if r.norm() < 0.3 || (r + 1.0).norm() < 0.3 {
            continue;
        }
        let v = a + b + 1.0 - r;
        let params =
            HeunParams::new_degenerate(a, b, 0.0, c(0.0, 0.0), u, v, w).map_err(run)?;
        let s1 = a * b / r;
        let s2 = s1 * (a + 1.0) * (b + 1.0) / (2.0 * (r + 1.0));
        for sign in [1.0, -1.0] {
            let z0 = sign * 1e-7;
            let z1 = sign * 0.4;
            let y0 = [c(1.0, 0.0) + s1 * z0 + s2 * z0 * z0, s1 + 2.0 * s2 * z0];
            let sol = integrate(|z, y| params.ode_rhs(z, y), z0, z1, y0, &opts, None)
                .map_err(run)?;
            let rhs = hyp2f1(a, b, r, c(z1, 0.0), 1e-13).map_err(run)?.value;
            reduction_err = reduction_err.max((sol.y_end[0] - rhs).norm());
        }
        checked += 1;
    }

    // Connection identity: F(a, b; r; φ) at φ < 0 through two
    // confluent-class series in 1/(1−φ).
    let a = c(0.31, 0.42);
    let b = c(-0.27, -0.33);
    let r = c(1.4, 0.25);
    let c1 = gamma(r).map_err(run)? * gamma(b - a).map_err(run)?
        / (gamma(b).map_err(run)? * gamma(r - a).map_err(run)?);
    let c2 = gamma(r).map_err(run)? * gamma(a - b).map_err(run)?
        / (gamma(a).map_err(run)? * gamma(r - b).map_err(run)?);
    let first = ConfluentHeunParams::new(a - b + 1.0, r, c(0.0, 0.0), a * (r - b)).map_err(run)?;
    let second = ConfluentHeunParams::new(b - a + 1.0, r, c(0.0, 0.0), b * (r - a)).map_err(run)?;
    let mut connection_err = 0.0_f64;
    for i in 0..10 {
        let phi = -0.95 + 0.1 * i as f64;
        let lhs = hyp2f1(a, b, r, c(phi, 0.0), 1e-13).map_err(run)?.value;
        let zp = c(1.0 / (1.0 - phi), 0.0);
        let one_m_phi = c(1.0 - phi, 0.0);
        let term1 = c1
            * one_m_phi.powc(-a)
            * confluent_heun_local(&first, zp, 1e-13).map_err(run)?.value;
        let term2 = c2
            * one_m_phi.powc(-b)
            * confluent_heun_local(&second, zp, 1e-13).map_err(run)?.value;
        connection_err = connection_err.max((lhs - term1 - term2).norm());
    }

    Ok((reduction_err, connection_err))
}

/// Check 5: every trajectory from checks 1–3 conserves |C_a|² + |C_b|².
fn check_normalization() -> CheckOutcome {
    let name = "normalization";
    let t = Instant::now();
    let tol = 1e-9;
    let gathered: Result<f64, String> = (|| {
        let mut worst = 0.0_f64;
        for run in area_runs()? {
            worst = worst.max(run.traj.max_norm_defect());
        }
        worst = worst.max(box_run()?.traj.max_norm_defect());
        for run in shape_runs()? {
            worst = worst.max(run.traj.max_norm_defect());
        }
        Ok(worst)
    })();
    match gathered {
        Err(e) => broken(name, t, tol, &e),
        Ok(max_err) => finish(name, t, max_err, tol, max_err <= tol),
    }
}

/// Check 6: the nonlinear magnitude route reproduces |C_a| from the linear
/// system across the check-3 parameter set.
fn check_riccati_cross_check() -> CheckOutcome {
    let name = "riccati-cross-check";
    let t = Instant::now();
    let tol = 1e-7;
    let body: Result<f64, String> = (|| {
        let mut worst = 0.0_f64;
        for run in shape_runs()? {
            let ric = evolve_riccati(&run.traj.spec, &run.traj.config)
                .map_err(|e| format!("{}: {e}", run.label))?;
            for ((_, state), (_, mag)) in run.traj.samples.iter().zip(ric.iter()) {
                worst = worst.max((state.ca.norm() - mag).abs());
            }
        }
        Ok(worst)
    })();
    match body {
        Err(e) => broken(name, t, tol, &e),
        Ok(max_err) => finish(name, t, max_err, tol, max_err <= tol),
    }
}

/// Check 7: a smooth box matched to a rectangle (same physical height,
/// width, and detuning) reproduces the rectangle's final population as the
/// corner-sharpness parameter δ − 1 shrinks; the discrepancy falls
/// monotonically and ends below 5%.
fn check_smooth_box_convergence() -> CheckOutcome {
    let name = "smooth-box-convergence";
    let t = Instant::now();
    let tol = 0.05;
    let body: Result<(Vec<f64>, f64), String> = (|| {
        let run = |e: CoreError| e.to_string();
        // Rectangle target: Ω₀ = 0.2, Δ = 0.05, duration 20 (α = 1 units).
        let box_spec =
            PulseSpec::new(PulseKind::Box { t0: 20.0 }, dimensionless(0.05, 0.2).map_err(run)?)
                .map_err(run)?;
        let p_box = final_population(&box_spec).map_err(run)?;
        let mut rels = Vec::new();
        for dm1 in [1e-3_f64, 1e-6, 1e-9] {
            let delta = 1.0 + dm1;
            // Plateau corner sits at τ_c = ½ ln(2/(δ−1)); the plateau height
            // is √2 per unit γ, so the equivalent rectangle width in τ is
            // the unit-strength area divided by √2.
            let tau_c = 0.5 * (2.0 / dm1).ln();
            let unit = PulseSpec::new(
                PulseKind::SmoothBox { delta },
                dimensionless(0.0, 1.0).map_err(run)?,
            )
            .map_err(run)?;
            let width = pulse_area(&unit, -30.0, tau_c + 22.0, 1e-10).map_err(run)?
                / 2.0_f64.sqrt();
            // Match the rectangle: duration width/α = 20, peak √2·γ·α = 0.2,
            // detuning β·α = 0.05.
            let alpha = width / 20.0;
            let gamma = 0.2 / (2.0_f64.sqrt() * alpha);
            let beta = 0.05 / alpha;
            let params = DimensionlessParams::new(alpha, beta, gamma).map_err(run)?;
            let spec = PulseSpec::new(PulseKind::SmoothBox { delta }, params).map_err(run)?;
            let cfg = IntegratorConfig::new(
                1e-12,
                1e-14,
                (-30.0, tau_c + 22.0),
                10_000_000,
                3,
            )
            .map_err(run)?;
            let p = evolve_numeric(&spec, &cfg)
                .map_err(run)?
                .final_state()
                .population_excited();
            rels.push((p - p_box).abs() / p_box);
        }
        let last = *rels.last().expect("three sharpness levels");
        Ok((rels, last))
    })();
    match body {
        Err(e) => broken(name, t, tol, &e),
        Ok((rels, last)) => {
            let monotone = rels.windows(2).all(|w| w[1] < w[0]);
            finish(name, t, last, tol, monotone && last <= tol)
        }
    }
}

/// Check 8: the post-pulse coherence |C_a C_b| for at least one of the ±
/// shapes lands in the band [0.03, 0.3] at the check-3 operating point.
/// The reported value is the band-utilization ratio of the better shape
/// (≤ 1 inside the band).
fn check_coherence_magnitude() -> CheckOutcome {
    let name = "coherence-magnitude";
    let t = Instant::now();
    let body: Result<f64, String> = (|| {
        let mut best = f64::INFINITY;
        for run in shape_runs()? {
            if run.label == "omega-plus" || run.label == "omega-minus" {
                let state = run.traj.final_state();
                let coherence = state.coherence();
                let util = (0.03 / coherence).max(coherence / 0.3);
                best = best.min(util);
            }
        }
        Ok(best)
    })();
    match body {
        Err(e) => broken(name, t, 1.0, &e),
        Ok(score) => finish(name, t, score, 1.0, score <= 1.0),
    }
}

/// Check 9: the emitted-energy bracket overlaps [10 nJ, 1 μJ] with both
/// endpoints within a factor of 10 of those bounds, and the coherence
/// lifetime in the dense regime is within a factor of 10 of 1 ps.  The
/// reported value is the worst |log₁₀| distance (1 = one decade).
fn check_emission_estimate() -> CheckOutcome {
    let name = "emission-estimate";
    let t = Instant::now();
    let body: Result<f64, String> = (|| {
        let m = MediumParams::survey();
        let (lo, hi) =
            energy_bracket(&m, (1e16, 1e19), (1.0, 1e3), 7).map_err(|e| e.to_string())?;
        let lifetime = coherence_lifetime(3e-16, 1e17);
        let decades = [
            (lo / 1e-8).log10().abs(),
            (hi / 1e-6).log10().abs(),
            (lifetime / 1e-12).log10().abs(),
        ];
        Ok(decades.into_iter().fold(0.0, f64::max))
    })();
    match body {
        Err(e) => broken(name, t, 1.0, &e),
        Ok(score) => finish(name, t, score, 1.0, score <= 1.0),
    }
}

/// Check 10: the Bloch-angle profile satisfies the linearized propagation
/// equation with O(h²) finite-difference residual (ratio test in
/// [3.5, 4.5]), the angle equals twice the running Rabi integral to 1e−8,
/// and the fluence sum rule holds to 1%.  The full nonlinear-equation
/// residual is printed for reference but not asserted.
fn check_emission_profiles() -> CheckOutcome {
    let name = "emission-profiles";
    let t = Instant::now();
    let body: Result<f64, String> = (|| {
        let eta = 3.0;
        let phi0 = 0.2;
        let sol = EmissionSolution::new(eta, phi0).map_err(|e| e.to_string())?;

        // Mixed central difference of ∂²θ/∂z∂τ against −η(θ − φ₀).
        let residual = |h: f64, linear: bool| -> f64 {
            let mut worst = 0.0_f64;
            for iz in 0..5 {
                let z = 0.3 + 0.3 * iz as f64;
                for it in 0..5 {
                    let tau = 0.4 + 0.4 * it as f64;
                    let mixed = (theta_profile(&sol, z + h, tau + h)
                        - theta_profile(&sol, z + h, tau - h)
                        - theta_profile(&sol, z - h, tau + h)
                        + theta_profile(&sol, z - h, tau - h))
                        / (4.0 * h * h);
                    let dev = theta_profile(&sol, z, tau) - phi0;
                    let source = if linear { dev } else { dev.sin() };
                    worst = worst.max((mixed + eta * source).abs());
                }
            }
            worst
        };
        let coarse = residual(0.02, true);
        let fine = residual(0.01, true);
        let ratio = coarse / fine;
        let full = residual(0.01, false);
        println!(
            "emission-profiles: linearized residual {fine:.3e} (h=0.01), \
             refinement ratio {ratio:.2}; full-equation residual {full:.3e} \
             (reported, not asserted)"
        );

        let mut theta_err = 0.0_f64;
        for (z, tau) in [(0.7, 1.1), (1.3, 2.1), (2.0, 0.4)] {
            let integral =
                integrate_adaptive(|x| Ok(rabi_profile(&sol, z, x)), 0.0, tau, 1e-11)
                    .map_err(|e| e.to_string())?;
            theta_err = theta_err.max((theta_profile(&sol, z, tau) - 2.0 * integral).abs());
        }

        // Fluence sum rule ∫Ω²dτ = φ₀²ηz/4, truncated at ηzτ = 10⁴.
        let sol2 = EmissionSolution::new(2.0, phi0).map_err(|e| e.to_string())?;
        let z = 2.0;
        let t_max = 1e4 / (2.0 * z);
        let fluence =
            integrate_adaptive(|x| Ok(rabi_profile(&sol2, z, x).powi(2)), 0.0, t_max, 1e-10)
                .map_err(|e| e.to_string())?;
        let target = 0.25 * phi0 * phi0 * 2.0 * z;
        let fluence_rel = ((fluence - target) / target).abs();

        let score = ((ratio - 4.0).abs() / 0.5)
            .max(theta_err / 1e-8)
            .max(fluence_rel / 0.01);
        Ok(score)
    })();
    match body {
        Err(e) => broken(name, t, 1.0, &e),
        Ok(score) => finish(name, t, score, 1.0, score <= 1.0),
    }
}

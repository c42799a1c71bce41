//! Command-line surface for the two-level-pulse library: tabulate envelopes,
//! run numeric and analytic evolutions, compare the two, sweep parameters,
//! estimate the generated short-wavelength signal, tabulate the
//! collective-emission profiles, and run the verification suite.
//!
//! Output contracts: CSV uses 17-significant-digit scientific notation, line
//! feeds, and no trailing delimiter, so every file round-trips to the exact
//! `f64` values that produced it and identical configurations produce
//! byte-identical files.  JSON reports carry `schema_version: 1` with stable
//! key order.  Exit codes: 0 success, 1 usage error, 2 numerical failure,
//! 3 verification failure.

// Validation deliberately writes `!(x > y)` so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod verify;

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use heun_tla::dynamics::{
    analytic_trajectory, evolve_numeric, final_population, IntegratorConfig,
};
use heun_tla::error::Error as CoreError;
use heun_tla::pulses::{omega, DimensionlessParams, PhaseMap, PulseKind, PulseSpec};
use heun_tla::xuv::{energy_bracket, signal_chain, EmissionSolution, MediumParams};

/// Environment variable naming the directory against which relative
/// `--output` (and `--report`) paths are resolved.
pub const OUTDIR_ENV: &str = "HEUN_TLA_OUTDIR";

/// Errors surfaced to the user, keyed to the exit-code contract.
#[derive(Debug, Clone)]
pub enum CliError {
    /// Bad flags or flag values: exit code 1.
    Usage(String),
    /// I/O or numerical failure while executing a valid request: exit code 2.
    Runtime(String),
    /// The verification suite ran but at least one check failed: exit code 3.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, msg) = match self {
            CliError::Usage(m) => ("usage error", m),
            CliError::Runtime(m) => ("error", m),
            CliError::Verification(m) => ("verification failure", m),
        };
        write!(f, "{tag}: {}", msg.replace('\n', " "))
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn runtime(e: impl fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

/// Top-level parsed invocation.
#[derive(Debug, Parser)]
#[command(
    name = "heun-tla",
    version,
    about = "Exactly solvable driven two-level systems: pulse tables, amplitude evolutions, parameter sweeps, and emission estimates"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the pulse envelope Ω(τ) as CSV (tau, omega).
    Pulse {
        #[command(flatten)]
        pulse: PulseArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Integrate the amplitude equations numerically; full-trajectory CSV.
    Evolve {
        #[command(flatten)]
        pulse: PulseArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Evaluate the analytic amplitude C_a on a τ grid; CSV.
    Analytic {
        #[command(flatten)]
        pulse: PulseArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Analytic and numeric C_a side by side with per-row |difference|; CSV.
    Compare {
        #[command(flatten)]
        pulse: PulseArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sweep gamma or beta and report the final excited-state population.
    Sweep {
        #[command(flatten)]
        pulse: PulseArgs,
        /// Parameter to sweep.
        #[arg(long, value_enum)]
        param: SweepParam,
        /// First swept value.
        #[arg(long, allow_hyphen_values = true)]
        start: f64,
        /// Last swept value.
        #[arg(long, allow_hyphen_values = true)]
        stop: f64,
        /// Number of sweep points (≥ 1).
        #[arg(long, default_value_t = 51)]
        points: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print the final excited-state population for one parameter set.
    Final {
        #[command(flatten)]
        pulse: PulseArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Emitted-signal estimate report as JSON.
    Xuv {
        #[command(flatten)]
        xuv: XuvArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulate the collective-emission profiles θ and Ω on a (z, τ) grid.
    Propagate {
        #[command(flatten)]
        prop: PropagateArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the verification suite; exits nonzero if any check fails.
    Verify {
        /// Write the JSON verification report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Envelope selection with shape-specific and drive parameters.  The drive
/// may be given either dimensionlessly (--gamma/--beta) or in carrier units
/// (--omega0/--delta with --alpha), converted via γ = Ω₀/α, β = Δ/α.
#[derive(Debug, Args, Clone, Copy)]
pub struct PulseArgs {
    /// Envelope shape.
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Shape parameter δ > 1 (omega-delta, smooth-box).
    #[arg(long = "delta-param")]
    pub delta_param: Option<f64>,
    /// Rectangle duration t₀ > 0 in 1/α units (box).
    #[arg(long)]
    pub t0: Option<f64>,
    /// Exponent product a·b (heun-family).
    #[arg(long, allow_hyphen_values = true)]
    pub ab: Option<f64>,
    /// Accessory parameter q (heun-family, confluent-family).
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Third singular point c > 1 (heun-family).
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Linear coefficient p (confluent-family).
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    /// Phase-map exponent μ > 0 (family shapes).
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    /// Phase-map asymmetry λ with λ/μ > −1 (family shapes).
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub lambda: f64,
    /// Dimensionless peak Rabi rate γ = Ω₀/α.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "omega0")]
    pub gamma: Option<f64>,
    /// Dimensionless detuning β = Δ/α.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "delta")]
    pub beta: Option<f64>,
    /// Time-scale parameter α > 0 in carrier units.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Peak Rabi rate Ω₀ in carrier units.
    #[arg(long, allow_hyphen_values = true)]
    pub omega0: Option<f64>,
    /// Detuning Δ in carrier units.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Sech,
    OmegaDelta,
    OmegaOne,
    OmegaPlus,
    OmegaMinus,
    Box,
    SmoothBox,
    HeunFamily,
    ConfluentFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Gamma,
    Beta,
}

impl SweepParam {
    fn name(self) -> &'static str {
        match self {
            SweepParam::Gamma => "gamma",
            SweepParam::Beta => "beta",
        }
    }
}

impl PulseArgs {
    fn require(&self, value: Option<f64>, flag: &str) -> Result<f64, CliError> {
        value.ok_or_else(|| {
            CliError::Usage(format!("--{flag} is required for --kind {:?}", self.kind))
        })
    }

    /// Resolves the γ value, if any was supplied on either path.
    fn gamma_value(&self) -> Option<f64> {
        self.gamma.or(self.omega0.map(|o| o / self.alpha))
    }

    /// Resolves the β value; an unspecified detuning means resonance.
    fn beta_value(&self) -> f64 {
        self.beta.or(self.delta.map(|d| d / self.alpha)).unwrap_or(0.0)
    }

    pub fn dimensionless(&self) -> Result<DimensionlessParams, CliError> {
        let gamma = self.gamma_value().ok_or_else(|| {
            CliError::Usage("a drive strength is required: --gamma or --omega0".to_string())
        })?;
        DimensionlessParams::new(self.alpha, self.beta_value(), gamma).map_err(usage)
    }

    pub fn pulse_kind(&self) -> Result<PulseKind, CliError> {
        Ok(match self.kind {
            KindArg::Sech => PulseKind::Sech,
            KindArg::OmegaDelta => PulseKind::OmegaDelta {
                delta: self.require(self.delta_param, "delta-param")?,
            },
            KindArg::OmegaOne => PulseKind::OmegaOne,
            KindArg::OmegaPlus => PulseKind::OmegaPlus,
            KindArg::OmegaMinus => PulseKind::OmegaMinus,
            KindArg::Box => PulseKind::Box { t0: self.require(self.t0, "t0")? },
            KindArg::SmoothBox => PulseKind::SmoothBox {
                delta: self.require(self.delta_param, "delta-param")?,
            },
            KindArg::HeunFamily => PulseKind::HeunFamily {
                ab: self.require(self.ab, "ab")?,
                q: self.require(self.q, "q")?,
                c: self.require(self.c, "c")?,
                map: PhaseMap::new(self.mu, self.lambda).map_err(usage)?,
            },
            KindArg::ConfluentFamily => PulseKind::ConfluentFamily {
                p: self.require(self.p, "p")?,
                q: self.require(self.q, "q")?,
                map: PhaseMap::new(self.mu, self.lambda).map_err(usage)?,
            },
        })
    }

    pub fn spec(&self) -> Result<PulseSpec, CliError> {
        PulseSpec::new(self.pulse_kind()?, self.dimensionless()?).map_err(usage)
    }
}

/// τ-grid controls.  Defaults depend on the subcommand: (−20, 20, 401) for
/// pulse/evolve, (−20, 8, 401) for analytic/compare.
#[derive(Debug, Args, Clone, Copy)]
pub struct GridArgs {
    /// Grid start τ_min.
    #[arg(long = "tau-min", allow_hyphen_values = true)]
    pub tau_min: Option<f64>,
    /// Grid end τ_max (> τ_min).
    #[arg(long = "tau-max", allow_hyphen_values = true)]
    pub tau_max: Option<f64>,
    /// Number of grid samples (≥ 2).
    #[arg(long)]
    pub samples: Option<usize>,
}

impl GridArgs {
    fn resolve(&self, defaults: (f64, f64, usize)) -> Result<(f64, f64, usize), CliError> {
        let tau_min = self.tau_min.unwrap_or(defaults.0);
        let tau_max = self.tau_max.unwrap_or(defaults.1);
        let samples = self.samples.unwrap_or(defaults.2);
        if !(tau_min.is_finite() && tau_max.is_finite() && tau_max > tau_min) {
            return Err(CliError::Usage(format!(
                "grid requires finite tau-min < tau-max, got [{tau_min}, {tau_max}]"
            )));
        }
        if samples < 2 {
            return Err(CliError::Usage(format!(
                "grid requires at least 2 samples, got {samples}"
            )));
        }
        Ok((tau_min, tau_max, samples))
    }
}

/// Integrator tolerances.
#[derive(Debug, Args, Clone, Copy)]
pub struct TolArgs {
    /// Relative tolerance for the numeric integrator.
    #[arg(long = "rel-tol", default_value_t = 1e-12)]
    pub rel_tol: f64,
    /// Absolute tolerance for the numeric integrator.
    #[arg(long = "abs-tol", default_value_t = 1e-14)]
    pub abs_tol: f64,
}

/// Output destination; standard output when omitted.
#[derive(Debug, Args, Clone)]
pub struct OutputArgs {
    /// Output file; relative paths resolve against $HEUN_TLA_OUTDIR when set.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Emission-estimate inputs.  Values start from the survey preset; any
/// explicit flag overrides its field.
#[derive(Debug, Args, Clone, Copy)]
pub struct XuvArgs {
    /// Built-in parameter set to start from.
    #[arg(long, value_enum, default_value_t = PresetArg::Survey)]
    pub preset: PresetArg,
    /// Atom number density, cm⁻³.
    #[arg(long = "number-density")]
    pub number_density: Option<f64>,
    /// Transition dipole moment, Debye.
    #[arg(long)]
    pub dipole: Option<f64>,
    /// Medium length L, cm.
    #[arg(long)]
    pub length: Option<f64>,
    /// Signal wavelength λ₄, cm.
    #[arg(long)]
    pub wavelength4: Option<f64>,
    /// Initial Raman coherence ρ_cb (≤ 0.5).
    #[arg(long = "rho-cb")]
    pub rho_cb: Option<f64>,
    /// Dimensionless drive product Ω₃τ.
    #[arg(long = "omega3-tau")]
    pub omega3_tau: Option<f64>,
    /// Pump duration, s.
    #[arg(long = "pump-duration")]
    pub pump_duration: Option<f64>,
    /// Photoionization/scattering cross-section σ, cm².
    #[arg(long = "cross-section")]
    pub cross_section: Option<f64>,
    /// Initial excited-state population ρ⁰_aa (≤ 1).
    #[arg(long = "rho-aa0")]
    pub rho_aa0: Option<f64>,
    /// Lower density bound for the energy bracket, cm⁻³.
    #[arg(long = "density-min", default_value_t = 1e16)]
    pub density_min: f64,
    /// Upper density bound for the energy bracket, cm⁻³.
    #[arg(long = "density-max", default_value_t = 1e19)]
    pub density_max: f64,
    /// Lower Ω₃τ bound for the energy bracket.
    #[arg(long = "drive-min", default_value_t = 1.0)]
    pub drive_min: f64,
    /// Upper Ω₃τ bound for the energy bracket.
    #[arg(long = "drive-max", default_value_t = 1e3)]
    pub drive_max: f64,
    /// Log-grid samples per bracket axis (≥ 2).
    #[arg(long = "bracket-samples", default_value_t = 7)]
    pub bracket_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    /// The survey operating point (N = 10¹⁷ cm⁻³, ℘ = 1 D, L = 100 μm,
    /// λ₄ = 10 nm, ρ_cb = 0.1, Ω₃τ = 1, 1 ps pump).
    Survey,
}

impl XuvArgs {
    pub fn medium(&self) -> Result<MediumParams, CliError> {
        let PresetArg::Survey = self.preset;
        let mut m = MediumParams::survey();
        if let Some(v) = self.number_density {
            m.number_density = v;
        }
        if let Some(v) = self.dipole {
            m.dipole_ab = v;
        }
        if let Some(v) = self.length {
            m.length = v;
        }
        if let Some(v) = self.wavelength4 {
            m.wavelength4 = v;
        }
        if let Some(v) = self.rho_cb {
            m.rho_cb = v;
        }
        if let Some(v) = self.omega3_tau {
            m.omega3_tau = v;
        }
        if let Some(v) = self.pump_duration {
            m.pump_duration = v;
        }
        if let Some(v) = self.cross_section {
            m.cross_section = v;
        }
        if let Some(v) = self.rho_aa0 {
            m.rho_aa0 = v;
        }
        m.validated().map_err(usage)
    }
}

/// Collective-emission tabulation inputs.
#[derive(Debug, Args, Clone, Copy)]
pub struct PropagateArgs {
    /// Collective-emission coupling η > 0 (per length per time).
    #[arg(long, default_value_t = 3.0)]
    pub eta: f64,
    /// Initial tipping angle φ₀ ∈ [0, 2].
    #[arg(long, default_value_t = 0.2)]
    pub phi0: f64,
    /// Propagation-grid start.
    #[arg(long = "z-min", default_value_t = 0.0)]
    pub z_min: f64,
    /// Propagation-grid end.
    #[arg(long = "z-max", default_value_t = 2.0)]
    pub z_max: f64,
    /// Propagation-grid samples (≥ 2).
    #[arg(long = "z-samples", default_value_t = 21)]
    pub z_samples: usize,
    /// Retarded-time grid start.
    #[arg(long = "tau-min", default_value_t = 0.0)]
    pub tau_min: f64,
    /// Retarded-time grid end.
    #[arg(long = "tau-max", default_value_t = 4.0)]
    pub tau_max: f64,
    /// Retarded-time grid samples (≥ 2).
    #[arg(long = "tau-samples", default_value_t = 41)]
    pub tau_samples: usize,
}

/// Resolves a user-supplied path against `$HEUN_TLA_OUTDIR` when the path is
/// relative and the variable is set and non-empty.
pub fn resolve_output_path(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUTDIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

fn emit(out: &OutputArgs, content: &str) -> Result<(), CliError> {
    match &out.output {
        Some(p) => {
            let target = resolve_output_path(p);
            fs::write(&target, content)
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", target.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

/// Formats rows as CSV with 17-significant-digit scientific notation, LF
/// line endings, and no trailing delimiter.
pub fn format_csv(header: &str, rows: &[Vec<f64>]) -> String {
    let mut s = String::with_capacity(header.len() + 1 + rows.len() * 26 * 4);
    s.push_str(header);
    s.push('\n');
    for row in rows {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("{v:.16e}"));
        }
        s.push('\n');
    }
    s
}

/// Evenly spaced grid with exact endpoints, matching the integrator's
/// sampling rule.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + step * i as f64 })
        .collect()
}

const GRID_WIDE: (f64, f64, usize) = (-20.0, 20.0, 401);
const GRID_COMPARE: (f64, f64, usize) = (-20.0, 8.0, 401);

/// Executes one parsed invocation.
pub fn run(config: RunConfig) -> Result<(), CliError> {
    match config.command {
        Command::Pulse { pulse, grid, out } => cmd_pulse(&pulse, &grid, &out),
        Command::Evolve { pulse, grid, tol, out } => cmd_evolve(&pulse, &grid, &tol, &out),
        Command::Analytic { pulse, grid, out } => cmd_analytic(&pulse, &grid, &out),
        Command::Compare { pulse, grid, tol, out } => cmd_compare(&pulse, &grid, &tol, &out),
        Command::Sweep { pulse, param, start, stop, points, out } => {
            cmd_sweep(&pulse, param, start, stop, points, &out)
        }
        Command::Final { pulse, out } => cmd_final(&pulse, &out),
        Command::Xuv { xuv, out } => cmd_xuv(&xuv, &out),
        Command::Propagate { prop, out } => cmd_propagate(&prop, &out),
        Command::Verify { report } => cmd_verify(report.as_deref()),
    }
}

fn integrator_config(
    tol: &TolArgs,
    span: (f64, f64),
    samples: usize,
) -> Result<IntegratorConfig, CliError> {
    IntegratorConfig::new(tol.rel_tol, tol.abs_tol, span, 10_000_000, samples).map_err(usage)
}

fn cmd_pulse(pulse: &PulseArgs, grid: &GridArgs, out: &OutputArgs) -> Result<(), CliError> {
    let spec = pulse.spec()?;
    let (lo, hi, n) = grid.resolve(GRID_WIDE)?;
    let mut rows = Vec::with_capacity(n);
    for tau in linspace(lo, hi, n) {
        rows.push(vec![tau, omega(&spec, tau).map_err(runtime)?]);
    }
    emit(out, &format_csv("tau,omega", &rows))
}

fn cmd_evolve(
    pulse: &PulseArgs,
    grid: &GridArgs,
    tol: &TolArgs,
    out: &OutputArgs,
) -> Result<(), CliError> {
    let spec = pulse.spec()?;
    let (lo, hi, n) = grid.resolve(GRID_WIDE)?;
    let cfg = integrator_config(tol, (lo, hi), n)?;
    let traj = evolve_numeric(&spec, &cfg).map_err(runtime)?;
    let mut rows = Vec::with_capacity(n);
    for (tau, state) in &traj.samples {
        rows.push(vec![
            *tau,
            omega(&spec, *tau).map_err(runtime)?,
            state.ca.re,
            state.ca.im,
            state.cb.re,
            state.cb.im,
            state.population_excited(),
            state.population_ground(),
        ]);
    }
    emit(out, &format_csv("tau,omega,re_ca,im_ca,re_cb,im_cb,pa,pb", &rows))
}

fn cmd_analytic(pulse: &PulseArgs, grid: &GridArgs, out: &OutputArgs) -> Result<(), CliError> {
    let spec = pulse.spec()?;
    let (lo, hi, n) = grid.resolve(GRID_COMPARE)?;
    let taus = linspace(lo, hi, n);
    let ca = analytic_trajectory(&spec, &taus).map_err(runtime)?;
    let mut rows = Vec::with_capacity(n);
    for (tau, value) in taus.iter().zip(ca.iter()) {
        rows.push(vec![
            *tau,
            omega(&spec, *tau).map_err(runtime)?,
            value.re,
            value.im,
            value.norm_sqr(),
        ]);
    }
    emit(out, &format_csv("tau,omega,re_ca,im_ca,pa", &rows))
}

fn cmd_compare(
    pulse: &PulseArgs,
    grid: &GridArgs,
    tol: &TolArgs,
    out: &OutputArgs,
) -> Result<(), CliError> {
    let spec = pulse.spec()?;
    let (lo, hi, n) = grid.resolve(GRID_COMPARE)?;
    let cfg = integrator_config(tol, (lo, hi), n)?;
    let traj = evolve_numeric(&spec, &cfg).map_err(runtime)?;
    let taus: Vec<f64> = traj.samples.iter().map(|(t, _)| *t).collect();
    let analytic = analytic_trajectory(&spec, &taus).map_err(runtime)?;
    let mut rows = Vec::with_capacity(n);
    for ((tau, state), a) in traj.samples.iter().zip(analytic.iter()) {
        rows.push(vec![
            *tau,
            a.re,
            a.im,
            state.ca.re,
            state.ca.im,
            (a - state.ca).norm(),
        ]);
    }
    emit(
        out,
        &format_csv(
            "tau,re_ca_analytic,im_ca_analytic,re_ca_numeric,im_ca_numeric,abs_diff",
            &rows,
        ),
    )
}

fn cmd_sweep(
    pulse: &PulseArgs,
    param: SweepParam,
    start: f64,
    stop: f64,
    points: usize,
    out: &OutputArgs,
) -> Result<(), CliError> {
    if points == 0 {
        return Err(CliError::Usage("--points must be at least 1".to_string()));
    }
    if !(start.is_finite() && stop.is_finite()) {
        return Err(CliError::Usage(format!(
            "sweep bounds must be finite, got [{start}, {stop}]"
        )));
    }
    let kind = pulse.pulse_kind()?;
    let alpha = pulse.alpha;
    let fixed_beta = pulse.beta_value();
    let fixed_gamma = match param {
        SweepParam::Gamma => pulse.gamma_value().unwrap_or(0.0),
        SweepParam::Beta => pulse.gamma_value().ok_or_else(|| {
            CliError::Usage(
                "a fixed drive strength (--gamma or --omega0) is required to sweep beta"
                    .to_string(),
            )
        })?,
    };
    let values = linspace(start, stop, points);
    // Points are independent; evaluate them in parallel but keep the output
    // ordered by sweep index.
    let results: Vec<Result<f64, CoreError>> = values
        .par_iter()
        .map(|&v| {
            let (gamma, beta) = match param {
                SweepParam::Gamma => (v, fixed_beta),
                SweepParam::Beta => (fixed_gamma, v),
            };
            let params = DimensionlessParams::new(alpha, beta, gamma)?;
            let spec = PulseSpec::new(kind, params)?;
            final_population(&spec)
        })
        .collect();
    let mut rows = Vec::with_capacity(points);
    for (v, r) in values.iter().zip(results) {
        let pa = r.map_err(|e| CliError::Runtime(format!("{}={v}: {e}", param.name())))?;
        rows.push(vec![*v, pa]);
    }
    emit(out, &format_csv(&format!("{},final_pa", param.name()), &rows))
}

fn cmd_final(pulse: &PulseArgs, out: &OutputArgs) -> Result<(), CliError> {
    let spec = pulse.spec()?;
    let pa = final_population(&spec).map_err(runtime)?;
    emit(out, &format!("{pa:.16e}\n"))
}

#[derive(Debug, Serialize)]
struct XuvInputEcho {
    number_density: f64,
    dipole_ab: f64,
    length: f64,
    wavelength4: f64,
    rho_cb: f64,
    omega3_tau: f64,
    pump_duration: f64,
    cross_section: f64,
    rho_aa0: f64,
}

#[derive(Debug, Serialize)]
struct XuvBracket {
    density_range: [f64; 2],
    drive_range: [f64; 2],
    samples_per_axis: usize,
    energy_low: f64,
    energy_high: f64,
}

#[derive(Debug, Serialize)]
struct XuvReport {
    schema_version: u32,
    input: XuvInputEcho,
    omega4: f64,
    field: f64,
    intensity: f64,
    raw_energy: f64,
    stored_energy: f64,
    pulse_energy: f64,
    coherence_lifetime: f64,
    bracket: XuvBracket,
}

fn cmd_xuv(xuv: &XuvArgs, out: &OutputArgs) -> Result<(), CliError> {
    let m = xuv.medium()?;
    let chain = signal_chain(&m);
    let (energy_low, energy_high) = energy_bracket(
        &m,
        (xuv.density_min, xuv.density_max),
        (xuv.drive_min, xuv.drive_max),
        xuv.bracket_samples,
    )
    .map_err(usage)?;
    let report = XuvReport {
        schema_version: 1,
        input: XuvInputEcho {
            number_density: m.number_density,
            dipole_ab: m.dipole_ab,
            length: m.length,
            wavelength4: m.wavelength4,
            rho_cb: m.rho_cb,
            omega3_tau: m.omega3_tau,
            pump_duration: m.pump_duration,
            cross_section: m.cross_section,
            rho_aa0: m.rho_aa0,
        },
        omega4: chain.omega4,
        field: chain.field,
        intensity: chain.intensity,
        raw_energy: chain.raw_energy,
        stored_energy: chain.stored_energy,
        pulse_energy: chain.pulse_energy,
        coherence_lifetime: chain.coherence_lifetime,
        bracket: XuvBracket {
            density_range: [xuv.density_min, xuv.density_max],
            drive_range: [xuv.drive_min, xuv.drive_max],
            samples_per_axis: xuv.bracket_samples,
            energy_low,
            energy_high,
        },
    };
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Runtime(format!("cannot serialize report: {e}")))?;
    emit(out, &format!("{json}\n"))
}

fn cmd_propagate(prop: &PropagateArgs, out: &OutputArgs) -> Result<(), CliError> {
    let mut sol = EmissionSolution::new(prop.eta, prop.phi0).map_err(usage)?;
    if prop.z_samples < 2 || prop.tau_samples < 2 {
        return Err(CliError::Usage(
            "propagate requires at least 2 samples on each axis".to_string(),
        ));
    }
    if !(prop.z_max > prop.z_min) || !(prop.tau_max > prop.tau_min) {
        return Err(CliError::Usage(
            "propagate requires z-min < z-max and tau-min < tau-max".to_string(),
        ));
    }
    let zs = linspace(prop.z_min, prop.z_max, prop.z_samples);
    let taus = linspace(prop.tau_min, prop.tau_max, prop.tau_samples);
    sol.tabulate(&zs, &taus).map_err(usage)?;
    let rows: Vec<Vec<f64>> = sol
        .grid()
        .iter()
        .map(|s| vec![s.z, s.tau, s.theta, s.omega])
        .collect();
    emit(out, &format_csv("z,tau,theta,omega", &rows))
}

fn cmd_verify(report_path: Option<&Path>) -> Result<(), CliError> {
    let report = verify::run_all();
    let mut stdout = std::io::stdout().lock();
    for (i, check) in report.checks.iter().enumerate() {
        writeln!(stdout, "{}", check.summary_line(i + 1))?;
    }
    writeln!(stdout, "overall: {}", report.overall)?;
    drop(stdout);
    if let Some(path) = report_path {
        let target = resolve_output_path(path);
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| CliError::Runtime(format!("cannot serialize report: {e}")))?;
        fs::write(&target, format!("{json}\n"))
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", target.display())))?;
    }
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name.as_str())
            .collect();
        Err(CliError::Verification(format!(
            "{} of {} checks failed: {}",
            failed.len(),
            report.checks.len(),
            failed.join(", ")
        )))
    }
}

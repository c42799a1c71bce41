//! Short-wavelength signal estimates and the collective-emission solution.
//!
//! Two estimate families live here.  The first is an order-of-magnitude
//! chain for the field generated by a prepared Raman coherence: the signal
//! Rabi rate Ω₄ grows linearly along the medium, and the emitted energy is
//! the corresponding intensity over the pump duration and beam area, capped
//! by the energy actually stored in the medium.  The second is the
//! linearized collective-emission (sine-Gordon) solution: a tipped Bloch
//! angle relaxes as θ(z, τ) = φ₀[1 − J₀(2√(ηzτ))] with the Bessel-profile
//! Rabi rate that follows from θ = 2∫Ω dτ.
//!
//! Inputs use practical lab units (cm⁻³, Debye, cm, s); all internal
//! arithmetic is SI and outputs are J, W, s, rad/s.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{bessel_j0, bessel_j1};

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054571817e-34;
/// Vacuum permittivity, F/m.
pub const EPSILON0: f64 = 8.8541878128e-12;
/// Speed of light, m/s.
pub const C_LIGHT: f64 = 2.99792458e8;
/// One Debye in C·m.
pub const DEBYE: f64 = 3.33564e-30;
/// Default radiative decay rate γ_r, s⁻¹ (hydrogenic 2p value).
pub const DEFAULT_GAMMA_R: f64 = 6.27e8;

/// Medium and drive parameters in practical lab units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    /// Atom number density, cm⁻³.
    pub number_density: f64,
    /// Transition dipole moment ℘_ab, Debye.
    pub dipole_ab: f64,
    /// Medium length L, cm.
    pub length: f64,
    /// Signal wavelength λ₄, cm.
    pub wavelength4: f64,
    /// Initial Raman coherence ρ_cb, dimensionless (≤ 0.5).
    pub rho_cb: f64,
    /// Dimensionless drive product Ω₃τ.
    pub omega3_tau: f64,
    /// Pump duration, s.
    pub pump_duration: f64,
    /// Photoionization/scattering cross-section σ, cm².
    pub cross_section: f64,
    /// Initial excited-state population ρ⁰_aa, dimensionless (≤ 1).
    pub rho_aa0: f64,
}

impl MediumParams {
    /// Checks positivity and the coherence/population bounds, returning the
    /// validated parameter set.
    pub fn validated(self) -> Result<Self> {
        let positives = [
            ("number_density", self.number_density),
            ("dipole_ab", self.dipole_ab),
            ("length", self.length),
            ("wavelength4", self.wavelength4),
            ("rho_cb", self.rho_cb),
            ("omega3_tau", self.omega3_tau),
            ("pump_duration", self.pump_duration),
            ("cross_section", self.cross_section),
            ("rho_aa0", self.rho_aa0),
        ];
        for (name, value) in positives {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        if self.rho_cb > 0.5 {
            return Err(Error::InvalidParameter(format!(
                "rho_cb may not exceed 0.5, got {}",
                self.rho_cb
            )));
        }
        if self.rho_aa0 > 1.0 {
            return Err(Error::InvalidParameter(format!(
                "rho_aa0 may not exceed 1, got {}",
                self.rho_aa0
            )));
        }
        Ok(self)
    }

    /// The survey operating point: N = 10¹⁷ cm⁻³, ℘ = 1 D, L = 100 μm,
    /// λ₄ = 10 nm, ρ_cb = 0.1, Ω₃τ = 1, 1 ps pump, σ = 3·10⁻¹⁶ cm²,
    /// ρ⁰_aa = 0.01.
    pub fn survey() -> Self {
        MediumParams {
            number_density: 1e17,
            dipole_ab: 1.0,
            length: 1e-2,
            wavelength4: 1e-6,
            rho_cb: 0.1,
            omega3_tau: 1.0,
            pump_duration: 1e-12,
            cross_section: 3e-16,
            rho_aa0: 0.01,
        }
    }
}

/// Derived signal quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XuvEstimate {
    /// Signal Rabi rate Ω₄ at the medium exit, rad/s.
    pub omega4: f64,
    /// Emitted pulse energy, J.
    pub pulse_energy: f64,
    /// Coherence lifetime 1/(σcN), s.
    pub coherence_lifetime: f64,
}

/// The full estimate chain, including the intermediate field quantities the
/// headline numbers are built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalChain {
    /// Signal Rabi rate Ω₄ = k₄ L ℘²_ab N ρ_cb Ω₃τ / (2ε₀ħ), rad/s.
    pub omega4: f64,
    /// Electric field E₄ = ħΩ₄/℘_ab, V/m.
    pub field: f64,
    /// Intensity ½ε₀cE₄², W/m².
    pub intensity: f64,
    /// Intensity × beam area L² × pump duration, J.
    pub raw_energy: f64,
    /// Energy stored in the medium, L³ N ρ_cb² ħω₄, J.
    pub stored_energy: f64,
    /// min(raw, stored): the emitted energy cannot exceed what is stored.
    pub pulse_energy: f64,
    /// 1/(σcN), s.
    pub coherence_lifetime: f64,
}

/// Coherence lifetime 1/(σ c N) from a cross-section in cm² and a density
/// in cm⁻³.
pub fn coherence_lifetime(cross_section_cm2: f64, number_density_cm3: f64) -> f64 {
    1.0 / (cross_section_cm2 * 1e-4 * C_LIGHT * number_density_cm3 * 1e6)
}

/// Evaluates the signal chain for one parameter set.
pub fn signal_chain(m: &MediumParams) -> SignalChain {
    let n_si = m.number_density * 1e6;
    let l_si = m.length * 1e-2;
    let lam_si = m.wavelength4 * 1e-2;
    let dip_si = m.dipole_ab * DEBYE;
    let k4 = 2.0 * PI / lam_si;

    let omega4 = k4 * l_si * dip_si * dip_si * n_si * m.rho_cb * m.omega3_tau
        / (2.0 * EPSILON0 * HBAR);
    let field = HBAR * omega4 / dip_si;
    let intensity = 0.5 * EPSILON0 * C_LIGHT * field * field;
    let raw_energy = intensity * l_si * l_si * m.pump_duration;
    let omega_photon = 2.0 * PI * C_LIGHT / lam_si;
    let stored_energy = l_si.powi(3) * n_si * m.rho_cb * m.rho_cb * HBAR * omega_photon;
    SignalChain {
        omega4,
        field,
        intensity,
        raw_energy,
        stored_energy,
        pulse_energy: raw_energy.min(stored_energy),
        coherence_lifetime: coherence_lifetime(m.cross_section, m.number_density),
    }
}

/// The headline estimate: signal Rabi rate, emitted energy (intensity over
/// the pump duration and beam area A = L², capped by the stored energy),
/// and coherence lifetime.
pub fn signal_rabi(m: &MediumParams) -> XuvEstimate {
    #[cfg(debug_assertions)]
    units::audit_signal_chain(m);
    let chain = signal_chain(m);
    XuvEstimate {
        omega4: chain.omega4,
        pulse_energy: chain.pulse_energy,
        coherence_lifetime: chain.coherence_lifetime,
    }
}

/// Scans log-spaced grids of number density and Ω₃τ (endpoints included)
/// and reports the (min, max) emitted energy over the grid.
pub fn energy_bracket(
    base: &MediumParams,
    density_range: (f64, f64),
    drive_range: (f64, f64),
    samples_per_axis: usize,
) -> Result<(f64, f64)> {
    for (name, (lo, hi)) in [("density", density_range), ("drive", drive_range)] {
        if !(lo > 0.0 && hi >= lo) {
            return Err(Error::InvalidParameter(format!(
                "{name} range must satisfy 0 < lo <= hi, got ({lo}, {hi})"
            )));
        }
    }
    if samples_per_axis < 2 {
        return Err(Error::InvalidParameter(
            "samples_per_axis must be at least 2".to_string(),
        ));
    }
    let log_grid = |(lo, hi): (f64, f64)| -> Vec<f64> {
        let (lo_l, hi_l) = (lo.ln(), hi.ln());
        (0..samples_per_axis)
            .map(|i| {
                if i + 1 == samples_per_axis {
                    hi
                } else {
                    (lo_l + (hi_l - lo_l) * i as f64 / (samples_per_axis - 1) as f64).exp()
                }
            })
            .collect()
    };
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &n in &log_grid(density_range) {
        for &d in &log_grid(drive_range) {
            let mut m = *base;
            m.number_density = n;
            m.omega3_tau = d;
            let e = signal_chain(&m).pulse_energy;
            lo = lo.min(e);
            hi = hi.max(e);
        }
    }
    Ok((lo, hi))
}

/// Initial collective tipping angle φ₀ = 2√(ρ⁰_aa).
pub fn tipping_angle(rho_aa0: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&rho_aa0), "rho_aa0 must lie in [0, 1]");
    2.0 * rho_aa0.sqrt()
}

/// Collective-emission coupling η = 3λ²Nγ_r/(8π) in cm⁻¹·s⁻¹ (λ in cm,
/// N in cm⁻³, γ_r in s⁻¹), so that η·z·τ with z in cm and τ in s is
/// dimensionless.
pub fn coupling_eta(wavelength_cm: f64, number_density_cm3: f64, gamma_r: f64) -> f64 {
    3.0 * wavelength_cm * wavelength_cm * number_density_cm3 * gamma_r / (8.0 * PI)
}

/// One (z, τ) sample of the emission profiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionSample {
    pub z: f64,
    pub tau: f64,
    pub theta: f64,
    pub omega: f64,
}

/// The linearized collective-emission solution for one coupling and tipping
/// angle, with an optional sampled (z, τ) grid.
///
/// The Bloch angle solves the linearization of the propagation equation
/// ∂²θ/∂z∂τ = −η sin(θ − φ₀) about the tipped state (sin x → x); the exact
/// linearized solution is θ = φ₀[1 − J₀(2√(ηzτ))], which vanishes on both
/// axes z = 0 and τ = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct EmissionSolution {
    eta: f64,
    phi0: f64,
    grid: Vec<EmissionSample>,
}

impl EmissionSolution {
    pub fn new(eta: f64, phi0: f64) -> Result<Self> {
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "coupling eta must be positive and finite, got {eta}"
            )));
        }
        if !(0.0..=2.0).contains(&phi0) {
            return Err(Error::InvalidParameter(format!(
                "tipping angle phi0 = 2*sqrt(rho_aa0) must lie in [0, 2], got {phi0}"
            )));
        }
        Ok(EmissionSolution { eta, phi0, grid: Vec::new() })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    pub fn grid(&self) -> &[EmissionSample] {
        &self.grid
    }

    /// Fills the grid with θ and Ω samples at the outer product of the given
    /// coordinates (row-major in z).
    pub fn tabulate(&mut self, zs: &[f64], taus: &[f64]) -> Result<()> {
        for &v in zs.iter().chain(taus.iter()) {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "grid coordinates must be non-negative and finite, got {v}"
                )));
            }
        }
        self.grid.clear();
        self.grid.reserve(zs.len() * taus.len());
        for &z in zs {
            for &tau in taus {
                self.grid.push(EmissionSample {
                    z,
                    tau,
                    theta: theta_profile(self, z, tau),
                    omega: rabi_profile(self, z, tau),
                });
            }
        }
        Ok(())
    }
}

/// Bloch angle θ(z, τ) = φ₀[1 − J₀(2√(ηzτ))].
pub fn theta_profile(sol: &EmissionSolution, z: f64, tau: f64) -> f64 {
    debug_assert!(z >= 0.0 && tau >= 0.0, "profiles are defined for z, tau >= 0");
    let x = 2.0 * (sol.eta * z * tau).max(0.0).sqrt();
    sol.phi0 * (1.0 - bessel_j0(x).expect("J0 argument is non-negative and finite"))
}

/// Emission Rabi rate Ω(z, τ) = (φ₀/2) J₁(2√(ηzτ)) √(ηz/τ), the profile
/// whose running integral reproduces θ = 2∫₀^τ Ω dτ′ exactly.
///
/// The τ → 0 limit is removable: Ω → (φ₀/2)ηz(1 − x²/8) with x = 2√(ηzτ),
/// used whenever x² < 1e−8.
pub fn rabi_profile(sol: &EmissionSolution, z: f64, tau: f64) -> f64 {
    debug_assert!(z >= 0.0 && tau >= 0.0, "profiles are defined for z, tau >= 0");
    let xsq = 4.0 * sol.eta * z * tau;
    if xsq < 1e-8 {
        return 0.5 * sol.phi0 * sol.eta * z * (1.0 - 0.125 * xsq);
    }
    let x = xsq.sqrt();
    0.5 * sol.phi0
        * bessel_j1(x).expect("J1 argument is non-negative and finite")
        * (sol.eta * z / tau).sqrt()
}

/// Duration of the generated pulse, τ_pulse = 4π/(3Nλ²zγ_r) in seconds
/// (N in cm⁻³, λ and z in cm — the combination Nλ²z is a pure number, so no
/// unit conversion enters).  Equals 1/(2ηz) with η from [`coupling_eta`].
pub fn pulse_duration(m: &MediumParams, z: f64, gamma_r: f64) -> f64 {
    debug_assert!(z > 0.0 && gamma_r > 0.0, "z and gamma_r must be positive");
    #[cfg(debug_assertions)]
    units::audit_pulse_duration(m, z, gamma_r);
    4.0 * PI
        / (3.0 * m.number_density * m.wavelength4 * m.wavelength4 * z * gamma_r)
}

/// Power and energy of the generated pulse over a beam of the given area:
/// the energy is what the excited fraction stores, A·z·N·ρ⁰_aa·ħω_ab, and
/// the power is that energy over [`pulse_duration`], so P·τ_pulse = energy
/// exactly.  Area in cm², z in cm, ω_ab in rad/s; returns (W, J).
pub fn pulse_power_and_energy(
    m: &MediumParams,
    z: f64,
    gamma_r: f64,
    area: f64,
    omega_ab: f64,
) -> (f64, f64) {
    debug_assert!(area > 0.0 && omega_ab > 0.0, "area and omega_ab must be positive");
    #[cfg(debug_assertions)]
    units::audit_pulse_power_and_energy(m, z, gamma_r, area, omega_ab);
    let atom_count = area * z * m.number_density;
    let energy = atom_count * m.rho_aa0 * HBAR * omega_ab;
    let power = energy / pulse_duration(m, z, gamma_r);
    (power, energy)
}

/// Dimension-tagged arithmetic used to audit the estimate chains in debug
/// and test builds.  A [`units::Quantity`] carries SI base-unit exponents
/// (m, s, kg, A); multiplication and division combine them, addition
/// requires equal tags, and square roots require even tags.
pub mod units {
    use std::ops::{Add, Div, Mul, Sub};

    /// SI base-unit exponents (metre, second, kilogram, ampere).
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub struct Dim {
        pub metre: i32,
        pub second: i32,
        pub kilogram: i32,
        pub ampere: i32,
    }

    impl Dim {
        pub const fn new(metre: i32, second: i32, kilogram: i32, ampere: i32) -> Self {
            Dim { metre, second, kilogram, ampere }
        }
    }

    pub const DIMENSIONLESS: Dim = Dim::new(0, 0, 0, 0);
    pub const METRE: Dim = Dim::new(1, 0, 0, 0);
    pub const SECOND: Dim = Dim::new(0, 1, 0, 0);
    pub const PER_SECOND: Dim = Dim::new(0, -1, 0, 0);
    pub const PER_CUBIC_METRE: Dim = Dim::new(-3, 0, 0, 0);
    pub const JOULE: Dim = Dim::new(2, -2, 1, 0);
    pub const WATT: Dim = Dim::new(2, -3, 1, 0);
    pub const JOULE_SECOND: Dim = Dim::new(2, -1, 1, 0);
    pub const COULOMB_METRE: Dim = Dim::new(1, 1, 0, 1);
    pub const VOLT_PER_METRE: Dim = Dim::new(1, -3, 1, -1);
    pub const WATT_PER_SQUARE_METRE: Dim = Dim::new(0, -3, 1, 0);
    pub const FARAD_PER_METRE: Dim = Dim::new(-3, 4, -1, 2);
    pub const METRE_PER_SECOND: Dim = Dim::new(1, -1, 0, 0);
    pub const SQUARE_METRE: Dim = Dim::new(2, 0, 0, 0);

    /// A value with SI dimension exponents attached.
    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct Quantity {
        pub value: f64,
        pub dim: Dim,
    }

    impl Quantity {
        pub fn new(value: f64, dim: Dim) -> Self {
            Quantity { value, dim }
        }

        pub fn dimensionless(value: f64) -> Self {
            Quantity { value, dim: DIMENSIONLESS }
        }

        pub fn powi(self, n: i32) -> Self {
            Quantity {
                value: self.value.powi(n),
                dim: Dim::new(
                    self.dim.metre * n,
                    self.dim.second * n,
                    self.dim.kilogram * n,
                    self.dim.ampere * n,
                ),
            }
        }

        pub fn sqrt(self) -> Self {
            assert!(
                self.dim.metre % 2 == 0
                    && self.dim.second % 2 == 0
                    && self.dim.kilogram % 2 == 0
                    && self.dim.ampere % 2 == 0,
                "square root of a quantity with odd dimension exponents: {:?}",
                self.dim
            );
            Quantity {
                value: self.value.sqrt(),
                dim: Dim::new(
                    self.dim.metre / 2,
                    self.dim.second / 2,
                    self.dim.kilogram / 2,
                    self.dim.ampere / 2,
                ),
            }
        }

        pub fn recip(self) -> Self {
            self.powi(-1)
        }
    }

    impl Mul for Quantity {
        type Output = Quantity;
        fn mul(self, rhs: Quantity) -> Quantity {
            Quantity {
                value: self.value * rhs.value,
                dim: Dim::new(
                    self.dim.metre + rhs.dim.metre,
                    self.dim.second + rhs.dim.second,
                    self.dim.kilogram + rhs.dim.kilogram,
                    self.dim.ampere + rhs.dim.ampere,
                ),
            }
        }
    }

    impl Div for Quantity {
        type Output = Quantity;
        #[allow(clippy::suspicious_arithmetic_impl)]
        fn div(self, rhs: Quantity) -> Quantity {
            self * rhs.recip()
        }
    }

    impl Mul<f64> for Quantity {
        type Output = Quantity;
        fn mul(self, rhs: f64) -> Quantity {
            Quantity { value: self.value * rhs, dim: self.dim }
        }
    }

    impl Add for Quantity {
        type Output = Quantity;
        fn add(self, rhs: Quantity) -> Quantity {
            assert_eq!(self.dim, rhs.dim, "adding quantities of different dimension");
            Quantity { value: self.value + rhs.value, dim: self.dim }
        }
    }

    impl Sub for Quantity {
        type Output = Quantity;
        fn sub(self, rhs: Quantity) -> Quantity {
            assert_eq!(self.dim, rhs.dim, "subtracting quantities of different dimension");
            Quantity { value: self.value - rhs.value, dim: self.dim }
        }
    }

    use super::{MediumParams, C_LIGHT, DEBYE, EPSILON0, HBAR};

    fn hbar() -> Quantity {
        Quantity::new(HBAR, JOULE_SECOND)
    }

    fn eps0() -> Quantity {
        Quantity::new(EPSILON0, FARAD_PER_METRE)
    }

    fn light() -> Quantity {
        Quantity::new(C_LIGHT, METRE_PER_SECOND)
    }

    /// Recomputes the signal chain with dimension tags and panics if any
    /// derived quantity carries the wrong unit.
    pub fn audit_signal_chain(m: &MediumParams) {
        let n = Quantity::new(m.number_density * 1e6, PER_CUBIC_METRE);
        let l = Quantity::new(m.length * 1e-2, METRE);
        let lam = Quantity::new(m.wavelength4 * 1e-2, METRE);
        let dip = Quantity::new(m.dipole_ab * DEBYE, COULOMB_METRE);
        let k4 = Quantity::dimensionless(2.0 * std::f64::consts::PI) / lam;
        let omega4 = k4 * l * dip * dip * n
            * Quantity::dimensionless(m.rho_cb * m.omega3_tau)
            / (eps0() * hbar() * 2.0);
        assert_eq!(omega4.dim, PER_SECOND, "omega4 must come out in rad/s");
        let field = hbar() * omega4 / dip;
        assert_eq!(field.dim, VOLT_PER_METRE, "field must come out in V/m");
        let intensity = eps0() * light() * field * field * 0.5;
        assert_eq!(intensity.dim, WATT_PER_SQUARE_METRE, "intensity must come out in W/m^2");
        let raw = intensity * l * l * Quantity::new(m.pump_duration, SECOND);
        assert_eq!(raw.dim, JOULE, "raw energy must come out in J");
        let omega_photon = Quantity::dimensionless(2.0 * std::f64::consts::PI) * light() / lam;
        let stored = l.powi(3) * n * Quantity::dimensionless(m.rho_cb * m.rho_cb)
            * hbar()
            * omega_photon;
        assert_eq!(stored.dim, JOULE, "stored energy must come out in J");
        let sigma = Quantity::new(m.cross_section * 1e-4, SQUARE_METRE);
        let lifetime = (sigma * light() * n).recip();
        assert_eq!(lifetime.dim, SECOND, "lifetime must come out in s");
    }

    /// Dimension audit of the pulse-duration formula.
    pub fn audit_pulse_duration(m: &MediumParams, z: f64, gamma_r: f64) {
        let n = Quantity::new(m.number_density * 1e6, PER_CUBIC_METRE);
        let lam = Quantity::new(m.wavelength4 * 1e-2, METRE);
        let zq = Quantity::new(z * 1e-2, METRE);
        let g = Quantity::new(gamma_r, PER_SECOND);
        let tau = (n * lam * lam * zq * g * Quantity::dimensionless(3.0 / (4.0 * std::f64::consts::PI)))
            .recip();
        assert_eq!(tau.dim, SECOND, "pulse duration must come out in s");
    }

    /// Dimension audit of the stored-energy and power formulas.
    pub fn audit_pulse_power_and_energy(
        m: &MediumParams,
        z: f64,
        gamma_r: f64,
        area: f64,
        omega_ab: f64,
    ) {
        let n = Quantity::new(m.number_density * 1e6, PER_CUBIC_METRE);
        let a = Quantity::new(area * 1e-4, SQUARE_METRE);
        let zq = Quantity::new(z * 1e-2, METRE);
        let count = a * zq * n;
        assert_eq!(count.dim, DIMENSIONLESS, "atom count must be dimensionless");
        let energy = count * Quantity::dimensionless(m.rho_aa0)
            * hbar()
            * Quantity::new(omega_ab, PER_SECOND);
        assert_eq!(energy.dim, JOULE, "stored energy must come out in J");
        let lam = Quantity::new(m.wavelength4 * 1e-2, METRE);
        let tau = (n * lam * lam * zq * Quantity::new(gamma_r, PER_SECOND)
            * Quantity::dimensionless(3.0 / (4.0 * std::f64::consts::PI)))
        .recip();
        let power = energy / tau;
        assert_eq!(power.dim, WATT, "power must come out in W");
    }
}

//! Signal-estimate chain and collective-emission profiles: frozen reference
//! numbers from a 40-digit evaluation, internal-consistency identities,
//! parameter validation, and the dimension-audit helpers.

// Reference values are recorded with 17 significant digits as frozen.
#![allow(clippy::excessive_precision)]

use approx::assert_relative_eq;
use std::f64::consts::PI;

use heun_tla::quad::integrate_adaptive;
use heun_tla::xuv::{
    coherence_lifetime, coupling_eta, energy_bracket, pulse_duration, pulse_power_and_energy,
    rabi_profile, signal_chain, signal_rabi, theta_profile, tipping_angle, units, EmissionSolution,
    MediumParams, C_LIGHT, DEBYE, DEFAULT_GAMMA_R, EPSILON0, HBAR,
};

/// Frozen signal Rabi rate at the survey point with N = 10¹⁶ cm⁻³, Ω₃τ = 1.
const OMEGA4_BASE: f64 = 3.74354732939150940e+11;
/// Frozen emitted-energy bracket over N ∈ [10¹⁶, 10¹⁹] cm⁻³ × Ω₃τ ∈ [1, 10³].
const ENERGY_LO: f64 = 1.85908851973857542e-09;
const ENERGY_HI: f64 = 1.98644585593179527e-06;
/// Frozen coherence lifetime at σ = 3·10⁻¹⁶ cm², N = 10¹⁷ cm⁻³.
const LIFETIME_REF: f64 = 1.11188031732717330e-12;
/// Frozen generated-pulse duration at the survey point, z = 100 μm.
const TAU_PULSE_REF: f64 = 6.68068613203571078e-12;
/// Frozen stored energy over a 10⁻⁴ cm² beam, ρ⁰_aa = 0.01, z = 100 μm,
/// ω_ab = 2πc/(10 nm).
const STORED_ENERGY_REF: f64 = 1.98644585593179528e-08;
/// Frozen peak power, STORED_ENERGY_REF / TAU_PULSE_REF.
const POWER_REF: f64 = 2.97341592865176835e+03;
/// Frozen Bloch angle and Rabi profile at η = 3, z = 1.3, τ = 2.1, φ₀ = 0.2.
const THETA_POINT: f64 = 0.18649039134040076;
const OMEGA_POINT: f64 = -0.043786585069185117;

fn omega_ab_10nm() -> f64 {
    2.0 * PI * C_LIGHT / 1e-8
}

#[test]
fn frozen_signal_rabi_rate() {
    let mut m = MediumParams::survey();
    m.number_density = 1e16;
    let m = m.validated().unwrap();
    let est = signal_rabi(&m);
    assert_relative_eq!(est.omega4, OMEGA4_BASE, max_relative = 1e-12);
}

#[test]
fn rabi_rate_scales_linearly_in_each_factor() {
    let base = MediumParams::survey();
    let omega0 = signal_chain(&base).omega4;
    for mutate in [
        (|m: &mut MediumParams| m.number_density *= 2.0) as fn(&mut MediumParams),
        |m| m.length *= 2.0,
        |m| m.rho_cb *= 2.0,
        |m| m.omega3_tau *= 2.0,
    ] {
        let mut m = base;
        mutate(&mut m);
        let omega = signal_chain(&m).omega4;
        assert_relative_eq!(omega, 2.0 * omega0, max_relative = 1e-14);
    }
    // The dipole moment enters squared, and the wavelength inversely.
    let mut m = base;
    m.dipole_ab *= 2.0;
    assert_relative_eq!(signal_chain(&m).omega4, 4.0 * omega0, max_relative = 1e-14);
    let mut m = base;
    m.wavelength4 *= 2.0;
    assert_relative_eq!(signal_chain(&m).omega4, 0.5 * omega0, max_relative = 1e-14);
}

#[test]
fn chain_intermediates_are_consistent() {
    let m = MediumParams::survey();
    let chain = signal_chain(&m);
    assert_relative_eq!(
        chain.field,
        HBAR * chain.omega4 / (m.dipole_ab * DEBYE),
        max_relative = 1e-14
    );
    assert_relative_eq!(
        chain.intensity,
        0.5 * EPSILON0 * C_LIGHT * chain.field * chain.field,
        max_relative = 1e-14
    );
    let l_si = m.length * 1e-2;
    assert_relative_eq!(
        chain.raw_energy,
        chain.intensity * l_si * l_si * m.pump_duration,
        max_relative = 1e-14
    );
    assert_eq!(chain.pulse_energy, chain.raw_energy.min(chain.stored_energy));
    let est = signal_rabi(&m);
    assert_eq!(est.omega4, chain.omega4);
    assert_eq!(est.pulse_energy, chain.pulse_energy);
    assert_eq!(est.coherence_lifetime, chain.coherence_lifetime);
}

#[test]
fn vanishing_coherence_silences_the_chain() {
    let mut m = MediumParams::survey();
    m.rho_cb = 0.0;
    let chain = signal_chain(&m);
    assert_eq!(chain.omega4, 0.0);
    assert_eq!(chain.field, 0.0);
    assert_eq!(chain.intensity, 0.0);
    assert_eq!(chain.raw_energy, 0.0);
    assert_eq!(chain.stored_energy, 0.0);
    assert_eq!(chain.pulse_energy, 0.0);
}

#[test]
fn frozen_energy_bracket() {
    let m = MediumParams::survey();
    let (lo, hi) = energy_bracket(&m, (1e16, 1e19), (1.0, 1e3), 7).unwrap();
    assert_relative_eq!(lo, ENERGY_LO, max_relative = 1e-12);
    assert_relative_eq!(hi, ENERGY_HI, max_relative = 1e-12);
    // Refining the grid cannot move the extremes outward past the endpoints
    // here: both extremes sit at grid corners, which are always included.
    let (lo2, hi2) = energy_bracket(&m, (1e16, 1e19), (1.0, 1e3), 25).unwrap();
    assert_relative_eq!(lo2, lo, max_relative = 1e-12);
    assert_relative_eq!(hi2, hi, max_relative = 1e-12);
}

#[test]
fn energy_bracket_rejects_bad_arguments() {
    let m = MediumParams::survey();
    assert!(energy_bracket(&m, (0.0, 1e19), (1.0, 1e3), 5).is_err());
    assert!(energy_bracket(&m, (1e19, 1e16), (1.0, 1e3), 5).is_err());
    assert!(energy_bracket(&m, (1e16, 1e19), (-1.0, 1e3), 5).is_err());
    assert!(energy_bracket(&m, (1e16, 1e19), (1.0, 1e3), 1).is_err());
}

#[test]
fn frozen_coherence_lifetime() {
    assert_relative_eq!(coherence_lifetime(3e-16, 1e17), LIFETIME_REF, max_relative = 1e-12);
    // Inverse in density and cross-section.
    assert_relative_eq!(
        coherence_lifetime(3e-16, 2e17),
        0.5 * LIFETIME_REF,
        max_relative = 1e-14
    );
    assert_relative_eq!(
        coherence_lifetime(6e-16, 1e17),
        0.5 * LIFETIME_REF,
        max_relative = 1e-14
    );
    let chain = signal_chain(&MediumParams::survey());
    assert_relative_eq!(chain.coherence_lifetime, LIFETIME_REF, max_relative = 1e-12);
}

#[test]
fn parameter_validation_rejections() {
    let good = MediumParams::survey();
    assert!(good.validated().is_ok());
    let mut m = good;
    m.number_density = -1.0;
    assert!(m.validated().is_err());
    let mut m = good;
    m.rho_cb = 0.6;
    assert!(m.validated().is_err());
    let mut m = good;
    m.rho_aa0 = 1.5;
    assert!(m.validated().is_err());
    let mut m = good;
    m.length = f64::NAN;
    assert!(m.validated().is_err());
    let mut m = good;
    m.omega3_tau = 0.0;
    assert!(m.validated().is_err());
}

#[test]
fn tipping_angle_values() {
    assert_eq!(tipping_angle(0.01), 0.2);
    assert_eq!(tipping_angle(0.25), 1.0);
    assert_eq!(tipping_angle(0.0), 0.0);
}

#[test]
fn frozen_emission_profile_points() {
    let sol = EmissionSolution::new(3.0, 0.2).unwrap();
    let theta = theta_profile(&sol, 1.3, 2.1);
    let omega = rabi_profile(&sol, 1.3, 2.1);
    assert_relative_eq!(theta, THETA_POINT, max_relative = 1e-14);
    assert_relative_eq!(omega, OMEGA_POINT, max_relative = 1e-14);
}

#[test]
fn emission_profiles_vanish_on_the_axes() {
    let sol = EmissionSolution::new(2.0, 0.4).unwrap();
    for v in [0.0, 0.3, 1.7, 6.0] {
        assert_eq!(theta_profile(&sol, v, 0.0), 0.0);
        assert_eq!(theta_profile(&sol, 0.0, v), 0.0);
    }
    // Ω at τ = 0 takes its removable-limit value (φ₀/2)ηz, not zero.
    assert_relative_eq!(rabi_profile(&sol, 1.5, 0.0), 0.5 * 0.4 * 2.0 * 1.5, max_relative = 1e-14);
    assert_eq!(rabi_profile(&sol, 0.0, 3.0), 0.0);
}

#[test]
fn theta_is_twice_the_running_rabi_integral() {
    // θ(z, τ) = 2 ∫₀^τ Ω(z, τ′) dτ′ ties the two profiles together.
    let sol = EmissionSolution::new(3.0, 0.2).unwrap();
    for (z, tau) in [(0.7, 1.1), (1.3, 2.1), (2.0, 0.4)] {
        let integral =
            integrate_adaptive(|t| Ok(rabi_profile(&sol, z, t)), 0.0, tau, 1e-11).unwrap();
        let theta = theta_profile(&sol, z, tau);
        assert!(
            (theta - 2.0 * integral).abs() < 1e-8,
            "z={z}, τ={tau}: θ={theta:.12e} vs 2∫Ω={:.12e}",
            2.0 * integral
        );
    }
}

#[test]
fn emitted_fluence_matches_closed_form() {
    // ∫₀^∞ Ω² dτ = φ₀²ηz/4 (from ∫₀^∞ J₁²(x)/x dx = 1/2); the integrand's
    // 1/τ^{3/2}-scale tail makes a truncation at ηzτ = 10⁴ good to a few
    // × 10⁻³ relative.
    let eta = 2.0;
    let z = 2.0;
    let phi0 = 0.3;
    let sol = EmissionSolution::new(eta, phi0).unwrap();
    let t_max = 1e4 / (eta * z);
    let fluence =
        integrate_adaptive(|t| Ok(rabi_profile(&sol, z, t).powi(2)), 0.0, t_max, 1e-10).unwrap();
    let target = 0.25 * phi0 * phi0 * eta * z;
    assert!(
        ((fluence - target) / target).abs() < 1e-2,
        "fluence {fluence:.6e} vs {target:.6e}"
    );
}

#[test]
fn rabi_small_argument_branch_is_continuous() {
    let sol = EmissionSolution::new(1.0, 0.5).unwrap();
    // Straddle the series/Bessel switch at x² = 4ηzτ = 1e−8 (z = 1).
    let below = rabi_profile(&sol, 1.0, 0.2499e-8);
    let above = rabi_profile(&sol, 1.0, 0.2501e-8);
    assert_relative_eq!(below, above, max_relative = 1e-9);
}

#[test]
fn frozen_pulse_duration_power_and_energy() {
    let m = MediumParams::survey();
    let tau = pulse_duration(&m, 0.01, DEFAULT_GAMMA_R);
    assert_relative_eq!(tau, TAU_PULSE_REF, max_relative = 1e-12);
    // τ_pulse = 1/(2ηz) with the collective coupling η.
    let eta = coupling_eta(m.wavelength4, m.number_density, DEFAULT_GAMMA_R);
    assert_relative_eq!(tau, 1.0 / (2.0 * eta * 0.01), max_relative = 1e-13);

    let (power, energy) = pulse_power_and_energy(&m, 0.01, DEFAULT_GAMMA_R, 1e-4, omega_ab_10nm());
    assert_relative_eq!(energy, STORED_ENERGY_REF, max_relative = 1e-12);
    assert_relative_eq!(power, POWER_REF, max_relative = 1e-12);
    assert_relative_eq!(power * tau, energy, max_relative = 1e-14);
}

#[test]
fn emission_solution_contracts() {
    assert!(EmissionSolution::new(0.0, 0.2).is_err());
    assert!(EmissionSolution::new(-1.0, 0.2).is_err());
    assert!(EmissionSolution::new(f64::INFINITY, 0.2).is_err());
    assert!(EmissionSolution::new(3.0, -0.1).is_err());
    assert!(EmissionSolution::new(3.0, 2.5).is_err());

    let mut sol = EmissionSolution::new(3.0, 0.2).unwrap();
    assert_eq!(sol.eta(), 3.0);
    assert_eq!(sol.phi0(), 0.2);
    assert!(sol.grid().is_empty());
    assert!(sol.tabulate(&[0.5, -0.1], &[1.0]).is_err());

    let zs = [0.5, 1.0, 1.5];
    let taus = [0.0, 0.7];
    sol.tabulate(&zs, &taus).unwrap();
    assert_eq!(sol.grid().len(), 6);
    // Row-major in z, with each sample matching the pointwise profiles.
    for (i, sample) in sol.grid().iter().enumerate() {
        let z = zs[i / taus.len()];
        let tau = taus[i % taus.len()];
        assert_eq!(sample.z, z);
        assert_eq!(sample.tau, tau);
        assert_eq!(sample.theta, theta_profile(&sol, z, tau));
        assert_eq!(sample.omega, rabi_profile(&sol, z, tau));
    }
}

#[test]
fn quantity_arithmetic_tracks_dimensions() {
    use units::{Dim, Quantity, JOULE, METRE, PER_SECOND, SECOND, WATT};
    let e = Quantity::new(3.0, JOULE);
    let t = Quantity::new(2.0, SECOND);
    let p = e / t;
    assert_eq!(p.dim, WATT);
    assert_eq!(p.value, 1.5);
    let rate = t.recip();
    assert_eq!(rate.dim, PER_SECOND);
    assert_eq!(rate.value, 0.5);
    let area = Quantity::new(4.0, METRE).powi(2);
    assert_eq!(area.dim, Dim::new(2, 0, 0, 0));
    assert_eq!(area.value, 16.0);
    let side = area.sqrt();
    assert_eq!(side.dim, METRE);
    assert_eq!(side.value, 4.0);
    let sum = e + Quantity::new(1.0, JOULE) - Quantity::new(0.5, JOULE);
    assert_eq!(sum.value, 3.5);
    let scaled = e * 2.0;
    assert_eq!(scaled.value, 6.0);
    assert_eq!(scaled.dim, JOULE);
}

#[test]
#[should_panic(expected = "adding quantities of different dimension")]
fn quantity_addition_requires_matching_dimensions() {
    use units::{Quantity, JOULE, SECOND};
    let _ = Quantity::new(1.0, JOULE) + Quantity::new(1.0, SECOND);
}

#[test]
#[should_panic(expected = "square root of a quantity with odd dimension exponents")]
fn quantity_sqrt_requires_even_exponents() {
    use units::{Quantity, METRE};
    let _ = Quantity::new(4.0, METRE).sqrt();
}

#[test]
fn dimension_audits_accept_the_implemented_formulas() {
    let m = MediumParams::survey();
    units::audit_signal_chain(&m);
    units::audit_pulse_duration(&m, 0.01, DEFAULT_GAMMA_R);
    units::audit_pulse_power_and_energy(&m, 0.01, DEFAULT_GAMMA_R, 1e-4, omega_ab_10nm());
}

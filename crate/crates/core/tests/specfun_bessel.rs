//! Bessel J₀/J₁ accuracy against a frozen high-precision table plus zeros,
//! the derivative identity J₀′ = −J₁, and input validation.

// Reference values are recorded with 17 significant digits as frozen.
#![allow(clippy::excessive_precision)]

use approx::assert_relative_eq;

use heun_tla::error::Error;
use heun_tla::specfun::{bessel_j, bessel_j0, bessel_j1};

/// (x, J₀(x), J₁(x)), frozen from a 40-digit evaluation.
const BESSEL_TABLE: &[(f64, f64, f64)] = &[
    (0.50000000000000000, 0.93846980724081290, 0.24226845767487389),
    (1.0000000000000000, 0.76519768655796655, 0.44005058574493352),
    (2.4048255576957730, -1.2011950073676861e-16, 0.51914749728946674),
    (3.8317059702075123, -0.40275939570255297, 6.2888607618057320e-18),
    (5.0000000000000000, -0.17759677131433830, -0.32757913759146522),
    (7.9000000000000000, 0.19436184484127832, 0.21917939992175114),
    (8.0000000000000000, 0.17165080713755391, 0.23463634685391462),
    (8.1000000000000000, 0.14751745404437758, 0.24760776698159292),
    (12.000000000000000, 0.047689310796833537, -0.22344710449062761),
    (25.000000000000000, 0.096266783275958116, -0.12535024958028990),
    (49.900000000000000, 0.045788625467907051, -0.10279695736888538),
    (50.100000000000000, 0.065258901067197444, -0.091264314667360097),
    (75.000000000000000, 0.034643913805097056, -0.085139995044829104),
    (120.00000000000000, 0.071823415829156128, -0.011805211433001891),
    (200.00000000000000, -0.015437439930565092, -0.054304538182378223),
];

#[test]
fn bessel_matches_reference_table() {
    for &(x, j0, j1) in BESSEL_TABLE {
        let got0 = bessel_j0(x).unwrap();
        let got1 = bessel_j1(x).unwrap();
        assert!(
            (got0 - j0).abs() < 1e-12,
            "J0({x}) = {got0:.17e}, want {j0:.17e}"
        );
        assert!(
            (got1 - j1).abs() < 1e-12,
            "J1({x}) = {got1:.17e}, want {j1:.17e}"
        );
    }
}

#[test]
fn bessel_at_origin() {
    assert_relative_eq!(bessel_j0(0.0).unwrap(), 1.0, max_relative = 1e-15);
    assert_eq!(bessel_j1(0.0).unwrap(), 0.0);
}

#[test]
fn bessel_first_zero_of_j0() {
    // J₀ vanishes at 2.40482555769577…; bracketing secant refinement from the
    // implementation should land within 1e−10 of the frozen zero.
    let target = 2.4048255576957730_f64;
    let mut lo = 2.0_f64;
    let mut hi = 3.0_f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_lo = bessel_j0(lo).unwrap();
        let f_mid = bessel_j0(mid).unwrap();
        if (f_lo > 0.0) == (f_mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let zero = 0.5 * (lo + hi);
    assert!(
        (zero - target).abs() < 1e-10,
        "first J0 zero found at {zero}, want {target}"
    );
}

#[test]
fn bessel_derivative_identity() {
    // J₀′(x) = −J₁(x); verify via a central difference at several points.
    let h = 1e-5;
    for x in [0.7, 2.0, 5.5, 11.0, 40.0] {
        let numeric = (bessel_j0(x + h).unwrap() - bessel_j0(x - h).unwrap()) / (2.0 * h);
        let exact = -bessel_j1(x).unwrap();
        assert!(
            (numeric - exact).abs() < 1e-9,
            "J0'({x}) = {numeric}, want {exact}"
        );
    }
}

#[test]
fn bessel_j_dispatch_by_order() {
    for &(x, j0, j1) in &BESSEL_TABLE[..4] {
        assert_relative_eq!(bessel_j(0, x).unwrap(), j0, epsilon = 1e-12);
        assert_relative_eq!(bessel_j(1, x).unwrap(), j1, epsilon = 1e-12);
    }
}

#[test]
fn bessel_rejects_unsupported_order_and_domain() {
    let err = bessel_j(2, 1.0).unwrap_err();
    assert!(matches!(err, Error::InvalidParameter(_)), "got {err:?}");
    let err = bessel_j0(-1.0).unwrap_err();
    assert!(matches!(err, Error::Domain(_)), "got {err:?}");
    let err = bessel_j1(f64::NAN).unwrap_err();
    assert!(matches!(err, Error::Domain(_)), "got {err:?}");
}

//! Gauss hypergeometric series and z = 1 summation against frozen
//! high-precision values, classical closed forms, and error contracts.

// Reference values are recorded with 17 significant digits as frozen;
// tables of tuples are kept inline rather than aliased.
#![allow(clippy::excessive_precision, clippy::type_complexity)]

use approx::assert_relative_eq;
use num_complex::Complex64;

use heun_tla::error::Error;
use heun_tla::specfun::{hyp2f1, hyp2f1_at_one};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// (a, b, c, z, F, F′), frozen from a 40-digit evaluation.
#[allow(clippy::type_complexity)]
const HYP2F1_TABLE: &[(
    (f64, f64),
    (f64, f64),
    (f64, f64),
    (f64, f64),
    (f64, f64),
    (f64, f64),
)] = &[
    (
        (1.0000000000000000, 0.0),
        (1.0000000000000000, 0.0),
        (2.0000000000000000, 0.0),
        (0.50000000000000000, 0.0),
        (1.3862943611198906, 0.0),
        (1.2274112777602188, 0.0),
    ),
    (
        (0.30000000000000000, 0.20000000000000000),
        (-0.50000000000000000, 0.10000000000000000),
        (1.1000000000000000, -0.30000000000000000),
        (0.40000000000000000, 0.25000000000000000),
        (0.97834463583356473, -0.075500306112456538),
        (-0.11690055494130463, -0.12493411200197613),
    ),
    (
        (2.5000000000000000, 0.0),
        (1.5000000000000000, 0.0),
        (3.7000000000000000, 0.0),
        (-0.75000000000000000, 0.0),
        (0.55377741592824605, 0.0),
        (0.34744865408065652, 0.0),
    ),
    (
        (0.50000000000000000, 1.2500000000000000),
        (1.0000000000000000, -0.50000000000000000),
        (2.0000000000000000, 0.30000000000000000),
        (-0.20000000000000000, 0.55000000000000000),
        (0.69407608655851343, 0.13573855180553375),
        (0.22587638627523169, 0.37044995987520318),
    ),
    (
        (0.75000000000000000, 0.0),
        (0.25000000000000000, 0.0),
        (1.5000000000000000, 0.0),
        (0.95000000000000000, 0.0),
        (1.2784803497656452, 0.0),
        (1.1681730500478249, 0.0),
    ),
];

/// (a, b, c, F(a,b;c;1)), frozen from a 40-digit evaluation.
const GAUSS_AT_ONE_TABLE: &[((f64, f64), (f64, f64), (f64, f64), (f64, f64))] = &[
    (
        (0.50000000000000000, 0.0),
        (0.25000000000000000, 0.0),
        (2.0000000000000000, 0.0),
        (1.1128357888987642, 0.0),
    ),
    (
        (0.30000000000000000, 0.20000000000000000),
        (0.10000000000000000, -0.10000000000000000),
        (2.5000000000000000, 0.50000000000000000),
        (1.0247553644110436, -0.011550412962603896),
    ),
    (
        (0.25000000000000000, 0.0),
        (0.50000000000000000, -1.2500000000000000),
        (2.2500000000000000, -1.2500000000000000),
        (1.1395466858156144, -0.18592370233885156),
    ),
];

#[test]
fn series_matches_reference_table() {
    for &(a, b, cc, z, f, fp) in HYP2F1_TABLE {
        let got = hyp2f1(c(a.0, a.1), c(b.0, b.1), c(cc.0, cc.1), c(z.0, z.1), 1e-15).unwrap();
        assert!(got.converged);
        let want = c(f.0, f.1);
        let want_d = c(fp.0, fp.1);
        assert!(
            (got.value - want).norm() <= 1e-12 * want.norm().max(1.0),
            "F mismatch at z={z:?}: {:?} vs {want}",
            got.value
        );
        assert!(
            (got.derivative - want_d).norm() <= 1e-11 * want_d.norm().max(1.0),
            "F' mismatch at z={z:?}: {:?} vs {want_d}",
            got.derivative
        );
    }
}

#[test]
fn gauss_summation_matches_reference_table() {
    for &(a, b, cc, f) in GAUSS_AT_ONE_TABLE {
        let got = hyp2f1_at_one(c(a.0, a.1), c(b.0, b.1), c(cc.0, cc.1)).unwrap();
        let want = c(f.0, f.1);
        assert!(
            (got - want).norm() <= 1e-13 * want.norm(),
            "F(1) mismatch: {got} vs {want}"
        );
    }
}

#[test]
fn closed_forms() {
    // F(1, 1; 2; 1/2) = 2 ln 2 (log series) and F(1, 1; 3; 1) = 2 by Gauss.
    let got = hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0), 1e-15).unwrap();
    assert_relative_eq!(got.value.re, 2.0 * std::f64::consts::LN_2, max_relative = 1e-13);
    assert!(got.value.im.abs() < 1e-15);

    let got = hyp2f1_at_one(c(1.0, 0.0), c(1.0, 0.0), c(3.0, 0.0)).unwrap();
    assert_relative_eq!(got.re, 2.0, max_relative = 1e-13);
    assert!(got.im.abs() < 1e-14);

    // a = 0 collapses the series to 1 regardless of the other parameters.
    let got = hyp2f1(c(0.0, 0.0), c(1.3, -0.7), c(0.9, 0.4), c(0.8, 0.1), 1e-15).unwrap();
    assert_eq!(got.value, c(1.0, 0.0));
    assert_eq!(got.derivative, c(0.0, 0.0));
}

#[test]
fn series_approaches_gauss_limit() {
    // Near z = 1 the (slow) series must approach the Gauss value; with
    // Re(c−a−b) = 1.25 the truncation error at z = 1 − 1e−6 is well below
    // 1e−4 relative.
    let a = c(0.5, 0.0);
    let b = c(0.25, 0.0);
    let cc = c(2.0, 0.0);
    let at_one = hyp2f1_at_one(a, b, cc).unwrap();
    let near = hyp2f1(a, b, cc, c(1.0 - 1e-6, 0.0), 1e-9).unwrap();
    assert!(
        (near.value - at_one).norm() < 1e-4 * at_one.norm(),
        "series {:?} vs Gauss {at_one}",
        near.value
    );
}

#[test]
fn gauss_divergence_reported() {
    // Re(c−a−b) ≤ 0 has no finite z = 1 limit.
    let err = hyp2f1_at_one(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)).unwrap_err();
    match err {
        Error::GaussDivergence { re_cab } => assert!(re_cab <= 0.0),
        other => panic!("expected GaussDivergence, got {other:?}"),
    }
    let err = hyp2f1_at_one(c(1.5, 0.3), c(1.0, 0.0), c(2.0, 0.3)).unwrap_err();
    assert!(matches!(err, Error::GaussDivergence { .. }));
}

#[test]
fn gauss_denominator_pole_gives_zero() {
    // c − a = −1 puts a pole in a denominator gamma: the limit is 0.
    let got = hyp2f1_at_one(c(2.5, 0.0), c(-2.0, 0.0), c(1.5, 0.0)).unwrap();
    assert_eq!(got, c(0.0, 0.0));
}

#[test]
fn rejects_bad_inputs() {
    // Non-positive-integer c is a pole of the function itself.
    let err = hyp2f1(c(0.5, 0.0), c(0.5, 0.0), c(-1.0, 0.0), c(0.3, 0.0), 1e-14).unwrap_err();
    assert!(matches!(err, Error::Pole(_)), "got {err:?}");
    let err = hyp2f1_at_one(c(0.1, 0.0), c(0.1, 0.0), c(0.0, 0.0)).unwrap_err();
    assert!(matches!(err, Error::Pole(_)), "got {err:?}");
    // The series is only defined inside the unit disk.
    let err = hyp2f1(c(0.5, 0.0), c(0.5, 0.0), c(1.5, 0.0), c(1.0, 0.0), 1e-14).unwrap_err();
    assert!(matches!(err, Error::Domain(_)), "got {err:?}");
    // Tolerances must be positive.
    let err = hyp2f1(c(0.5, 0.0), c(0.5, 0.0), c(1.5, 0.0), c(0.5, 0.0), 0.0).unwrap_err();
    assert!(matches!(err, Error::InvalidParameter(_)), "got {err:?}");
}

#[test]
fn polynomial_case_terminates() {
    // b a negative integer truncates the series to a polynomial:
    // F(1.3, −2; 1.7; z) = 1 − 2·1.3/1.7 z + (1.3·2.3)/(1.7·2.7)·(−2)(−1)/2 z².
    let a = 1.3;
    let b = -2.0;
    let cc = 1.7;
    let z = 0.6;
    let exact = 1.0 + (a * b / cc) * z + (a * (a + 1.0) * b * (b + 1.0) / (cc * (cc + 1.0) * 2.0)) * z * z;
    let got = hyp2f1(c(a, 0.0), c(b, 0.0), c(cc, 0.0), c(z, 0.0), 1e-15).unwrap();
    assert_relative_eq!(got.value.re, exact, max_relative = 1e-14);
    assert!(got.terms_used <= 6, "polynomial should terminate early");
}

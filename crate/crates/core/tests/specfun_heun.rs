//! Heun-equation local solutions: frozen-value tables for the series and its
//! continuation, coefficient recursion structure, hypergeometric reduction
//! identities, the second-branch parameter transform, and rejection rules.

// Reference values are recorded with 17 significant digits as frozen;
// tables of tuples are kept inline rather than aliased.
#![allow(clippy::excessive_precision, clippy::type_complexity)]

use num_complex::Complex64;

use heun_tla::error::Error;
use heun_tla::specfun::{
    heun_branch_transform, heun_coefficients, heun_continue, heun_local, hyp2f1, HeunParams,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Parameter set whose analytic branch is tabulated below:
/// a = 0, b = 1/2, c = 3/2, q = −1/32, u = 1/2 − 5i/4, v = 1/2 + 5i/4, w = 1/2.
fn base_params() -> HeunParams {
    HeunParams::new(
        c(0.0, 0.0),
        c(0.5, 0.0),
        1.5,
        c(-0.03125, 0.0),
        c(0.5, -1.25),
        c(0.5, 1.25),
        c(0.5, 0.0),
    )
    .unwrap()
}

/// Second-branch parameter set for the same equation (exponent 1 − u):
/// a* = 1/2 + 5i/4, b* = 1 + 5i/4, q* = −7/4 + 5i/2, u* = 3/2 + 5i/4,
/// v* = 1/2 + 5i/4, w = 1/2, c = 3/2.
fn transformed_params() -> HeunParams {
    HeunParams::new(
        c(0.5, 1.25),
        c(1.0, 1.25),
        1.5,
        c(-1.75, 2.5),
        c(1.5, 1.25),
        c(0.5, 1.25),
        c(0.5, 0.0),
    )
    .unwrap()
}

/// (z, y, y′) for `base_params`, frozen from a 40-digit evaluation.
const HEUN_LOCAL_TABLE: &[(f64, (f64, f64), (f64, f64))] = &[
    (
        0.15000000000000000,
        (0.99911379194633364, -0.0023329984155632480),
        (-0.0060579634062850724, -0.016851104783374683),
    ),
    (
        0.30000000000000000,
        (0.99818876588155930, -0.0050965757287312079),
        (-0.0062415071917079564, -0.020165080359713852),
    ),
    (
        0.45000000000000000,
        (0.99725892703407271, -0.0084459729747539635),
        (-0.0060612517590053193, -0.024759007660287991),
    ),
];

/// (z, y, y′) for `transformed_params`, frozen from a 40-digit evaluation.
const HEUN_TRANSFORMED_TABLE: &[(f64, (f64, f64), (f64, f64))] = &[
    (
        0.30000000000000000,
        (0.95336876264708699, 0.36485565869138293),
        (-0.49004486828688735, 1.3907653552979270),
    ),
    (
        0.45000000000000000,
        (0.83956583811117411, 0.58289520082049822),
        (-1.0761178635269822, 1.4942043620871857),
    ),
    (
        0.90000000000000000,
        (-0.40108328055682413, 0.60121274286288921),
        (-3.2676717805005119, -5.8538721458711038),
    ),
    (
        0.99900000000000000,
        (-0.057006258672220058, 0.22570088570516621),
        (-66.715667271453781, -30.726592453718393),
    ),
];

#[test]
fn coefficients_start_correctly() {
    let params = base_params();
    let table = heun_coefficients(&params, 3).unwrap();
    assert_eq!(table.s[0], c(1.0, 0.0));
    // s₁ = q/(u·c) = (−1/32) / ((1/2 − 5i/4)·(3/2)).
    let s1 = params.q / (params.u * params.c);
    assert!((table.s[1] - s1).norm() < 1e-16, "s1 = {:?}", table.s[1]);
}

#[test]
fn zero_drive_truncates_series() {
    // q = 0 with a·b = 0 kills every coefficient beyond s₀, making the
    // analytic branch identically 1.
    let params = HeunParams::new(
        c(0.0, 0.0),
        c(0.75, 0.1),
        2.0,
        c(0.0, 0.0),
        c(0.5, -0.3),
        c(0.75, 0.4),
        c(0.5, 0.0),
    )
    .unwrap();
    let table = heun_coefficients(&params, 8).unwrap();
    for s in &table.s[1..] {
        assert_eq!(*s, c(0.0, 0.0));
    }
    let val = heun_local(&params, c(0.6, 0.0), 1e-14).unwrap();
    assert_eq!(val.value, c(1.0, 0.0));
    assert_eq!(val.derivative, c(0.0, 0.0));
}

#[test]
fn coefficients_solve_the_equation() {
    // Independent verification of the recursion: partial sums of the series
    // and its term-wise derivatives must satisfy the differential equation at
    // an interior point, for many randomly shaped parameter sets.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut next = move || rng.random_range(-1.0_f64..1.0);
    for _ in 0..50 {
        let a = c(1.2 * next(), next());
        let b = c(1.2 * next(), next());
        let cc = 1.2 + 0.8 * next().abs();
        let u = c(0.6 + 0.5 * next().abs(), next());
        let w = c(0.5 + 0.4 * next().abs(), 0.3 * next());
        let v = a + b + c(1.0, 0.0) - u - w;
        let q = c(next(), next());
        let params = HeunParams::new(a, b, cc, q, u, v, w).unwrap();
        let table = heun_coefficients(&params, 80).unwrap();
        let z0 = 0.2 * params.radius();
        let (mut y, mut dy, mut d2y) = (c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let mut zp = 1.0;
        for (j, s) in table.s.iter().enumerate() {
            let jf = j as f64;
            y += s * zp;
            if j >= 1 {
                dy += s * jf * zp / z0;
            }
            if j >= 2 {
                d2y += s * jf * (jf - 1.0) * zp / (z0 * z0);
            }
            zp *= z0;
        }
        let rhs = params.ode_rhs(z0, &[y, dy]);
        let scale = d2y.norm().max(1.0);
        let residual = (d2y - rhs[1]).norm() / scale;
        assert!(
            residual < 1e-8,
            "series does not satisfy the equation: residual {residual:.3e} for {params:?}"
        );
    }
}

#[test]
fn local_matches_reference_table() {
    let params = base_params();
    for &(z, (yr, yi), (dr, di)) in HEUN_LOCAL_TABLE {
        let got = heun_local(&params, c(z, 0.0), 1e-15).unwrap();
        assert!(got.converged);
        let want = c(yr, yi);
        let want_d = c(dr, di);
        assert!(
            (got.value - want).norm() < 1e-11,
            "value mismatch at z = {z}: {:?} vs {want}",
            got.value
        );
        assert!(
            (got.derivative - want_d).norm() < 1e-11,
            "derivative mismatch at z = {z}: {:?} vs {want_d}",
            got.derivative
        );
    }
}

#[test]
fn transformed_branch_matches_reference_table() {
    let params = transformed_params();
    for &(z, (yr, yi), (dr, di)) in HEUN_TRANSFORMED_TABLE {
        let want = c(yr, yi);
        let want_d = c(dr, di);
        let (got, got_d, tol) = if z <= 0.45 {
            let r = heun_local(&params, c(z, 0.0), 1e-15).unwrap();
            (r.value, r.derivative, 1e-11)
        } else if z <= 0.9 {
            let r = heun_continue(&params, z, 1e-12).unwrap();
            (r.value, r.derivative, 1e-10)
        } else {
            let r = heun_continue(&params, z, 1e-12).unwrap();
            (r.value, r.derivative, 1e-7)
        };
        assert!(
            (got - want).norm() < tol * want.norm().max(1.0),
            "value mismatch at z = {z}: {got:?} vs {want}"
        );
        assert!(
            (got_d - want_d).norm() < tol * want_d.norm().max(1.0),
            "derivative mismatch at z = {z}: {got_d:?} vs {want_d}"
        );
    }
}

#[test]
fn branch_transform_reproduces_frozen_parameters() {
    let got = heun_branch_transform(&base_params()).unwrap();
    let want = transformed_params();
    for (name, g, w) in [
        ("a", got.a, want.a),
        ("b", got.b, want.b),
        ("q", got.q, want.q),
        ("u", got.u, want.u),
        ("v", got.v, want.v),
        ("w", got.w, want.w),
    ] {
        assert!((g - w).norm() < 1e-14, "{name}: {g} vs {w}");
    }
    assert_eq!(got.c, want.c);
}

#[test]
fn series_symmetric_under_a_b_swap() {
    let p1 = HeunParams::new(
        c(0.4, 0.3),
        c(-0.2, 0.5),
        1.7,
        c(0.15, -0.1),
        c(0.8, -0.4),
        c(0.3, 0.7),
        c(0.1, 0.5),
    )
    .unwrap();
    let p2 = HeunParams::new(p1.b, p1.a, p1.c, p1.q, p1.u, p1.v, p1.w).unwrap();
    let z = c(0.35, 0.0);
    let v1 = heun_local(&p1, z, 1e-15).unwrap();
    let v2 = heun_local(&p2, z, 1e-15).unwrap();
    assert!((v1.value - v2.value).norm() < 1e-14);
    assert!((v1.derivative - v2.derivative).norm() < 1e-14);
}

#[test]
fn merged_singularity_reduces_to_hypergeometric() {
    // With c = 1 and q = a·b the equation collapses so the analytic branch
    // is exactly ₂F₁(a, b; u; z).
    let a = c(0.4, 0.3);
    let b = c(-0.2, 0.5);
    let u = c(0.9, -0.4);
    let w = c(0.7, 0.2);
    let v = a + b + c(1.0, 0.0) - u - w;
    let params = HeunParams::new_degenerate(a, b, 1.0, a * b, u, v, w).unwrap();
    for z in [0.1, 0.35, 0.49] {
        let hl = heun_local(&params, c(z, 0.0), 1e-15).unwrap();
        let f = hyp2f1(a, b, u, c(z, 0.0), 1e-15).unwrap();
        assert!(
            (hl.value - f.value).norm() < 1e-12,
            "z = {z}: {:?} vs {:?}",
            hl.value,
            f.value
        );
        assert!((hl.derivative - f.derivative).norm() < 1e-11);
    }
}

#[test]
fn vanishing_w_reduces_to_hypergeometric_independent_of_c() {
    // With w = 0 and q = c·a·b the c-dependence cancels and the branch is
    // ₂F₁(a, b; u; z) for any c.
    let a = c(0.3, 0.2);
    let b = c(0.6, -0.4);
    let u = c(0.8, 0.3);
    let v = a + b + c(1.0, 0.0) - u;
    let z = c(0.4, 0.0);
    let f = hyp2f1(a, b, u, z, 1e-15).unwrap();
    for cc in [1.3, 1.8, 2.6] {
        let params =
            HeunParams::new(a, b, cc, a * b * cc, u, v, c(0.0, 0.0)).unwrap();
        let hl = heun_local(&params, z, 1e-15).unwrap();
        assert!(
            (hl.value - f.value).norm() < 1e-12,
            "c = {cc}: {:?} vs {:?}",
            hl.value,
            f.value
        );
    }
}

#[test]
fn continuation_agrees_with_series_inside_disk() {
    // At z = 0.4 both the direct series and the seeded ODE march are valid;
    // they must agree.
    let params = transformed_params();
    let series = heun_local(&params, c(0.4, 0.0), 1e-15).unwrap();
    let marched = heun_continue(&params, 0.4, 1e-12).unwrap();
    assert!(
        (series.value - marched.value).norm() < 1e-10,
        "series {:?} vs march {:?}",
        series.value,
        marched.value
    );
    assert!((series.derivative - marched.derivative).norm() < 1e-10);
}

#[test]
fn degenerate_continuation_approaches_gauss_value() {
    // For the c = 1, q = a·b reduction the continued branch at z → 1 must
    // approach the hypergeometric series' value there.
    let a = c(0.2, 0.1);
    let b = c(0.3, -0.2);
    let u = c(2.4, 0.0);
    let w = c(0.6, 0.1);
    let v = a + b + c(1.0, 0.0) - u - w;
    let params = HeunParams::new_degenerate(a, b, 1.0, a * b, u, v, w).unwrap();
    let marched = heun_continue(&params, 0.999, 1e-12).unwrap();
    let f = hyp2f1(a, b, u, c(0.999, 0.0), 1e-13).unwrap();
    assert!(
        (marched.value - f.value).norm() < 1e-8 * f.value.norm(),
        "march {:?} vs series {:?}",
        marched.value,
        f.value
    );
}

#[test]
fn rejects_fuchs_violation() {
    let err = HeunParams::new(
        c(0.5, 0.0),
        c(0.5, 0.0),
        1.5,
        c(0.0, 0.0),
        c(0.5, 0.0),
        c(0.5, 0.0),
        c(0.5, 0.0),
    )
    .unwrap_err();
    match err {
        Error::FuchsViolation { residual } => assert!(residual > 0.1),
        other => panic!("expected FuchsViolation, got {other:?}"),
    }
}

#[test]
fn rejects_merged_singular_points_in_strict_constructor() {
    for cc in [0.0, 1.0] {
        let a = c(0.2, 0.0);
        let b = c(0.3, 0.0);
        let u = c(0.5, 0.0);
        let w = c(0.4, 0.0);
        let v = a + b + c(1.0, 0.0) - u - w;
        let err = HeunParams::new(a, b, cc, c(0.1, 0.0), u, v, w).unwrap_err();
        assert!(
            matches!(err, Error::InvalidParameter(_)),
            "c = {cc}: got {err:?}"
        );
        // The degenerate constructor accepts the same set.
        HeunParams::new_degenerate(a, b, cc, c(0.1, 0.0), u, v, w).unwrap();
    }
}

#[test]
fn recursion_rejects_degenerate_denominators() {
    let a = c(0.2, 0.0);
    let b = c(0.3, 0.0);
    let w = c(0.4, 0.0);
    // u = 0 makes the first recursion denominator vanish.
    let u = c(0.0, 0.0);
    let v = a + b + c(1.0, 0.0) - u - w;
    let params = HeunParams::new(a, b, 1.5, c(0.1, 0.0), u, v, w).unwrap();
    let err = heun_coefficients(&params, 4).unwrap_err();
    assert!(matches!(err, Error::DegenerateParameters(_)), "got {err:?}");
    let err = heun_local(&params, c(0.2, 0.0), 1e-14).unwrap_err();
    assert!(matches!(err, Error::DegenerateParameters(_)), "got {err:?}");
    // c = 0 likewise (via the degenerate constructor so it can be built).
    let u = c(0.5, 0.0);
    let v = a + b + c(1.0, 0.0) - u - w;
    let params = HeunParams::new_degenerate(a, b, 0.0, c(0.1, 0.0), u, v, w).unwrap();
    let err = heun_coefficients(&params, 4).unwrap_err();
    assert!(matches!(err, Error::DegenerateParameters(_)), "got {err:?}");
}

#[test]
fn series_rejects_points_outside_disk() {
    let params = base_params();
    let err = heun_local(&params, c(1.0, 0.0), 1e-14).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));
    // Continuation cannot cross the singular point at 1 or reach c.
    let err = heun_continue(&params, 1.2, 1e-12).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));
    let err = heun_continue(&params, -0.2, 1e-12).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));
}

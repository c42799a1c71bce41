//! Adaptive Simpson quadrature with Richardson acceptance.
//!
//! A panel is accepted when the two-half Simpson estimate agrees with the
//! whole-panel estimate to the local budget; the returned value includes the
//! Richardson correction term.  The caller-facing tolerance is relative to a
//! coarse whole-interval estimate, so integrands of any scale (including the
//! identically-zero pulse) behave sensibly.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 60;

/// ∫_a^b f(x) dx to relative tolerance `rel_tol`.
///
/// Errors from `f` propagate; panels still unconverged at the depth limit
/// make the whole call fail with the best available estimate attached.
pub fn integrate_adaptive(
    f: impl Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "quadrature limits must be finite, got [{a}, {b}]"
        )));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "quadrature tolerance must be positive, got {rel_tol}"
        )));
    }
    if a == b {
        return Ok(0.0);
    }

    // Coarse fixed-grid pass to set the absolute error budget.
    let panels = 64usize;
    let h = (b - a) / panels as f64;
    let mut coarse = 0.0;
    for i in 0..panels {
        let x0 = a + i as f64 * h;
        let x2 = x0 + h;
        let xm = 0.5 * (x0 + x2);
        coarse += (h / 6.0) * (f(x0)? + 4.0 * f(xm)? + f(x2)?);
    }
    let abs_budget = rel_tol * coarse.abs().max(1e-300);

    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = simpson(a, b, fa, fm, fb);
    let mut best_err = 0.0;
    let value = recurse(
        &f,
        a,
        b,
        fa,
        fm,
        fb,
        whole,
        abs_budget,
        0,
        &mut best_err,
    )?;
    Ok(value)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    f: &impl Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    budget: f64,
    depth: u32,
    err_acc: &mut f64,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * budget || (b - a).abs() < 1e-14 * (a.abs() + b.abs() + 1.0) {
        *err_acc += delta.abs() / 15.0;
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_DEPTH {
        let best = left + right + delta / 15.0;
        return Err(Error::QuadratureNonConvergence {
            best,
            error_estimate: delta.abs() / 15.0,
        });
    }
    let lv = recurse(f, a, m, fa, flm, fm, left, 0.5 * budget, depth + 1, err_acc)?;
    let rv = recurse(f, m, b, fm, frm, fb, right, 0.5 * budget, depth + 1, err_acc)?;
    Ok(lv + rv)
}

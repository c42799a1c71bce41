//! Generic power-series summation.
//!
//! All local Frobenius/Taylor expansions in this crate funnel through
//! [`sum_power_series`], which sums `Σ s_j z^j` with a termination rule robust
//! to alternating-parity series (where every other term can vanish): the sum
//! is accepted only after **two consecutive** terms fall below the relative
//! tolerance.  The value and the term-by-term derivative `Σ j s_j z^{j-1}` are
//! accumulated together so callers get both from one pass.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on the number of series terms before declaring divergence.
pub const MAX_SERIES_TERMS: usize = 100_000;

/// Outcome of a converged power-series summation.
#[derive(Debug, Clone, Copy)]
pub struct SeriesResult {
    /// The summed value `Σ s_j z^j`.
    pub value: Complex64,
    /// The summed derivative `Σ j s_j z^{j-1}`.
    pub derivative: Complex64,
    /// Number of terms actually accumulated.
    pub terms_used: usize,
    /// Magnitude of the last term relative to the accumulated sum.
    pub tail_estimate: f64,
    /// Always true on `Ok`; retained for symmetry with diagnostic dumps.
    pub converged: bool,
}

/// Sums `Σ_{j≥0} s_j z^j` where `coeffs(j)` yields `s_j`.
///
/// Termination: after at least three terms, stop once two consecutive terms
/// satisfy `|s_j z^j| < tol · |sum|`.  If `MAX_SERIES_TERMS` terms do not
/// suffice, returns [`Error::SeriesDivergence`] with the relative size of the
/// last term.  At `z = 0` the first two coefficients are still consulted so
/// the derivative `s_1` is reported exactly.
pub fn sum_power_series(
    z: Complex64,
    tol: f64,
    mut coeffs: impl FnMut(usize) -> Result<Complex64>,
) -> Result<SeriesResult> {
    if z == Complex64::new(0.0, 0.0) {
        let s0 = coeffs(0)?;
        let s1 = coeffs(1)?;
        return Ok(SeriesResult {
            value: s0,
            derivative: s1,
            terms_used: 2,
            tail_estimate: 0.0,
            converged: true,
        });
    }

    let mut sum = Complex64::new(0.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0);
    // zpow tracks z^j; dzpow tracks z^{j-1} for the derivative term.
    let mut zpow = Complex64::new(1.0, 0.0);
    let mut small_streak = 0usize;
    let mut rel = f64::INFINITY;

    for j in 0..MAX_SERIES_TERMS {
        let sj = coeffs(j)?;
        let term = sj * zpow;
        sum += term;
        if j >= 1 {
            dsum += sj * (j as f64) * zpow / z;
        }
        zpow *= z;

        let scale = sum.norm();
        rel = if scale > 0.0 {
            term.norm() / scale
        } else if term.norm() == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        if j >= 2 {
            if rel < tol {
                small_streak += 1;
                if small_streak >= 2 {
                    return Ok(SeriesResult {
                        value: sum,
                        derivative: dsum,
                        terms_used: j + 1,
                        tail_estimate: rel,
                        converged: true,
                    });
                }
            } else {
                small_streak = 0;
            }
        }
    }

    Err(Error::SeriesDivergence {
        terms_used: MAX_SERIES_TERMS,
        tail_estimate: rel,
    })
}

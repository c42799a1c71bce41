//! Gauss hypergeometric function ₂F₁(a, b; c; z) with complex parameters.
//!
//! Evaluation is by the defining power series inside the unit disk; the value
//! at z = 1 (when it exists) comes from the Gauss summation formula computed
//! in log-gamma space so that large intermediate gamma values cannot
//! overflow.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{sum_power_series, SeriesResult};
use crate::specfun::gamma::log_gamma;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// ₂F₁(a, b; c; z) and its z-derivative by power series; requires |z| < 1.
pub fn hyp2f1(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    tol: f64,
) -> Result<SeriesResult> {
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!(
            "hyp2f1 parameter c = {c} is a non-positive integer"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "hyp2f1 tolerance must be positive, got {tol}"
        )));
    }
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "hyp2f1 series requires |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    // s_{j+1} = s_j (a+j)(b+j) / ((c+j)(1+j)); the driver requests terms in
    // increasing j, so one running coefficient suffices.
    let mut s = Complex64::new(1.0, 0.0);
    coefficient_series(z, tol, move |j| {
        let out = s;
        let jf = j as f64;
        s = s * (a + jf) * (b + jf) / ((c + jf) * (1.0 + jf));
        Ok(out)
    })
}

fn coefficient_series(
    z: Complex64,
    tol: f64,
    coeffs: impl FnMut(usize) -> Result<Complex64>,
) -> Result<SeriesResult> {
    sum_power_series(z, tol, coeffs)
}

/// ₂F₁(a, b; c; 1) by the Gauss summation formula
/// Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)).
///
/// Requires Re(c−a−b) > 0 (else the series diverges at z = 1); a pole of a
/// denominator gamma gives the finite limit 0.
pub fn hyp2f1_at_one(a: Complex64, b: Complex64, c: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!(
            "hyp2f1_at_one parameter c = {c} is a non-positive integer"
        )));
    }
    let cab = c - a - b;
    if cab.re <= 0.0 {
        return Err(Error::GaussDivergence { re_cab: cab.re });
    }
    if is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let log = log_gamma(c)? + log_gamma(cab)? - log_gamma(c - a)? - log_gamma(c - b)?;
    Ok(log.exp())
}

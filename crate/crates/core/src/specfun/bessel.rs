//! Bessel functions J₀ and J₁ for non-negative real argument.
//!
//! Three regimes, each validated against the others at the seams:
//! ascending series for x ≤ 8, Miller's downward recurrence with the
//! even-order normalization sum for 8 < x < 50, and the Hankel asymptotic
//! expansion for x ≥ 50.  Absolute accuracy is ≤ 1e−12 throughout.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// J_order(x) for order ∈ {0, 1} and x ≥ 0.
pub fn bessel_j(order: u8, x: f64) -> Result<f64> {
    if order > 1 {
        return Err(Error::InvalidParameter(format!(
            "bessel_j supports orders 0 and 1, got {order}"
        )));
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!(
            "bessel_j requires non-negative finite x, got {x}"
        )));
    }
    if x <= 8.0 {
        Ok(series(order, x))
    } else if x < 50.0 {
        let (j0, j1) = miller(x);
        Ok(if order == 0 { j0 } else { j1 })
    } else {
        Ok(asymptotic(order, x))
    }
}

/// Convenience wrapper for J₀.
pub fn bessel_j0(x: f64) -> Result<f64> {
    bessel_j(0, x)
}

/// Convenience wrapper for J₁.
pub fn bessel_j1(x: f64) -> Result<f64> {
    bessel_j(1, x)
}

/// Ascending series Σ (−1)^m (x/2)^{2m+ν} / (m!(m+ν)!), adequate to x = 8.
fn series(order: u8, x: f64) -> f64 {
    let half = 0.5 * x;
    let ratio = -half * half;
    let mut term = if order == 0 { 1.0 } else { half };
    let mut sum = term;
    for m in 1..200 {
        term *= ratio / (m as f64 * (m as f64 + order as f64));
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

/// Miller's algorithm: downward recurrence from a high starting order with
/// normalization J₀ + 2·Σ_{k≥1} J_{2k} = 1.
fn miller(x: f64) -> (f64, f64) {
    let start = {
        let m = x as usize + 40;
        if m.is_multiple_of(2) {
            m
        } else {
            m + 1
        }
    };
    let mut j_up = 0.0_f64; // J_{n+1} (scaled)
    let mut j_cur = 1e-30_f64; // J_n (scaled seed)
    let mut j1 = 0.0;
    let mut even_sum = 0.0; // Σ J_{2k}, k ≥ 1 (scaled)
    let mut n = start as i64;
    let j0 = loop {
        if n == 1 {
            j1 = j_cur;
        }
        if n == 0 {
            break j_cur;
        }
        if n % 2 == 0 {
            even_sum += j_cur;
        }
        let j_down = (2.0 * n as f64 / x) * j_cur - j_up;
        j_up = j_cur;
        j_cur = j_down;
        n -= 1;
        if j_cur.abs() > 1e100 {
            j_cur *= 1e-100;
            j_up *= 1e-100;
            even_sum *= 1e-100;
            j1 *= 1e-100;
        }
    };
    let norm = j0 + 2.0 * even_sum;
    (j0 / norm, j1 / norm)
}

/// Hankel asymptotic expansion, truncated at the smallest term.
fn asymptotic(order: u8, x: f64) -> f64 {
    let nu = order as f64;
    let omega = x - nu * FRAC_PI_2 - FRAC_PI_4;
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut coeff = 1.0;
    let mut prev_mag = f64::INFINITY;
    for m in 1..40u32 {
        let odd = 2.0 * m as f64 - 1.0;
        coeff *= (mu - odd * odd) / (8.0 * m as f64);
        let term = coeff / x.powi(m as i32);
        if term.abs() >= prev_mag {
            break;
        }
        match m % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        prev_mag = term.abs();
        if prev_mag < 1e-18 {
            break;
        }
    }
    (2.0 / (PI * x)).sqrt() * (p * omega.cos() - q * omega.sin())
}

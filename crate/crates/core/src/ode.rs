//! Adaptive embedded Runge–Kutta integration for small complex systems.
//!
//! The stepper is the Dormand–Prince 5(4) pair with FSAL reuse, PI step-size
//! control, and the pair's free fourth-order continuous extension for dense
//! output at caller-supplied sample times. State vectors are fixed-size arrays
//! of `Complex64`, which covers every ODE in this crate (amplitude pairs,
//! Riccati scalars, second-order equations in companion form) without
//! allocation in the inner loop.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Integration controls.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    /// Relative tolerance on the local error, per step.
    pub rel_tol: f64,
    /// Absolute tolerance on the local error, per step.
    pub abs_tol: f64,
    /// Hard cap on accepted + rejected steps.
    pub max_steps: usize,
    /// Smallest |h| permitted before declaring underflow.
    pub h_min: f64,
    /// Optional initial step magnitude; a span-based default otherwise.
    pub h_init: Option<f64>,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_steps: 10_000_000,
            h_min: 1e-12,
            h_init: None,
        }
    }
}

/// Result of an integration: the final state plus dense samples if requested.
#[derive(Debug, Clone)]
pub struct OdeSolution<const N: usize> {
    /// State at the end of the requested interval.
    pub y_end: [Complex64; N],
    /// Derivative at the end of the interval.
    pub f_end: [Complex64; N],
    /// Accepted step count.
    pub steps: usize,
    /// (t, y) at each requested sample time, in request order.
    pub samples: Vec<(f64, [Complex64; N])>,
}

const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
/// Fifth-order weights (also the a-row of the final stage, giving FSAL).
const B: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
/// Error weights b⁽⁵⁾ − b⁽⁴⁾.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
/// Dense-output polynomial coefficients: stage weight i is
/// θ·(BI[i][0] + θ·(BI[i][1] + θ·(BI[i][2] + θ·BI[i][3]))).
/// This is the pair's free fourth-order interpolant; each row sums to the
/// fifth-order weight at θ = 1, so samples join the accepted states exactly.
const BI: [[f64; 4]; 7] = [
    [1.0, -183.0 / 64.0, 37.0 / 12.0, -145.0 / 128.0],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 1500.0 / 371.0, -1000.0 / 159.0, 1000.0 / 371.0],
    [0.0, -125.0 / 32.0, 125.0 / 12.0, -375.0 / 64.0],
    [0.0, 9477.0 / 3392.0, -729.0 / 106.0, 25515.0 / 6784.0],
    [0.0, -11.0 / 7.0, 11.0 / 3.0, -55.0 / 28.0],
    [0.0, 3.0 / 2.0, -4.0, 5.0 / 2.0],
];

/// Integrates y' = f(t, y) from `t0` to `t1` (either direction).
///
/// `sample_times`, if given, must be sorted in the direction of integration
/// and lie within [t0, t1]; each is answered by the continuous extension of
/// the accepted step containing it.
pub fn integrate<const N: usize>(
    f: impl Fn(f64, &[Complex64; N]) -> [Complex64; N],
    t0: f64,
    t1: f64,
    y0: [Complex64; N],
    opts: &OdeOptions,
    sample_times: Option<&[f64]>,
) -> Result<OdeSolution<N>> {
    let span = t1 - t0;
    let dir = if span >= 0.0 { 1.0 } else { -1.0 };
    let mut samples = Vec::new();
    let mut sample_idx = 0usize;
    let sample_list = sample_times.unwrap_or(&[]);

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);

    if span == 0.0 {
        for &ts in sample_list {
            samples.push((ts, y));
        }
        return Ok(OdeSolution {
            y_end: y,
            f_end: k1,
            steps: 0,
            samples,
        });
    }

    // Capture any samples that coincide with the start point.
    while sample_idx < sample_list.len() && (sample_list[sample_idx] - t0) * dir <= 0.0 {
        samples.push((sample_list[sample_idx], y));
        sample_idx += 1;
    }

    let mut h = opts
        .h_init
        .unwrap_or(1e-4 * span.abs())
        .min(span.abs())
        .max(opts.h_min)
        * dir;
    let mut err_prev: f64 = 1e-4;
    let mut steps = 0usize;
    let mut attempts = 0usize;

    while (t - t1) * dir < 0.0 {
        attempts += 1;
        if attempts > opts.max_steps {
            return Err(Error::MaxSteps {
                max_steps: opts.max_steps,
                reached: t,
            });
        }
        if h.abs() < opts.h_min {
            return Err(Error::StepUnderflow { reached: t });
        }
        // Do not overshoot the endpoint.
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }

        let mut ytmp = y;
        for i in 0..N {
            ytmp[i] = y[i] + h * A2[0] * k1[i];
        }
        let k2 = f(t + C[0] * h, &ytmp);
        for i in 0..N {
            ytmp[i] = y[i] + h * (A3[0] * k1[i] + A3[1] * k2[i]);
        }
        let k3 = f(t + C[1] * h, &ytmp);
        for i in 0..N {
            ytmp[i] = y[i] + h * (A4[0] * k1[i] + A4[1] * k2[i] + A4[2] * k3[i]);
        }
        let k4 = f(t + C[2] * h, &ytmp);
        for i in 0..N {
            ytmp[i] = y[i] + h * (A5[0] * k1[i] + A5[1] * k2[i] + A5[2] * k3[i] + A5[3] * k4[i]);
        }
        let k5 = f(t + C[3] * h, &ytmp);
        for i in 0..N {
            ytmp[i] = y[i]
                + h * (A6[0] * k1[i] + A6[1] * k2[i] + A6[2] * k3[i] + A6[3] * k4[i]
                    + A6[4] * k5[i]);
        }
        let k6 = f(t + C[4] * h, &ytmp);
        let mut y_new = y;
        for i in 0..N {
            y_new[i] = y[i]
                + h * (B[0] * k1[i] + B[2] * k3[i] + B[3] * k4[i] + B[4] * k5[i] + B[5] * k6[i]);
        }
        let k7 = f(t + h, &y_new);

        // Weighted RMS error over components.
        let mut err_sq = 0.0;
        for i in 0..N {
            let e_i = h
                * (E[0] * k1[i]
                    + E[2] * k3[i]
                    + E[3] * k4[i]
                    + E[4] * k5[i]
                    + E[5] * k6[i]
                    + E[6] * k7[i]);
            let scale = opts.abs_tol + opts.rel_tol * y[i].norm().max(y_new[i].norm());
            let r = e_i.norm() / scale;
            err_sq += r * r;
        }
        let err = (err_sq / N as f64).sqrt();

        if err <= 1.0 {
            // Accept; interpolate any samples inside (t, t+h].
            let t_new = t + h;
            if sample_idx < sample_list.len() && (sample_list[sample_idx] - t_new) * dir <= 0.0 {
                let ks = [&k1, &k2, &k3, &k4, &k5, &k6, &k7];
                while sample_idx < sample_list.len()
                    && (sample_list[sample_idx] - t_new) * dir <= 0.0
                {
                    let ts = sample_list[sample_idx];
                    samples.push((ts, dense(t, &y, h, &ks, ts)));
                    sample_idx += 1;
                }
            }
            t = t_new;
            y = y_new;
            k1 = k7; // FSAL
            steps += 1;
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2) * err_prev.powf(0.04)).clamp(0.2, 5.0)
            };
            err_prev = err.max(1e-10);
            h *= factor;
        } else {
            h *= (0.9 * err.powf(-0.2)).max(0.2);
        }
    }

    // Any trailing samples at (numerically) the endpoint.
    while sample_idx < sample_list.len() {
        samples.push((sample_list[sample_idx], y));
        sample_idx += 1;
    }

    Ok(OdeSolution {
        y_end: y,
        f_end: k1,
        steps,
        samples,
    })
}

/// Continuous-extension evaluation inside one accepted step of size `h`.
fn dense<const N: usize>(
    t0: f64,
    y0: &[Complex64; N],
    h: f64,
    ks: &[&[Complex64; N]; 7],
    ts: f64,
) -> [Complex64; N] {
    let theta = (ts - t0) / h;
    let mut w = [0.0_f64; 7];
    for (wi, row) in w.iter_mut().zip(BI.iter()) {
        *wi = theta * (row[0] + theta * (row[1] + theta * (row[2] + theta * row[3])));
    }
    let mut out = *y0;
    for i in 0..N {
        let mut acc = Complex64::new(0.0, 0.0);
        for (wi, k) in w.iter().zip(ks.iter()) {
            acc += *wi * k[i];
        }
        out[i] += h * acc;
    }
    out
}

//! Embedded Dormand-Prince 5(4) integrator over complex state vectors.
//!
//! Steps are clamped so that every requested output time is hit exactly;
//! together with fixed evaluation order this makes trajectories bit-stable
//! for identical inputs.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

use crate::{Error, Result};

/// Integrator tolerances and guards.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    /// Relative tolerance (also used as absolute; states are O(1) normalized).
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        OdeOptions { rtol: tol, atol: tol, max_steps: 50_000_000 }
    }
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions::with_tol(1e-9)
    }
}

/// Step and evaluation counters, reported in trajectory metadata.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OdeStats {
    pub steps_accepted: usize,
    pub steps_rejected: usize,
    pub rhs_evals: usize,
}

// Dormand-Prince RK5(4)7M tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// b (5th order) equals A[6]; e = b - bhat gives the embedded error estimate.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate y' = rhs(t, y) from `t0`, producing the state at each time in
/// `t_out` (strictly increasing, `t_out[0] >= t0`).
pub fn integrate_at<F>(
    mut rhs: F,
    y0: &[Complex64],
    t0: f64,
    t_out: &[f64],
    opts: &OdeOptions,
) -> Result<(Vec<Vec<Complex64>>, OdeStats)>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let n = y0.len();
    let mut stats = OdeStats::default();
    let mut outputs: Vec<Vec<Complex64>> = Vec::with_capacity(t_out.len());

    let mut y: Vec<Complex64> = y0.to_vec();
    let mut t = t0;
    let t_end = *t_out.last().unwrap_or(&t0);
    let t_scale = t_end.abs().max(t0.abs()).max(1e-300);

    let mut k: [Vec<Complex64>; 7] = core::array::from_fn(|_| vec![Complex64::default(); n]);
    let mut y_stage = vec![Complex64::default(); n];
    let mut y_new = vec![Complex64::default(); n];

    let mut out_idx = 0;
    // emit any outputs that coincide with t0
    while out_idx < t_out.len() && (t_out[out_idx] - t).abs() <= 1e-15 * t_scale {
        outputs.push(y.clone());
        out_idx += 1;
    }
    if out_idx == t_out.len() {
        return Ok((outputs, stats));
    }

    // initial slope and step size heuristic
    let (k0, rest) = k.split_at_mut(1);
    rhs(t, &y, &mut k0[0]);
    let _ = rest;
    stats.rhs_evals += 1;
    let f_norm = rms_norm(&k[0]);
    let span = t_end - t0;
    let mut h = if f_norm > 0.0 { (0.01 / f_norm).min(span.abs() * 0.1) } else { span.abs() * 0.1 };
    h = h.max(1e-12 * t_scale);
    let mut k1_fresh = true;

    while out_idx < t_out.len() {
        if stats.steps_accepted + stats.steps_rejected > opts.max_steps {
            return Err(Error::StepUnderflow { t, step: h });
        }
        let t_target = t_out[out_idx];
        let h_step = h.min(t_target - t);
        if h_step <= 1e-15 * t_scale.max(t.abs()) {
            return Err(Error::StepUnderflow { t, step: h_step });
        }

        if !k1_fresh {
            rhs(t, &y, &mut k[0]);
            stats.rhs_evals += 1;
            k1_fresh = true;
        }

        // stages 2..7
        for s in 1..7 {
            for i in 0..n {
                let mut acc = Complex64::default();
                for (r, k_r) in k.iter().enumerate().take(s) {
                    let a = A[s][r];
                    if a != 0.0 {
                        acc += a * k_r[i];
                    }
                }
                y_stage[i] = y[i] + h_step * acc;
            }
            if s == 6 {
                // stage 7 input is the 5th-order solution itself (FSAL)
                y_new.copy_from_slice(&y_stage);
            }
            let (head, tail) = k.split_at_mut(s);
            rhs(t + C[s] * h_step, &y_stage, &mut tail[0]);
            let _ = head;
            stats.rhs_evals += 1;
        }

        // embedded error estimate
        let mut err_sq = 0.0f64;
        for i in 0..n {
            let mut e = Complex64::default();
            for (r, k_r) in k.iter().enumerate() {
                if E[r] != 0.0 {
                    e += E[r] * k_r[i];
                }
            }
            let e = h_step * e;
            let sc = opts.atol + opts.rtol * y[i].norm().max(y_new[i].norm());
            let q = e.norm() / sc;
            err_sq += q * q;
        }
        let err = (err_sq / n as f64).sqrt();

        if err <= 1.0 {
            t += h_step;
            core::mem::swap(&mut y, &mut y_new);
            k.swap(0, 6); // FSAL: k7 becomes next k1
            stats.steps_accepted += 1;
            if (t_target - t).abs() <= 1e-15 * t_scale.max(t.abs()) {
                t = t_target;
                outputs.push(y.clone());
                out_idx += 1;
                // coincident output times
                while out_idx < t_out.len()
                    && (t_out[out_idx] - t).abs() <= 1e-15 * t_scale.max(t.abs())
                {
                    outputs.push(y.clone());
                    out_idx += 1;
                }
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h = (h_step * factor).max(1e-14 * t_scale);
        } else {
            stats.steps_rejected += 1;
            k1_fresh = true; // k[0] still holds f(t, y)
            let factor = (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            h = h_step * factor;
            if h <= 1e-15 * t_scale.max(t.abs()) {
                return Err(Error::StepUnderflow { t, step: h });
            }
        }
    }

    Ok((outputs, stats))
}

fn rms_norm(v: &[Complex64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    (v.iter().map(|z| z.norm_sqr()).sum::<f64>() / v.len() as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_rotation_exact_frequency() {
        // y' = -i w y  =>  y(t) = exp(-i w t)
        let w = 3.0;
        let y0 = [Complex64::new(1.0, 0.0)];
        let t_out = [0.5, 1.0, 2.0, 7.0];
        let opts = OdeOptions::with_tol(1e-11);
        let (ys, stats) =
            integrate_at(|_t, y, dy| dy[0] = Complex64::new(0.0, -w) * y[0], &y0, 0.0, &t_out, &opts)
                .unwrap();
        for (t, y) in t_out.iter().zip(&ys) {
            let want = Complex64::from_polar(1.0, -w * t);
            assert!((y[0] - want).norm() < 1e-9, "t={t}");
        }
        assert!(stats.steps_accepted > 0);
    }

    #[test]
    fn driven_phase_matches_quadrature() {
        // y' = -i cos(t) y => y = exp(-i sin t)
        let y0 = [Complex64::new(1.0, 0.0)];
        let t_out = [3.0];
        let opts = OdeOptions::with_tol(1e-12);
        let (ys, _) = integrate_at(
            |t, y, dy| dy[0] = Complex64::new(0.0, -t.cos()) * y[0],
            &y0,
            0.0,
            &t_out,
            &opts,
        )
        .unwrap();
        let want = Complex64::from_polar(1.0, -(3.0f64).sin());
        assert!((ys[0][0] - want).norm() < 1e-10);
    }

    #[test]
    fn output_at_t0_and_duplicates() {
        let y0 = [Complex64::new(2.0, 0.0)];
        let t_out = [0.0, 0.0, 1.0];
        let opts = OdeOptions::default();
        let (ys, _) =
            integrate_at(|_t, _y, dy| dy[0] = Complex64::default(), &y0, 0.0, &t_out, &opts)
                .unwrap();
        assert_eq!(ys.len(), 3);
        assert_eq!(ys[0][0], y0[0]);
        assert_eq!(ys[1][0], y0[0]);
        assert_eq!(ys[2][0], y0[0]);
    }

    #[test]
    fn deterministic_repeat() {
        let y0 = [Complex64::new(0.6, 0.8), Complex64::new(0.0, 0.0)];
        let rhs = |t: f64, y: &[Complex64], dy: &mut [Complex64]| {
            dy[0] = Complex64::new(0.0, -1.3 * t.sin()) * y[1];
            dy[1] = Complex64::new(0.0, -1.3 * t.sin()) * y[0];
        };
        let t_out = [0.7, 1.9];
        let opts = OdeOptions::default();
        let (a, sa) = integrate_at(rhs, &y0, 0.0, &t_out, &opts).unwrap();
        let (b, sb) = integrate_at(rhs, &y0, 0.0, &t_out, &opts).unwrap();
        assert_eq!(sa, sb);
        for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
            assert_eq!(x, y);
        }
    }
}

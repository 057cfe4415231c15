//! Batch Fourier analysis on uniform Gauss-Legendre panel grids.
//!
//! A window of Fourier coefficients `{f̂_k : |k| ≤ N}` is obtained from one
//! composite quadrature rule: `P` uniform panels over `[-π, π)` carrying the
//! same 8-point Gauss-Legendre rule. For a fixed node offset the panel sums
//! are a length-`P` DFT, so all coefficients come out of eight FFTs over
//! samples that are evaluated once. Panels containing declared breakpoints
//! or singular points are re-integrated with a refined rule and the
//! difference is patched into every coefficient.

use crate::quad::{GL8_NODES, GL8_WEIGHTS};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::{PI, TAU};

fn next_pow2(n: usize) -> usize {
    n.next_power_of_two()
}

/// Number of uniform panels used for a coefficient window of half-width
/// `n_max` on a function with the given oscillation hint.
pub fn panel_count(n_max: usize, oscillation: f64) -> usize {
    let omega = oscillation.max(1.0) + n_max as f64;
    let p = (8.0 * omega).ceil() as usize;
    next_pow2(p.max(64).max(2 * n_max + 2))
}

/// Refined sub-rule nodes/weights for a panel `[a, b]` with interior special
/// points. Kinks get a split plus four sub-panels per side; singular points
/// get a geometric cascade toward the singularity.
fn refined_rule(a: f64, b: f64, specials: &[(f64, bool)]) -> Vec<(f64, f64)> {
    let mut cuts = vec![a, b];
    for &(s, _) in specials {
        if s > a && s < b {
            cuts.push(s);
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let mut rule = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi - lo <= 0.0 {
            continue;
        }
        let sing_lo = specials.iter().any(|&(s, sing)| sing && s == lo);
        let sing_hi = specials.iter().any(|&(s, sing)| sing && s == hi);
        // geometric stack toward a singular endpoint, plain split otherwise
        let mut segments: Vec<(f64, f64)> = Vec::new();
        if sing_lo || sing_hi {
            let levels = 48;
            let mut edges = Vec::with_capacity(levels + 1);
            for j in 0..=levels {
                edges.push(0.5f64.powi(j as i32));
            }
            // edges run 1 -> 2^-48 relative to the segment
            for e in edges.windows(2) {
                let (t0, t1) = (e[1], e[0]);
                if sing_lo {
                    segments.push((lo + t0 * (hi - lo), lo + t1 * (hi - lo)));
                } else {
                    segments.push((hi - t1 * (hi - lo), hi - t0 * (hi - lo)));
                }
            }
        } else {
            let sub = 4;
            for i in 0..sub {
                let t0 = lo + (hi - lo) * i as f64 / sub as f64;
                let t1 = lo + (hi - lo) * (i + 1) as f64 / sub as f64;
                segments.push((t0, t1));
            }
        }
        for (s0, s1) in segments {
            let mid = 0.5 * (s0 + s1);
            let half = 0.5 * (s1 - s0);
            for g in 0..8 {
                rule.push((mid + half * GL8_NODES[g], half * GL8_WEIGHTS[g]));
            }
        }
    }
    rule
}

/// Compute `f̂_k = (1/2π) ∫ f(t) e^{-ikt} dt` for `|k| ≤ n_max`.
///
/// `breaks` and `singular` must lie in `[-π, π]`. The result vector is
/// indexed by `k + n_max`.
pub fn fourier_window<F: Fn(f64) -> Complex64>(
    f: F,
    n_max: usize,
    oscillation: f64,
    breaks: &[f64],
    singular: &[f64],
) -> Vec<Complex64> {
    let p = panel_count(n_max, oscillation);
    let w = TAU / p as f64;
    let len = 2 * n_max + 1;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); len];

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(p);
    let mut buf = vec![Complex64::new(0.0, 0.0); p];

    for g in 0..8 {
        let xi = 0.5 * w * (1.0 + GL8_NODES[g]);
        let weight = 0.5 * w * GL8_WEIGHTS[g];
        for (i, slot) in buf.iter_mut().enumerate() {
            *slot = f(-PI + i as f64 * w + xi);
        }
        fft.process(&mut buf);
        // phase e^{-ik(-pi+xi)} applied per k
        for k in -(n_max as i64)..=(n_max as i64) {
            let idx = (k.rem_euclid(p as i64)) as usize;
            let phase = Complex64::from_polar(1.0, -(k as f64) * (-PI + xi));
            coeffs[(k + n_max as i64) as usize] += weight * phase * buf[idx];
        }
    }

    // Patch panels containing breaks or singular points.
    let mut specials: Vec<(f64, bool)> = Vec::new();
    for &t in breaks {
        if t > -PI && t < PI {
            specials.push((t, false));
        }
    }
    for &t in singular {
        if t > -PI && t < PI {
            specials.push((t, true));
        }
    }
    if !specials.is_empty() {
        let mut panel_ids: Vec<usize> = specials
            .iter()
            .map(|&(t, _)| (((t + PI) / w).floor() as usize).min(p - 1))
            .collect();
        panel_ids.sort_unstable();
        panel_ids.dedup();
        for pid in panel_ids {
            let a = -PI + pid as f64 * w;
            let b = a + w;
            let local: Vec<(f64, bool)> = specials
                .iter()
                .copied()
                .filter(|&(t, _)| t >= a && t <= b)
                .collect();
            let fine = refined_rule(a, b, &local);
            // coarse rule on this panel, negated
            let mut nodes: Vec<(f64, f64)> = fine;
            for g in 0..8 {
                let t = a + 0.5 * w * (1.0 + GL8_NODES[g]);
                nodes.push((t, -0.5 * w * GL8_WEIGHTS[g]));
            }
            // accumulate weight * f(t) * e^{-ikt} over k via rotation
            for (t, wt) in nodes {
                let fv = f(t);
                if fv.re == 0.0 && fv.im == 0.0 {
                    continue;
                }
                let base = wt * fv;
                let rot = Complex64::from_polar(1.0, -t);
                let mut z = Complex64::from_polar(1.0, n_max as f64 * t); // e^{-i(-n)t}
                for (j, slot) in coeffs.iter_mut().enumerate() {
                    *slot += base * z;
                    z *= rot;
                    if j % 1024 == 1023 {
                        let k = j as i64 + 1 - n_max as i64;
                        z = Complex64::from_polar(1.0, -(k as f64) * t);
                    }
                }
            }
        }
    }

    for c in coeffs.iter_mut() {
        *c /= TAU;
    }
    coeffs
}

/// Evaluate `p(t) = Σ c_k e^{ikt}` on the uniform grid
/// `t_j = -π + j·(2π/P) + offset`, `j = 0..P`, via one inverse FFT.
///
/// `coeffs` is indexed by `k + n`, `P` must be a power of two `> 2n`.
pub fn eval_grid(coeffs: &[Complex64], n: usize, p: usize, offset: f64) -> Vec<Complex64> {
    assert!(p > 2 * n, "grid too small for degree");
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_inverse(p);
    let mut buf = vec![Complex64::new(0.0, 0.0); p];
    for k in -(n as i64)..=(n as i64) {
        let c = coeffs[(k + n as i64) as usize];
        let idx = (k.rem_euclid(p as i64)) as usize;
        buf[idx] += c * Complex64::from_polar(1.0, k as f64 * (-PI + offset));
    }
    fft.process(&mut buf);
    buf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_of_single_harmonic() {
        // f(t) = e^{3it}: hat_3 = 1, others 0
        let c = fourier_window(
            |t| Complex64::from_polar(1.0, 3.0 * t),
            5,
            4.0,
            &[],
            &[],
        );
        for k in -5i64..=5 {
            let v = c[(k + 5) as usize];
            let expect = if k == 3 { 1.0 } else { 0.0 };
            assert!(
                (v - Complex64::new(expect, 0.0)).norm() < 1e-12,
                "k={k} v={v}"
            );
        }
    }

    #[test]
    fn window_of_sign_function() {
        // hat_k = -2i/(pi k) for odd k, 0 for even
        let c = fourier_window(
            |t| Complex64::new(if t >= 0.0 { 1.0 } else { -1.0 }, 0.0),
            9,
            1.0,
            &[0.0],
            &[],
        );
        for k in 1i64..=9 {
            let v = c[(k + 9) as usize];
            let expect = if k % 2 == 1 {
                Complex64::new(0.0, -2.0 / (PI * k as f64))
            } else {
                Complex64::new(0.0, 0.0)
            };
            assert!((v - expect).norm() < 1e-10, "k={k} v={v} expect={expect}");
        }
    }

    #[test]
    fn eval_grid_matches_direct() {
        let n = 7usize;
        let coeffs: Vec<Complex64> = (0..(2 * n + 1))
            .map(|j| Complex64::new(1.0 / (1.0 + j as f64), 0.3 * (j as f64).sin()))
            .collect();
        let p = 64usize;
        let offset = 0.01;
        let grid = eval_grid(&coeffs, n, p, offset);
        for j in [0usize, 5, 31, 63] {
            let t = -PI + j as f64 * TAU / p as f64 + offset;
            let mut direct = Complex64::new(0.0, 0.0);
            for k in -(n as i64)..=(n as i64) {
                direct += coeffs[(k + n as i64) as usize] * Complex64::from_polar(1.0, k as f64 * t);
            }
            assert!((grid[j] - direct).norm() < 1e-11);
        }
    }
}

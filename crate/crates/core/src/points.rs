//! Classification of points by the averaged integral `(1/h)∫₀ʰ f(x+t) dt`
//! and construction of divergence witness functions.

use crate::error::{Error, Result};
use crate::periodic::PeriodicFunction;
use crate::quad::{self, QuadOptions};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Three-valued verdict: numerical limits cannot certify nonexistence, so
/// `Inconclusive` is reported whenever the evidence is mixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of [`classify_point`].
#[derive(Clone, Debug)]
pub struct PointClassification {
    pub x: f64,
    pub d_estimate: Option<Complex64>,
    /// `(h, two-sided averaged quotient)` per schedule entry.
    pub d_residuals: Vec<(f64, Complex64)>,
    /// `(h, (1/h)∫₀ʰ|f(x±t) − d| dt averaged over both signs)`.
    pub l_residuals: Vec<(f64, f64)>,
    pub verdict_d: Verdict,
    pub verdict_l: Verdict,
}

/// Geometric schedule `h0 · ratio^j`, `j = 0..count`.
pub fn geometric_schedule(h0: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|j| h0 * ratio.powi(j as i32)).collect()
}

/// Estimate whether `x` is a d-point / l-point of `f`.
///
/// For each `h` in the schedule the one-sided averages
/// `q± = (1/±h)∫₀^{±h} f(x+t) dt` are computed by adaptive quadrature; the
/// d-verdict demands that the final three two-sided quotients agree within
/// `tol` and across the signs of `h`. The l-residuals are computed against
/// the accepted d-value.
pub fn classify_point(
    f: &PeriodicFunction,
    x: f64,
    h_schedule: &[f64],
    tol: f64,
) -> Result<PointClassification> {
    if h_schedule.len() < 5 {
        return Err(Error::param("h_schedule", "need at least 5 values"));
    }
    if !h_schedule.windows(2).all(|w| w[1] < w[0]) || h_schedule.iter().any(|&h| h <= 0.0) {
        return Err(Error::param("h_schedule", "must be strictly decreasing and positive"));
    }
    if !(tol > 0.0) {
        return Err(Error::param("tol", "must be positive"));
    }

    let forced: Vec<f64> = f
        .piece_breaks()
        .iter()
        .chain(f.singular_points().iter())
        .map(|b| (b - x + PI).rem_euclid(std::f64::consts::TAU) - PI)
        .collect();
    let quotient = |h: f64| -> Result<Complex64> {
        let opts = QuadOptions {
            tol: 1e-12 + 1e-10 * h.abs(),
            oscillation: f.oscillation(),
            forced: forced
                .iter()
                .copied()
                .filter(|u| *u > h.min(0.0) && *u < h.max(0.0))
                .collect(),
            ..QuadOptions::default()
        };
        Ok(quad::integrate(|u| f.eval(x + u), 0.0, h, &opts)? / h)
    };

    let mut plus = Vec::with_capacity(h_schedule.len());
    let mut minus = Vec::with_capacity(h_schedule.len());
    let mut d_residuals = Vec::with_capacity(h_schedule.len());
    for &h in h_schedule {
        let qp = quotient(h)?;
        let qm = quotient(-h)?;
        plus.push(qp);
        minus.push(qm);
        d_residuals.push((h, 0.5 * (qp + qm)));
    }

    let m = d_residuals.len();
    let last3 = &d_residuals[m - 3..];
    let side_gap = (0..3)
        .map(|i| (plus[m - 3 + i] - minus[m - 3 + i]).norm())
        .fold(0.0, f64::max);
    let pair_gap = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .map(|(i, j)| (last3[i].1 - last3[j].1).norm())
        .fold(0.0, f64::max);

    let (verdict_d, d_estimate) = if side_gap <= tol && pair_gap <= tol {
        let d = (last3[0].1 + last3[1].1 + last3[2].1) / 3.0;
        (Verdict::Yes, Some(d))
    } else {
        // disagreement that is not shrinking marks a firm "no"
        let prev_gap = if m >= 4 {
            (plus[m - 4] - minus[m - 4])
                .norm()
                .max((d_residuals[m - 4].1 - d_residuals[m - 3].1).norm())
        } else {
            0.0
        };
        let gap = side_gap.max(pair_gap);
        if gap > 10.0 * tol && gap > 0.45 * prev_gap {
            (Verdict::No, None)
        } else {
            (Verdict::Inconclusive, None)
        }
    };

    let mut l_residuals = Vec::new();
    let mut verdict_l = match verdict_d {
        Verdict::Yes => Verdict::Inconclusive,
        v => v,
    };
    if let Some(d) = d_estimate {
        for &h in h_schedule {
            let opts = QuadOptions {
                tol: 1e-12 + 1e-10 * h,
                oscillation: f.oscillation(),
                forced: forced.iter().copied().filter(|u| u.abs() < h).map(|u| u.abs()).collect(),
                ..QuadOptions::default()
            };
            let rp = quad::integrate_real(|u| (f.eval(x + u) - d).norm(), 0.0, h, &opts)? / h;
            let rm = quad::integrate_real(|u| (f.eval(x - u) - d).norm(), 0.0, h, &opts)? / h;
            l_residuals.push((h, 0.5 * (rp + rm)));
        }
        let lm = l_residuals.len();
        let tail = &l_residuals[lm - 3..];
        let decreasing = tail.windows(2).all(|w| w[1].1 <= w[0].1 + tol);
        if decreasing && tail[2].1 <= tol {
            verdict_l = Verdict::Yes;
        } else if tail[2].1 > 100.0 * tol && tail[2].1 >= 0.5 * tail[0].1 {
            verdict_l = Verdict::No;
        }
    }

    Ok(PointClassification {
        x,
        d_estimate,
        d_residuals,
        l_residuals,
        verdict_d,
        verdict_l,
    })
}

/// Decreasing-to-zero sequences for [`oscillating_witness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessScheme {
    /// `x_s = π/(s+1)`; the ratio `x_{s+1}/x_s → 1`, so 0 is a d-point.
    Harmonic,
    /// `x_s = π·2^{-s}`; the ratio is 1/2, so 0 is not a d-point.
    Dyadic,
}

/// The step witness `g(t) = (-1)^s` on `(x_{s+1}, x_s]`, `g = 0` on `[-π, 0]`.
///
/// Piece breaks are recorded down to a resolution floor; beyond it the
/// evaluator still follows the exact sequence.
pub fn oscillating_witness(scheme: WitnessScheme) -> PeriodicFunction {
    let (label, level): (&str, fn(f64) -> i64) = match scheme {
        WitnessScheme::Harmonic => ("oscillating_g:harmonic", |t: f64| {
            // s with t in (pi/(s+2), pi/(s+1)]
            ((PI / t).ceil() as i64 - 1).max(0)
        }),
        WitnessScheme::Dyadic => ("oscillating_g:dyadic", |t: f64| {
            // s with t in (pi 2^{-s-1}, pi 2^{-s}]
            ((PI / t).log2().ceil() as i64).max(0)
        }),
    };
    let breaks: Vec<f64> = match scheme {
        WitnessScheme::Harmonic => (1..=4096).map(|s| PI / s as f64).collect(),
        WitnessScheme::Dyadic => (0..=44).map(|s| PI * 0.5f64.powi(s)).collect(),
    };
    let mut all_breaks = vec![0.0];
    all_breaks.extend(breaks);
    PeriodicFunction::real(label, move |t| {
        if t <= 0.0 {
            0.0
        } else {
            let s = level(t);
            if s % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        }
    })
    .with_breaks(all_breaks)
    .with_oscillation(64.0)
}

/// Construction parameters for [`counterexample_pair`].
#[derive(Clone, Debug)]
pub struct CounterexampleParams {
    pub base_q: u64,
    pub exponent_p: u32,
    pub levels: u32,
    pub amplitude_exponent: f64,
    pub inner_fill: InnerFill,
    pub degree_cap: u64,
}

/// The paper construction is infinite; a truncation at `K` levels must
/// choose values inside `|t| < π/n_K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerFill {
    /// Continue the innermost level `a_K sin(n_K |t|)` down to 0.
    Continuation,
    /// Zero inside the innermost breakpoint.
    Zero,
}

impl Default for CounterexampleParams {
    fn default() -> Self {
        CounterexampleParams {
            base_q: 3,
            exponent_p: 2,
            levels: 3,
            amplitude_exponent: 1.5,
            inner_fill: InnerFill::Continuation,
            degree_cap: 20_000,
        }
    }
}

impl CounterexampleParams {
    /// `n_k = q^{k^p}` for `k = 0..=levels`.
    pub fn frequencies(&self) -> Result<Vec<u64>> {
        if self.base_q < 2 {
            return Err(Error::param("q", "need base q >= 2"));
        }
        if self.exponent_p < 2 {
            return Err(Error::param("p", "need exponent p >= 2"));
        }
        if self.levels < 2 {
            return Err(Error::param("K", "need at least 2 levels"));
        }
        let mut out = Vec::with_capacity(self.levels as usize + 1);
        for k in 0..=self.levels {
            let e = (k as u64).checked_pow(self.exponent_p).ok_or(Error::DegreeCap {
                degree: u64::MAX,
                cap: self.degree_cap,
            })?;
            let n = self
                .base_q
                .checked_pow(e.try_into().map_err(|_| Error::DegreeCap {
                    degree: u64::MAX,
                    cap: self.degree_cap,
                })?)
                .ok_or(Error::DegreeCap {
                    degree: u64::MAX,
                    cap: self.degree_cap,
                })?;
            if n > self.degree_cap {
                return Err(Error::DegreeCap {
                    degree: n,
                    cap: self.degree_cap,
                });
            }
            out.push(n);
        }
        Ok(out)
    }

    /// `a_k = k^{-amplitude_exponent}`.
    pub fn amplitude(&self, k: u32) -> f64 {
        (k as f64).powf(-self.amplitude_exponent)
    }
}

/// Builds the pair `(F0, f0)`: `F0(t) = a_k sin(n_k |t|)` on
/// `π/n_k ≤ |t| ≤ π/n_{k-1}` and `f0 = F0 + t·F0'` piecewise, so that
/// `(1/t)∫₀^t f0 = F0`.
pub fn counterexample_pair(
    params: &CounterexampleParams,
) -> Result<(PeriodicFunction, PeriodicFunction)> {
    let freqs = params.frequencies()?;
    let levels = params.levels as usize;
    // segment list: (amplitude, frequency, t_lo, t_hi) for t > 0
    let mut segs: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(levels + 1);
    for k in 1..=levels {
        segs.push((
            params.amplitude(k as u32),
            freqs[k] as f64,
            PI / freqs[k] as f64,
            PI / freqs[k - 1] as f64,
        ));
    }
    match params.inner_fill {
        InnerFill::Continuation => {
            segs.push((
                params.amplitude(levels as u32),
                freqs[levels] as f64,
                0.0,
                PI / freqs[levels] as f64,
            ));
        }
        InnerFill::Zero => {}
    }
    segs.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap());

    let mut breaks: Vec<f64> = Vec::new();
    for k in 1..=levels {
        breaks.push(PI / freqs[k] as f64);
        breaks.push(-(PI / freqs[k] as f64));
    }
    breaks.push(0.0);

    let fill = params.inner_fill;
    let osc = freqs[levels] as f64;
    let lookup = move |segs: &[(f64, f64, f64, f64)], t: f64| -> Option<(f64, f64)> {
        let a = t.abs();
        segs.iter()
            .find(|&&(_, _, lo, hi)| a >= lo && a <= hi)
            .map(|&(amp, freq, _, _)| (amp, freq))
    };

    let segs_f0 = segs.clone();
    let label_suffix = format!(
        "q={},p={},K={},amp={},fill={:?}",
        params.base_q, params.exponent_p, params.levels, params.amplitude_exponent, fill
    );
    let f_big = PeriodicFunction::real(format!("counterexample_F0[{label_suffix}]"), move |t| {
        match lookup(&segs, t) {
            Some((amp, freq)) => amp * (freq * t.abs()).sin(),
            None => 0.0,
        }
    })
    .with_breaks(breaks.clone())
    .with_oscillation(osc);

    let f_small = PeriodicFunction::real(format!("counterexample_f0[{label_suffix}]"), move |t| {
        match lookup(&segs_f0, t) {
            Some((amp, freq)) => {
                let u = freq * t.abs();
                amp * (u.sin() + u * u.cos())
            }
            None => 0.0,
        }
    })
    .with_breaks(breaks)
    .with_oscillation(osc);

    Ok((f_big, f_small))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::integrate_periodic;

    #[test]
    fn classify_cos_at_zero() {
        let f = PeriodicFunction::real("cos", f64::cos);
        let sched = geometric_schedule(0.4, 0.25, 10);
        let c = classify_point(&f, 0.0, &sched, 1e-4).unwrap();
        assert_eq!(c.verdict_d, Verdict::Yes);
        let d = c.d_estimate.unwrap();
        assert!((d.re - 1.0).abs() < 1e-4, "d = {d}");
        assert_eq!(c.verdict_l, Verdict::Yes);
    }

    #[test]
    fn classify_sign_at_zero() {
        let f = PeriodicFunction::real("sign", |t| if t >= 0.0 { 1.0 } else { -1.0 })
            .with_breaks(vec![0.0]);
        let sched = geometric_schedule(0.4, 0.25, 8);
        let c = classify_point(&f, 0.0, &sched, 1e-4).unwrap();
        assert_eq!(c.verdict_d, Verdict::No);
        assert!(c.d_estimate.is_none());
    }

    #[test]
    fn witness_values_and_integral() {
        let g = oscillating_witness(WitnessScheme::Harmonic);
        // t = 3 lies in (pi/2, pi], s = 0 -> +1
        assert!((g.eval(3.0).re - 1.0).abs() < 1e-15);
        // t in (pi/3, pi/2] -> s = 1 -> -1
        assert!((g.eval(1.2).re + 1.0).abs() < 1e-15);
        assert_eq!(g.eval(-1.0).re, 0.0);

        // integral over (0, pi]: alternating sum of interval lengths (oracle)
        let mut oracle = 0.0;
        for s in 0..200_000 {
            let hi = PI / (s as f64 + 1.0);
            let lo = PI / (s as f64 + 2.0);
            oracle += if s % 2 == 0 { hi - lo } else { lo - hi };
        }
        let v = integrate_periodic(&g, 0.0, PI, 1e-8).unwrap().re;
        // quadrature resolves pieces down to the recorded break floor
        assert!((v - oracle).abs() < 2e-3, "v={v} oracle={oracle}");
    }

    #[test]
    fn witness_classification() {
        let sched = geometric_schedule(0.4, 0.5, 9);
        let g = oscillating_witness(WitnessScheme::Harmonic);
        let c = classify_point(&g, 0.0, &sched, 2e-2).unwrap();
        assert_eq!(c.verdict_d, Verdict::Yes, "residuals {:?}", c.d_residuals);
        assert!(c.d_estimate.unwrap().norm() < 2e-2);
        // |g| = 1 on (0, pi]: the l-residual tends to 1/2 two-sided (0 on the left)
        assert_ne!(c.verdict_l, Verdict::Yes);
        let last = c.l_residuals.last().unwrap().1;
        assert!((last - 0.5).abs() < 0.05, "l residual {last}");

        let g = oscillating_witness(WitnessScheme::Dyadic);
        let c = classify_point(&g, 0.0, &sched, 2e-2).unwrap();
        assert_eq!(c.verdict_d, Verdict::No);
    }

    #[test]
    fn counterexample_continuity_and_values() {
        let params = CounterexampleParams {
            levels: 2,
            ..CounterexampleParams::default()
        };
        let (f_big, _) = counterexample_pair(&params).unwrap();
        // continuity at breakpoints: both sides evaluate to 0 at pi/n_k
        for &t in &[PI / 3.0, PI / 81.0] {
            let a = f_big.eval(t - 1e-9).re;
            let b = f_big.eval(t + 1e-9).re;
            assert!(a.abs() < 1e-6 && b.abs() < 1e-6, "t={t} a={a} b={b}");
        }
        // F0(pi/2) = a_1 sin(3 pi/2) = -1
        assert!((f_big.eval(PI / 2.0).re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn counterexample_average_recovers_big_function() {
        // (1/t) int_0^t f0 = F0 at assorted t
        let params = CounterexampleParams::default();
        let (f_big, f_small) = counterexample_pair(&params).unwrap();
        for &t in &[0.9, PI / 4.0, 0.02, -1.3] {
            let avg = integrate_periodic(&f_small, 0.0, t, 1e-10).unwrap() / t;
            let expect = f_big.eval(t);
            assert!(
                (avg - expect).norm() < 1e-7,
                "t={t}: avg={avg} F0={expect}"
            );
        }
    }

    #[test]
    fn counterexample_degree_cap() {
        let params = CounterexampleParams {
            levels: 4,
            ..CounterexampleParams::default()
        };
        assert!(matches!(
            counterexample_pair(&params),
            Err(Error::DegreeCap { .. })
        ));
    }

    #[test]
    fn counterexample_classified_as_d_point() {
        let (_, f_small) = counterexample_pair(&CounterexampleParams::default()).unwrap();
        let sched = geometric_schedule(0.4, 0.25, 15);
        let c = classify_point(&f_small, 0.0, &sched, 2e-3).unwrap();
        assert_eq!(c.verdict_d, Verdict::Yes);
        assert!(c.d_estimate.unwrap().norm() <= 1e-3);
    }
}

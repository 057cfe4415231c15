//! Convergence experiments: the summability identity for averaged
//! primitives, its rate bound, the divergence construction, the necessary
//! condition for summability kernels, the Lebesgue-method identity, and the
//! partial-sum transfer relations between a function and its primitive.

use crate::error::{Error, Result};
use crate::multipliers::{catalog_family, linear_means_tol, MultiplierFamily};
use crate::periodic::{
    averaged_primitive, coefficient_window, modulus_of_continuity, partial_sum_tol,
    window_coefficient, CumulativeIntegral, PeriodicFunction,
};
use crate::points::{classify_point, counterexample_pair, geometric_schedule, CounterexampleParams, Verdict};
use crate::record::{ExperimentRecord, Status};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

fn fejer_family() -> MultiplierFamily {
    catalog_family("fejer", &BTreeMap::new()).expect("fejer is always available")
}

/// Options for [`theorem1_experiment`].
#[derive(Clone, Default)]
pub struct Theorem1Options {
    /// Known d-value at `x`; classified from scratch when absent.
    pub d_value: Option<Complex64>,
    /// Precomputed averaged primitive `F_x` (used by the divergence pair,
    /// where the closed form is available).
    pub f_x: Option<PeriodicFunction>,
    pub tol: f64,
}

impl Theorem1Options {
    pub fn with_d(d: Complex64) -> Self {
        Theorem1Options {
            d_value: Some(d),
            f_x: None,
            tol: 1e-9,
        }
    }
}

/// `σ_n(f;x) + s_n(F_x;0) → 2d` with the fitted rate bound
/// `C·(ω(F_x; ln n/n) + 1/n)`, `C` frozen at the smallest `n`.
pub fn theorem1_experiment(
    f: &PeriodicFunction,
    x: f64,
    n_list: &[usize],
    opts: &Theorem1Options,
) -> Result<Vec<ExperimentRecord>> {
    if n_list.is_empty() {
        return Err(Error::param("n_list", "must not be empty"));
    }
    let tol = if opts.tol > 0.0 { opts.tol } else { 1e-9 };
    let d = match opts.d_value {
        Some(d) => d,
        None => {
            let sched = geometric_schedule(0.4, 0.25, 12);
            let c = classify_point(f, x, &sched, 1e-4)?;
            match (c.verdict_d, c.d_estimate) {
                (Verdict::Yes, Some(d)) => d,
                _ => return Err(Error::MissingDValue(x)),
            }
        }
    };
    let f_x = match &opts.f_x {
        Some(g) => g.clone(),
        None => averaged_primitive(f, x, Some(d)),
    };
    let fejer = fejer_family();
    let reference = 2.0 * d;

    let mut fitted_c: Option<f64> = None;
    let mut records = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let sigma = linear_means_tol(f, &fejer, n, x, tol)?;
        let s_f = partial_sum_tol(&f_x, n, 0.0, tol)?;
        let value = sigma + s_f;
        let h = (n as f64).ln().max(1e-6) / n as f64;
        let omega = modulus_of_continuity(&f_x, h.min(std::f64::consts::TAU), 4096)?;
        let scale = omega + 1.0 / n as f64;
        let err = (value - reference).norm();
        let c = *fitted_c.get_or_insert(err / scale);
        let bound = c * scale;
        let status = if err <= bound * (1.0 + 1e-9) {
            Status::WithinBound
        } else {
            Status::Failed
        };
        records.push(ExperimentRecord::new(
            format!("theorem1:{}", f.label()),
            n as u64,
            value,
            reference,
            Some(bound),
            status,
        ));
    }
    Ok(records)
}

/// Rate of the arithmetic means of a continuous `F` at 0:
/// `|F(0) − σ_n(F;0)| ≤ c·ω(F; ln(n+1)/(n+1))`, `c` fitted once.
pub fn fejer_rate_check(f_big: &PeriodicFunction, n_list: &[usize]) -> Result<Vec<ExperimentRecord>> {
    if n_list.is_empty() {
        return Err(Error::param("n_list", "must not be empty"));
    }
    let fejer = fejer_family();
    let reference = f_big.eval(0.0);
    let mut fitted_c: Option<f64> = None;
    let mut records = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let sigma = linear_means_tol(f_big, &fejer, n, 0.0, 1e-9)?;
        let err = (sigma - reference).norm();
        let h = (n as f64 + 1.0).ln() / (n as f64 + 1.0);
        let omega = modulus_of_continuity(f_big, h, 4096)?;
        let c = *fitted_c.get_or_insert(if omega > 0.0 { err / omega } else { 0.0 });
        let bound = c * omega;
        let status = if err <= bound * (1.0 + 1e-9) + 1e-14 {
            Status::WithinBound
        } else {
            Status::Failed
        };
        records.push(ExperimentRecord::new(
            format!("fejer_rate:{}", f_big.label()),
            n as u64,
            sigma,
            reference,
            Some(bound),
            status,
        ));
    }
    Ok(records)
}

/// Margin for "strictly increasing" in [`divergence_experiment`].
pub const DIVERGENCE_MARGIN: f64 = 0.05;

/// Records `s_{n_k}(F0;0)` and `σ_{n_k}(f0;0)`.
///
/// The partial sums must climb by at least [`DIVERGENCE_MARGIN`] per level
/// while the means mirror them: `|σ + s|` stays below a bound frozen from
/// the base level (`C` fitted at `n_1`, applied at the `n_1` scale, since
/// `ω(F0; ln n/n)` does not tend to zero for this construction).
pub fn divergence_experiment(params: &CounterexampleParams) -> Result<Vec<ExperimentRecord>> {
    let (f_big, f_small) = counterexample_pair(params)?;
    let freqs = params.frequencies()?;
    let fejer = fejer_family();
    let tol = 1e-9;

    let mut s_vals = Vec::new();
    let mut sums = Vec::new();
    let mut omegas = Vec::new();
    for k in 1..=params.levels as usize {
        let n = freqs[k] as usize;
        let s = partial_sum_tol(&f_big, n, 0.0, tol)?;
        let sigma = linear_means_tol(&f_small, &fejer, n, 0.0, tol)?;
        let h = (n as f64).ln() / n as f64;
        omegas.push(modulus_of_continuity(&f_big, h, 4096)?);
        s_vals.push(s);
        sums.push(sigma + s);
    }

    let increasing = s_vals
        .windows(2)
        .all(|w| w[1].re >= w[0].re + DIVERGENCE_MARGIN);
    let n1 = freqs[1] as f64;
    let base_scale = omegas[0] + 1.0 / n1;
    let c = sums[0].norm() / base_scale;
    let uniform_bound = c * base_scale * (1.0 + 1e-9);
    let drift_ok = sums.iter().all(|s| s.norm() <= uniform_bound);

    let mut records = Vec::new();
    for (i, k) in (1..=params.levels as usize).enumerate() {
        let n = freqs[k];
        records.push(ExperimentRecord::new(
            "divergence_s",
            n,
            s_vals[i],
            Complex64::new(0.0, 0.0),
            None,
            if increasing { Status::Diverging } else { Status::Failed },
        ));
        records.push(ExperimentRecord::new(
            "divergence_sigma_plus_s",
            n,
            sums[i],
            Complex64::new(0.0, 0.0),
            Some(uniform_bound),
            if drift_ok { Status::WithinBound } else { Status::Failed },
        ));
    }
    Ok(records)
}

/// `∫₀^δ g(t) K_n(t) dt → 0` for a witness `g` with `d_g(0) = 0`.
///
/// Evaluated through the coefficient identity
/// `∫₀^δ g K_n = Σ_k λ_{k,n} ∫₀^δ g e^{ikt} dt`, the windowed transforms
/// coming from one batched pass over `g·1_{[0,δ]}`.
pub fn necessary_condition_experiment(
    fam: &MultiplierFamily,
    g: &PeriodicFunction,
    delta: f64,
    n_list: &[usize],
    tol: f64,
) -> Result<Vec<ExperimentRecord>> {
    if !(delta > 0.0 && delta <= PI) {
        return Err(Error::param("delta", "need 0 < delta <= pi"));
    }
    // g gated to [0, delta], shared across n
    let gate = g.clone();
    let mut breaks: Vec<f64> = g
        .piece_breaks()
        .iter()
        .copied()
        .filter(|t| *t > 0.0 && *t < delta)
        .collect();
    breaks.push(0.0);
    breaks.push(delta);
    let g_delta = Arc::new(
        PeriodicFunction::new(format!("{}|[0,{delta}]", g.label()), move |t| {
            if (0.0..=delta).contains(&t) {
                gate.eval(t)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .with_breaks(breaks)
        .with_oscillation(g.oscillation()),
    );

    let mut values = Vec::new();
    for &n in n_list {
        let weights = fam.weights(n);
        let window = coefficient_window(&g_delta, weights.window, tol)?;
        // int_0^delta g e^{ikt} dt = 2 pi * hat{g_delta}(-k)
        let mut acc = Complex64::new(0.0, 0.0);
        for k in -(weights.window as i64)..=weights.window as i64 {
            acc += weights.lambda(k) * std::f64::consts::TAU * window_coefficient(&window, -k);
        }
        values.push(acc);
    }
    let max_v = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let last = values.last().map(|v| v.norm()).unwrap_or(0.0);
    let ok = last <= (0.05 * max_v).max(0.02);
    let mut records = Vec::new();
    for (&n, v) in n_list.iter().zip(values.iter()) {
        records.push(ExperimentRecord::new(
            format!("necessary_condition:{}:{}", fam.label(), g.label()),
            n as u64,
            *v,
            Complex64::new(0.0, 0.0),
            None,
            if ok { Status::TrendOk } else { Status::Failed },
        ));
    }
    Ok(records)
}

/// Smoothing-method identity: `Σ_k sinc(kε) f̂_k e^{ikx}` against the
/// symmetric difference quotient `(F(x+ε) − F(x−ε))/(2ε)` of the primitive.
pub fn lebesgue_method_identity(
    f: &PeriodicFunction,
    x: f64,
    eps: f64,
    tol: f64,
) -> Result<ExperimentRecord> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::param("eps", "need 0 < eps <= 1"));
    }
    let weights = crate::multipliers::lebesgue_weights(eps);
    let window = coefficient_window(f, weights.window, 1e-9)?;
    let mut value = weights.lambda(0) * window_coefficient(&window, 0);
    for k in 1..=weights.window as i64 {
        let e = Complex64::from_polar(1.0, k as f64 * x);
        value += weights.lambda(k) * window_coefficient(&window, k) * e;
        value += weights.lambda(-k) * window_coefficient(&window, -k) * e.conj();
    }
    let cum = CumulativeIntegral::new(f.clone(), 0.0);
    let reference = (cum.value_to(x + eps) - cum.value_to(x - eps)) / (2.0 * eps);
    let err = (value - reference).norm();
    Ok(ExperimentRecord::new(
        format!("lebesgue_identity:{}", f.label()),
        weights.window as u64,
        value,
        reference,
        Some(tol),
        if err <= tol { Status::WithinBound } else { Status::Failed },
    ))
}

/// Floor below which `n·r_n` counts as vanished in [`salem_checks`].
pub const SALEM_FLOOR: f64 = 1e-9;

/// Partial-sum transfer checks between `f` (with `f̂₀ = 0`) and its
/// primitive `F`: the sup-norm inequality
/// `‖F − s_n(F)‖ ≤ π/(2n+2)·‖f − s_n(f)‖` on a grid, and the residual
/// `r_n = [F − s_n(F)](x + π/2n) − (1/n)[f(x) − s_n(f;x)]` with
/// `n·r_n → 0`.
pub fn salem_checks(
    f: &PeriodicFunction,
    x: f64,
    n_list: &[usize],
    tol: f64,
) -> Result<Vec<ExperimentRecord>> {
    let f0 = crate::periodic::fourier_coefficient(f, 0, 1e-10)?;
    if f0.norm() > tol.max(1e-8) {
        return Err(Error::param("f", format!("mean must vanish, got {f0}")));
    }
    let cum = Arc::new(CumulativeIntegral::new(f.clone(), 0.0));
    let cum_eval = cum.clone();
    let f_breaks = f.piece_breaks().to_vec();
    let big_f = PeriodicFunction::new(format!("primitive[{}]", f.label()), move |t| {
        cum_eval.value_to(t)
    })
    .with_breaks(f_breaks)
    .with_oscillation(f.oscillation())
    .with_real_valued(f.is_real_valued());

    let grid: Vec<f64> = (0..512).map(|i| -PI + std::f64::consts::TAU * i as f64 / 512.0).collect();
    let mut records = Vec::new();
    let mut prev_nr: Option<f64> = None;
    for &n in n_list {
        let wf = coefficient_window(f, n.max(1), 1e-9)?;
        let wbig = coefficient_window(&big_f, n.max(1), 1e-9)?;
        let sum_at = |window: &[Complex64], t: f64| {
            let mut acc = window_coefficient(window, 0);
            for k in 1..=n as i64 {
                let e = Complex64::from_polar(1.0, k as f64 * t);
                acc += window_coefficient(window, k) * e + window_coefficient(window, -k) * e.conj();
            }
            acc
        };
        let mut sup_f = 0.0f64;
        let mut sup_big = 0.0f64;
        for &t in &grid {
            sup_f = sup_f.max((f.eval(t) - sum_at(&wf, t)).norm());
            sup_big = sup_big.max((big_f.eval(t) - sum_at(&wbig, t)).norm());
        }
        let bound = PI / (2.0 * n as f64 + 2.0) * sup_f;
        records.push(ExperimentRecord::new(
            format!("bohr_bernstein:{}", f.label()),
            n as u64,
            Complex64::new(sup_big, 0.0),
            Complex64::new(0.0, 0.0),
            Some(bound),
            if sup_big <= bound * (1.0 + 1e-9) + 1e-12 {
                Status::WithinBound
            } else {
                Status::Failed
            },
        ));

        let shift = x + PI / (2.0 * n as f64);
        let lhs = big_f.eval(shift) - sum_at(&wbig, shift);
        let rhs = (f.eval(x) - sum_at(&wf, x)) / n as f64;
        let r_n = lhs - rhs;
        let nr = (n as f64) * r_n.norm();
        let ok = nr <= SALEM_FLOOR || prev_nr.map_or(true, |p| nr <= p * (1.0 + 1e-9));
        prev_nr = Some(nr.max(SALEM_FLOOR));
        records.push(ExperimentRecord::new(
            format!("salem_residual:{}", f.label()),
            n as u64,
            Complex64::new(nr, 0.0),
            Complex64::new(0.0, 0.0),
            None,
            if ok { Status::TrendOk } else { Status::Failed },
        ));
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn theorem1_constant_function() {
        let c = PeriodicFunction::real("const", |_| 1.25);
        let recs = theorem1_experiment(
            &c,
            0.3,
            &[4, 8],
            &Theorem1Options::with_d(Complex64::new(1.25, 0.0)),
        )
        .unwrap();
        for r in &recs {
            assert!((r.value.re - 2.5).abs() < 1e-8, "{:?}", r);
            assert_eq!(r.status, Status::WithinBound);
        }
    }

    #[test]
    fn theorem1_smooth_mix_decreases() {
        let f = catalog::resolve("cos_plus_sin2t").unwrap();
        let recs = theorem1_experiment(
            &f,
            0.0,
            &[8, 16, 32, 64],
            &Theorem1Options::with_d(Complex64::new(1.0, 0.0)),
        )
        .unwrap();
        for w in recs.windows(2) {
            assert!(w[1].error <= w[0].error * 1.05, "{:?}", recs);
        }
        for r in &recs {
            assert_eq!(r.status, Status::WithinBound, "{:?}", r);
        }
    }

    #[test]
    fn fejer_rate_constant_and_abs() {
        let one = PeriodicFunction::real("one", |_| 1.0);
        let recs = fejer_rate_check(&one, &[4, 8, 16]).unwrap();
        for r in &recs {
            assert!(r.error < 1e-9);
        }

        let abs_t = catalog::resolve("abs_t").unwrap();
        let recs = fejer_rate_check(&abs_t, &[8, 16, 32, 64]).unwrap();
        for r in &recs {
            assert_eq!(r.status, Status::WithinBound, "{:?}", r);
        }
    }

    #[test]
    fn lebesgue_identity_single_harmonic() {
        let e1 = PeriodicFunction::new("e^{it}", |t| Complex64::from_polar(1.0, t));
        let eps = 0.2;
        let rec = lebesgue_method_identity(&e1, 0.5, eps, 1e-6).unwrap();
        let expect = (eps.sin() / eps) * Complex64::from_polar(1.0, 0.5);
        assert!((rec.value - expect).norm() < 1e-6, "{:?}", rec);
        assert_eq!(rec.status, Status::WithinBound);

        let c = PeriodicFunction::real("const", |_| 0.75);
        let rec = lebesgue_method_identity(&c, 0.1, 0.3, 1e-6).unwrap();
        assert!((rec.value.re - 0.75).abs() < 1e-7);
        assert!((rec.reference.re - 0.75).abs() < 1e-9);
    }

    #[test]
    fn salem_single_high_harmonic() {
        // f = cos((n+1)t) at fixed n: s_n(f) = 0, F - s_n(F) has sup 1/(n+1)
        let n = 6usize;
        let f = PeriodicFunction::real("cos7t", move |t| (7.0 * t).cos()).with_oscillation(7.0);
        let recs = salem_checks(&f, 0.0, &[n], 1e-8).unwrap();
        let bb = &recs[0];
        assert!((bb.value.re - 1.0 / 7.0).abs() < 1e-6, "{:?}", bb);
        let bound = bb.bound.unwrap();
        assert!((bound - PI / 14.0).abs() < 1e-6);
        assert_eq!(bb.status, Status::WithinBound);
    }

    #[test]
    fn salem_residual_nontrivial_function() {
        // |t| - pi/2 is continuous with zero mean and genuinely non-polynomial
        let f = PeriodicFunction::real("abs_t_centered", |t| t.abs() - PI / 2.0)
            .with_breaks(vec![0.0]);
        let recs = salem_checks(&f, 0.0, &[8, 16, 32, 64], 1e-7).unwrap();
        let residuals: Vec<f64> = recs
            .iter()
            .filter(|r| r.experiment.starts_with("salem_residual"))
            .map(|r| r.value.re)
            .collect();
        assert!(residuals.windows(2).all(|w| w[1] <= w[0] * 1.05), "{residuals:?}");
        for r in recs.iter().filter(|r| r.experiment.starts_with("bohr")) {
            assert_eq!(r.status, Status::WithinBound, "{:?}", r);
        }
    }

    #[test]
    fn salem_rejects_nonzero_mean() {
        let f = PeriodicFunction::real("one", |_| 1.0);
        assert!(salem_checks(&f, 0.0, &[4, 8, 12, 16, 20], 1e-8).is_err());
    }

    #[test]
    fn necessary_condition_zero_witness() {
        let z = PeriodicFunction::real("zero", |_| 0.0);
        let fam = fejer_family();
        let recs = necessary_condition_experiment(&fam, &z, PI, &[4, 8], 1e-9).unwrap();
        for r in &recs {
            assert!(r.value.norm() < 1e-10);
            assert_eq!(r.status, Status::TrendOk);
        }
    }
}

//! 2π-periodic integrable functions: representation, quadrature, Fourier
//! coefficients, partial sums, averaged primitives, moduli of continuity.

use crate::error::{Error, Result};
use crate::fftgrid;
use crate::quad::{self, QuadOptions};
use crate::DEFAULT_TOL;
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::sync::{Arc, Mutex};

type Evaluator = dyn Fn(f64) -> Complex64 + Send + Sync;

struct Inner {
    label: String,
    eval: Box<Evaluator>,
    singular_points: Vec<f64>,
    piece_breaks: Vec<f64>,
    oscillation: f64,
    real_valued: bool,
    coeff_cache: Mutex<HashMap<(i64, u64), Complex64>>,
    window_cache: Mutex<HashMap<u64, (usize, Arc<Vec<Complex64>>)>>,
}

/// An evaluatable 2π-periodic function with declared singular points and
/// piecewise structure; the object `f ∈ L₁(𝕋)`.
///
/// Values are looked up on `[-π, π)` after range reduction. The coefficient
/// caches are shared across clones and safe to use from multiple threads.
#[derive(Clone)]
pub struct PeriodicFunction {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for PeriodicFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PeriodicFunction")
            .field("label", &self.inner.label)
            .field("breaks", &self.inner.piece_breaks.len())
            .field("singular", &self.inner.singular_points)
            .field("oscillation", &self.inner.oscillation)
            .finish()
    }
}

impl PeriodicFunction {
    pub fn new<F>(label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        PeriodicFunction {
            inner: Arc::new(Inner {
                label: label.into(),
                eval: Box::new(eval),
                singular_points: Vec::new(),
                piece_breaks: Vec::new(),
                oscillation: 1.0,
                real_valued: false,
                coeff_cache: Mutex::new(HashMap::new()),
                window_cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn real<F>(label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        PeriodicFunction::new(label, move |t| Complex64::new(eval(t), 0.0)).with_real_valued(true)
    }

    fn edit(self, f: impl FnOnce(&mut Inner)) -> Self {
        let mut inner = match Arc::try_unwrap(self.inner) {
            Ok(inner) => inner,
            Err(_) => panic!("builder methods must run before the function is shared"),
        };
        f(&mut inner);
        PeriodicFunction {
            inner: Arc::new(inner),
        }
    }

    pub fn with_breaks(self, mut breaks: Vec<f64>) -> Self {
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup();
        self.edit(move |i| i.piece_breaks = breaks)
    }

    pub fn with_singular(self, mut points: Vec<f64>) -> Self {
        points.sort_by(|a, b| a.partial_cmp(b).unwrap());
        points.dedup();
        self.edit(move |i| i.singular_points = points)
    }

    /// Highest local harmonic frequency to expect while panelling.
    pub fn with_oscillation(self, osc: f64) -> Self {
        self.edit(move |i| i.oscillation = osc.max(1.0))
    }

    /// Declare real-valuedness (label metadata, never inferred by sampling).
    pub fn with_real_valued(self, yes: bool) -> Self {
        self.edit(move |i| i.real_valued = yes)
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn piece_breaks(&self) -> &[f64] {
        &self.inner.piece_breaks
    }

    pub fn singular_points(&self) -> &[f64] {
        &self.inner.singular_points
    }

    pub fn oscillation(&self) -> f64 {
        self.inner.oscillation
    }

    pub fn is_real_valued(&self) -> bool {
        self.inner.real_valued
    }

    /// Evaluate after range reduction to `[-π, π)`.
    pub fn eval(&self, t: f64) -> Complex64 {
        let r = (t + PI).rem_euclid(TAU) - PI;
        (self.inner.eval)(r)
    }

    pub fn eval_re(&self, t: f64) -> f64 {
        self.eval(t).re
    }

    fn forced_points(&self, a: f64, b: f64) -> Vec<f64> {
        self.inner
            .piece_breaks
            .iter()
            .chain(self.inner.singular_points.iter())
            .copied()
            .filter(|t| *t > a && *t < b)
            .collect()
    }
}

/// `∫_a^b f(t) dt` with `[a,b] ⊆ [-π, π]`, refined adaptively around the
/// declared breakpoints and singular points.
pub fn integrate_periodic(f: &PeriodicFunction, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    if a < -PI - 1e-12 || b > PI + 1e-12 {
        return Err(Error::param("range", format!("[{a}, {b}] not inside [-pi, pi]")));
    }
    let opts = QuadOptions {
        tol,
        oscillation: f.oscillation(),
        forced: f.forced_points(a.min(b), a.max(b)),
        ..QuadOptions::default()
    };
    quad::integrate(|t| f.eval(t), a, b, &opts)
}

/// `f̂_k = (1/2π) ∫ f(t) e^{-ikt} dt`, cached per `(k, tol)`.
pub fn fourier_coefficient(f: &PeriodicFunction, k: i64, tol: f64) -> Result<Complex64> {
    let key = (k, tol.to_bits());
    if let Some(v) = f.inner.coeff_cache.lock().unwrap().get(&key) {
        return Ok(*v);
    }
    let opts = QuadOptions {
        tol,
        oscillation: f.oscillation() + k.unsigned_abs() as f64,
        forced: f.forced_points(-PI, PI),
        ..QuadOptions::default()
    };
    let v = quad::integrate(
        |t| f.eval(t) * Complex64::from_polar(1.0, -(k as f64) * t),
        -PI,
        PI,
        &opts,
    )? / TAU;
    f.inner.coeff_cache.lock().unwrap().insert(key, v);
    Ok(v)
}

/// Window of coefficients `|k| ≤ n`, computed in one batched pass and
/// cached; repeated requests reuse the widest window already computed.
pub fn coefficient_window(f: &PeriodicFunction, n: usize, tol: f64) -> Result<Arc<Vec<Complex64>>> {
    let key = tol.to_bits();
    {
        let cache = f.inner.window_cache.lock().unwrap();
        if let Some((have, vec)) = cache.get(&key) {
            if *have >= n {
                return Ok(vec.clone());
            }
        }
    }
    let coeffs = fftgrid::fourier_window(
        |t| f.eval(t),
        n,
        f.oscillation(),
        &f.inner.piece_breaks,
        &f.inner.singular_points,
    );
    let arc = Arc::new(coeffs);
    f.inner
        .window_cache
        .lock()
        .unwrap()
        .insert(key, (n, arc.clone()));
    Ok(arc)
}

/// Fetch `f̂_k` out of a window produced by [`coefficient_window`].
pub fn window_coefficient(window: &[Complex64], k: i64) -> Complex64 {
    let n = (window.len() - 1) / 2;
    let idx = k + n as i64;
    if idx < 0 || idx >= window.len() as i64 {
        Complex64::new(0.0, 0.0)
    } else {
        window[idx as usize]
    }
}

/// A computed family of Fourier coefficients over `|k| ≤ n`.
#[derive(Clone, Debug)]
pub struct FourierCoefficients {
    n: usize,
    tol: f64,
    coeffs: Arc<Vec<Complex64>>,
}

impl FourierCoefficients {
    pub fn compute(f: &PeriodicFunction, n: usize, tol: f64) -> Result<Self> {
        Ok(FourierCoefficients {
            n,
            tol,
            coeffs: coefficient_window(f, n, tol)?,
        })
    }

    pub fn get(&self, k: i64) -> Complex64 {
        window_coefficient(&self.coeffs, k)
    }

    pub fn half_width(&self) -> usize {
        self.n
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }
}

/// `s_n(f; x) = Σ_{|k|≤n} f̂_k e^{ikx}`; coefficients are computed once per
/// `(f, n)` and reused across evaluation points.
pub fn partial_sum(f: &PeriodicFunction, n: usize, x: f64) -> Result<Complex64> {
    partial_sum_tol(f, n, x, DEFAULT_TOL)
}

pub fn partial_sum_tol(f: &PeriodicFunction, n: usize, x: f64, tol: f64) -> Result<Complex64> {
    let window = coefficient_window(f, n, tol)?;
    let mut acc = window_coefficient(&window, 0);
    for k in 1..=n as i64 {
        let e = Complex64::from_polar(1.0, k as f64 * x);
        acc += window_coefficient(&window, k) * e + window_coefficient(&window, -k) * e.conj();
    }
    Ok(acc)
}

/// The averaged primitive `F_x(t) = (1/t) ∫₀^t f(x+u) du`.
///
/// `F_x(0)` is the d-value at `x`: taken from `d_value` when supplied,
/// otherwise estimated from a two-sided shrinking-interval probe. When
/// neither settles, 0 is recorded as a singular point of the result and
/// evaluation at 0 yields NaN.
pub fn averaged_primitive(
    f: &PeriodicFunction,
    x: f64,
    d_value: Option<Complex64>,
) -> PeriodicFunction {
    let cumulative = CumulativeIntegral::new(f.clone(), x);
    let d = d_value.or_else(|| probe_d_value(&cumulative));
    let label = format!("avgprim[{};x={x}]", f.label());
    let cum = Arc::new(cumulative);
    let cum_eval = cum.clone();
    let d_for_eval = d;
    let mut breaks: Vec<f64> = f
        .piece_breaks()
        .iter()
        .chain(f.singular_points().iter())
        .map(|t| {
            let r = (t - x + PI).rem_euclid(TAU) - PI;
            r
        })
        .collect();
    breaks.push(0.0);
    let osc = f.oscillation();
    let real = f.is_real_valued();
    let base = PeriodicFunction::new(label, move |t| {
        if t.abs() < 1e-14 {
            return d_for_eval.unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        }
        cum_eval.value_to(t) / t
    })
    .with_breaks(breaks)
    .with_oscillation(osc)
    .with_real_valued(real);
    if d.is_none() {
        base.with_singular(vec![0.0])
    } else {
        base
    }
}

fn probe_d_value(cum: &CumulativeIntegral) -> Option<Complex64> {
    let mut qs: Vec<Complex64> = Vec::new();
    let mut h = 0.3;
    for _ in 0..14 {
        let qp = cum.value_to(h) / h;
        let qm = cum.value_to(-h) / -h;
        qs.push(0.5 * (qp + qm));
        let m = qs.len();
        if m >= 3 {
            let a = qs[m - 3];
            let b = qs[m - 2];
            let c = qs[m - 1];
            let tol = 2e-5;
            if (a - b).norm() < tol && (b - c).norm() < tol && (qp - qm).norm() < tol {
                return Some(c);
            }
        }
        h *= 0.25;
    }
    None
}

/// Incremental cache for `t ↦ ∫₀^t f(x+u) du`.
///
/// Queried points become anchors; a new point only integrates from its
/// nearest existing anchor, so batch evaluation over a grid costs one sweep
/// of the period regardless of query order.
pub struct CumulativeIntegral {
    f: PeriodicFunction,
    x: f64,
    anchors: Mutex<std::collections::BTreeMap<OrderedF64, Complex64>>,
}

#[derive(Clone, Copy, PartialEq)]
struct OrderedF64(f64);
impl Eq for OrderedF64 {}
impl PartialOrd for OrderedF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for OrderedF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl CumulativeIntegral {
    pub fn new(f: PeriodicFunction, x: f64) -> Self {
        let mut anchors = std::collections::BTreeMap::new();
        anchors.insert(OrderedF64(0.0), Complex64::new(0.0, 0.0));
        CumulativeIntegral {
            f,
            x,
            anchors: Mutex::new(anchors),
        }
    }

    /// `∫₀^t f(x+u) du` for `t ∈ [-π, π]`.
    pub fn value_to(&self, t: f64) -> Complex64 {
        let t = t.clamp(-PI, PI);
        let mut anchors = self.anchors.lock().unwrap();
        if let Some(v) = anchors.get(&OrderedF64(t)) {
            return *v;
        }
        // nearest anchor below or above
        let below = anchors
            .range(..=OrderedF64(t))
            .next_back()
            .map(|(k, v)| (k.0, *v));
        let above = anchors
            .range(OrderedF64(t)..)
            .next()
            .map(|(k, v)| (k.0, *v));
        let (t0, v0) = match (below, above) {
            (Some((tb, vb)), Some((ta, va))) => {
                if (t - tb) <= (ta - t) {
                    (tb, vb)
                } else {
                    (ta, va)
                }
            }
            (Some(p), None) => p,
            (None, Some(p)) => p,
            (None, None) => (0.0, Complex64::new(0.0, 0.0)),
        };
        let f = &self.f;
        let x = self.x;
        let span = (t - t0).abs().max(1e-16);
        let opts = QuadOptions {
            tol: 1e-12_f64.max(2e-10 * span / TAU),
            oscillation: f.oscillation(),
            forced: f
                .piece_breaks()
                .iter()
                .chain(f.singular_points().iter())
                .map(|b| {
                    // u-domain point where x+u hits the break
                    (b - x + PI).rem_euclid(TAU) - PI
                })
                .filter(|u| (u - t0.min(t)) > 0.0 && (t0.max(t) - u) > 0.0)
                .collect(),
            ..QuadOptions::default()
        };
        let inc = quad::integrate(|u| f.eval(x + u), t0, t, &opts).unwrap_or_else(|_| {
            // fall back to a middling-accuracy estimate rather than poison the cache
            quad::integrate(
                |u| f.eval(x + u),
                t0,
                t,
                &QuadOptions {
                    tol: 1e-6,
                    oscillation: f.oscillation(),
                    ..QuadOptions::default()
                },
            )
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
        });
        let v = v0 + inc;
        anchors.insert(OrderedF64(t), v);
        v
    }
}

/// Grid estimate of `ω(f; h) = sup_{0<δ≤h} |f(t) − f(t+δ)|` over `[-π, π]`.
///
/// The grid is refined internally so that both `h` and the declared
/// oscillation scale are resolved; the estimate can undershoot by at most
/// the grid's own oscillation. Functions with declared singular points are
/// rejected.
pub fn modulus_of_continuity(f: &PeriodicFunction, h: f64, grid: usize) -> Result<f64> {
    if !f.singular_points().is_empty() {
        return Err(Error::param("f", "modulus of continuity requires a singular-point-free function"));
    }
    if !(h > 0.0 && h <= TAU) {
        return Err(Error::param("h", "must lie in (0, 2*pi]"));
    }
    if grid < 64 {
        return Err(Error::param("grid", "need at least 64 samples"));
    }
    let needed = ((TAU / h).ceil() as usize * 8).max((f.oscillation() * 8.0).ceil() as usize);
    let g = grid.max(needed).min(1 << 22);
    let step = TAU / g as f64;
    let samples: Vec<Complex64> = (0..=g).map(|i| f.eval(-PI + i as f64 * step)).collect();
    let w = ((h / step).floor() as usize).max(1);
    let mut best = 0.0f64;
    for j in 1..=w {
        if j as f64 * step > h * (1.0 + 1e-12) {
            break;
        }
        for i in 0..(samples.len() - j) {
            let d = (samples[i] - samples[i + j]).norm();
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

/// Finite two-sided coefficient family: the object `K_n(t) = Σ λ_k e^{ikt}`.
#[derive(Clone, Debug)]
pub struct TrigPolynomial {
    degree: usize,
    coeffs: Vec<Complex64>, // index k + degree
}

impl TrigPolynomial {
    pub fn from_rule(degree: usize, rule: impl Fn(i64) -> Complex64) -> Self {
        let coeffs = (-(degree as i64)..=degree as i64).map(rule).collect();
        TrigPolynomial { degree, coeffs }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), 2 * degree + 1);
        TrigPolynomial { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient at `k`; zero outside the stored window.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        let idx = k + self.degree as i64;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Termwise derivative: coefficients `ik·λ_k`.
    pub fn derivative(&self) -> TrigPolynomial {
        TrigPolynomial::from_rule(self.degree, |k| {
            Complex64::new(0.0, k as f64) * self.coefficient(k)
        })
    }

    /// Horner-style evaluation, `O(degree)` per point.
    pub fn eval(&self, t: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, t);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * Complex64::from_polar(1.0, -(self.degree as f64) * t)
    }

    /// True when coefficients are conjugate-symmetric (real-valued signal).
    pub fn is_conjugate_symmetric(&self, tol: f64) -> bool {
        let n = self.degree as i64;
        (0..=n).all(|k| (self.coefficient(k) - self.coefficient(-k).conj()).norm() <= tol)
    }

    /// Largest coefficient modulus.
    pub fn max_coefficient(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cos_fn() -> PeriodicFunction {
        PeriodicFunction::real("cos", f64::cos)
    }

    #[test]
    fn integrate_const_and_cos() {
        let one = PeriodicFunction::real("one", |_| 1.0);
        let v = integrate_periodic(&one, -PI, PI, 1e-10).unwrap();
        assert!((v.re - TAU).abs() < 1e-10);
        let v = integrate_periodic(&cos_fn(), 0.0, PI / 2.0, 1e-10).unwrap();
        assert!((v.re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn integrate_inverse_sqrt() {
        // |t|^{-1/2} on (0, pi], singular at 0 -> 2 sqrt(pi)
        let f = PeriodicFunction::real("invsqrt", |t| {
            if t <= 0.0 {
                0.0
            } else {
                t.powf(-0.5)
            }
        })
        .with_singular(vec![0.0]);
        let v = integrate_periodic(&f, 0.0, PI, 1e-9).unwrap();
        assert!((v.re - 2.0 * PI.sqrt()).abs() < 1e-7, "got {}", v.re);
    }

    #[test]
    fn coefficients_const_cos_sign() {
        let one = PeriodicFunction::real("one", |_| 1.0);
        assert!((fourier_coefficient(&one, 0, 1e-10).unwrap().re - 1.0).abs() < 1e-10);
        assert!(fourier_coefficient(&one, 1, 1e-10).unwrap().norm() < 1e-10);

        let c = cos_fn();
        assert!((fourier_coefficient(&c, 1, 1e-10).unwrap().re - 0.5).abs() < 1e-10);
        assert!((fourier_coefficient(&c, -1, 1e-10).unwrap().re - 0.5).abs() < 1e-10);

        let sign = PeriodicFunction::real("sign", |t| if t >= 0.0 { 1.0 } else { -1.0 })
            .with_breaks(vec![0.0]);
        let v = fourier_coefficient(&sign, 1, 1e-10).unwrap();
        let expect = Complex64::new(0.0, -2.0 / PI);
        assert!((v - expect).norm() < 1e-9, "got {v}");
    }

    #[test]
    fn partial_sum_reproduces_trig_poly() {
        // f = 3 + cos 2t
        let f = PeriodicFunction::real("3+cos2t", |t| 3.0 + (2.0 * t).cos()).with_oscillation(2.0);
        for &x in &[0.0, 0.7, -2.1] {
            let v = partial_sum(&f, 4, x).unwrap();
            assert!((v.re - (3.0 + (2.0 * x).cos())).abs() < 1e-9);
            assert!(v.im.abs() < 1e-10);
        }
        let v = partial_sum(&f, 1, 0.0).unwrap();
        assert!((v.re - 3.0).abs() < 1e-9);
    }

    #[test]
    fn partial_sum_sign_interior() {
        // direct-summation oracle with analytic coefficients -2i/(pi k), odd k
        let sign = PeriodicFunction::real("sign", |t| if t >= 0.0 { 1.0 } else { -1.0 })
            .with_breaks(vec![0.0]);
        let x = PI / 2.0;
        let mut oracle = 0.0;
        for k in (1..=25i64).step_by(2) {
            // contribution of +-k: 2*Re[(-2i/(pi k)) e^{ikx}] = (4/(pi k)) sin(kx)
            oracle += 4.0 / (PI * k as f64) * (k as f64 * x).sin();
        }
        let v = partial_sum(&sign, 25, x).unwrap();
        assert!((v.re - oracle).abs() < 1e-8, "impl {} oracle {}", v.re, oracle);
        assert!((v.re - 1.0).abs() < 0.05);
    }

    #[test]
    fn averaged_primitive_cos_sawtooth_const() {
        // f = cos, x = 0: F_0(t) = sin t / t, F_0(0) = 1
        let fx = averaged_primitive(&cos_fn(), 0.0, None);
        assert!((fx.eval(0.0).re - 1.0).abs() < 1e-4);
        assert!((fx.eval(1.3).re - (1.3f64).sin() / 1.3).abs() < 1e-9);

        // constant: F_x = c
        let c = PeriodicFunction::real("c", |_| 2.5);
        let fx = averaged_primitive(&c, 1.0, None);
        assert!((fx.eval(0.7).re - 2.5).abs() < 1e-9);
        assert!((fx.eval(0.0).re - 2.5).abs() < 1e-6);

        // sawtooth f(t) = t at x = 0: F_0(t) = t/2
        let saw = PeriodicFunction::real("sawtooth", |t| t);
        let fx = averaged_primitive(&saw, 0.0, None);
        assert!((fx.eval(0.9).re - 0.45).abs() < 1e-9);
    }

    #[test]
    fn averaged_primitive_no_d_value() {
        let sign = PeriodicFunction::real("sign", |t| if t >= 0.0 { 1.0 } else { -1.0 })
            .with_breaks(vec![0.0]);
        let fx = averaged_primitive(&sign, 0.0, None);
        assert!(fx.eval(0.0).re.is_nan());
        assert_eq!(fx.singular_points(), &[0.0]);
        // away from zero the average is fine: F_0(t) = 1 for t > 0
        assert!((fx.eval(0.5).re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn modulus_basics() {
        let saw = PeriodicFunction::real("t", |t| t);
        let w = modulus_of_continuity(&saw, 0.1, 2048).unwrap();
        // sawtooth has the wrap jump; restrict comparison window: |f(t)-f(t+d)| = d except at wrap
        assert!(w >= 0.1 - 1e-3 && w <= TAU, "w={w}");

        let c = cos_fn();
        let w = modulus_of_continuity(&c, PI, 1024).unwrap();
        assert!((w - 2.0).abs() < 1e-4);
        let w = modulus_of_continuity(&c, 0.5, 1024).unwrap();
        assert!((w - 2.0 * (0.25f64).sin()).abs() < 1e-4);
    }

    #[test]
    fn trig_polynomial_eval_and_derivative() {
        let p = TrigPolynomial::from_rule(3, |k| {
            if k.abs() == 2 {
                Complex64::new(0.5, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        // p(t) = cos 2t
        assert!((p.eval(0.4).re - (0.8f64).cos()).abs() < 1e-12);
        let dp = p.derivative();
        // p'(t) = -2 sin 2t
        assert!((dp.eval(0.4).re + 2.0 * (0.8f64).sin()).abs() < 1e-12);
    }
}

//! Multiplier families `λ_{k,n}`, the method catalog, and evaluation of
//! linear means `Λ_n(f; x) = Σ λ_{k,n} f̂_k e^{ikx}`.

use crate::error::{Error, Result};
use crate::periodic::{coefficient_window, window_coefficient, PeriodicFunction, TrigPolynomial};
use crate::DEFAULT_TOL;
use num_complex::Complex64;
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

type PhiEval = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// The multiplier function `φ` generating `λ_{k,n} = φ(k/(n+1))`.
#[derive(Clone)]
pub struct MultiplierFunction {
    pub label: String,
    eval: PhiEval,
    /// `φ(x) = 0` for `|x| > support_radius` when finite.
    pub support_radius: f64,
    pub value_at_zero: Complex64,
    derivative: Option<PhiEval>,
    pub nonsmooth_points: Vec<f64>,
    /// Frequency of any persistent oscillation in the tail (`sin x / x` has 1).
    pub tail_frequency: f64,
    /// Length scale of decay/variation, used to size quadrature panels.
    pub decay_scale: f64,
}

impl std::fmt::Debug for MultiplierFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MultiplierFunction")
            .field("label", &self.label)
            .field("support_radius", &self.support_radius)
            .finish()
    }
}

impl MultiplierFunction {
    pub fn new<F>(label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        let eval: PhiEval = Arc::new(eval);
        let value_at_zero = eval(0.0);
        MultiplierFunction {
            label: label.into(),
            eval,
            support_radius: f64::INFINITY,
            value_at_zero,
            derivative: None,
            nonsmooth_points: Vec::new(),
            tail_frequency: 0.0,
            decay_scale: 1.0,
        }
    }

    pub fn with_support(mut self, r: f64) -> Self {
        self.support_radius = r;
        self
    }

    pub fn with_derivative<F>(mut self, d: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(d));
        self
    }

    pub fn with_nonsmooth(mut self, pts: Vec<f64>) -> Self {
        self.nonsmooth_points = pts;
        self
    }

    pub fn with_tail_frequency(mut self, nu: f64) -> Self {
        self.tail_frequency = nu;
        self
    }

    pub fn with_decay_scale(mut self, s: f64) -> Self {
        self.decay_scale = s;
        self
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        if x.abs() > self.support_radius {
            return Complex64::new(0.0, 0.0);
        }
        (self.eval)(x)
    }

    pub fn derivative_at(&self, x: f64) -> Option<Complex64> {
        if x.abs() > self.support_radius {
            return Some(Complex64::new(0.0, 0.0));
        }
        self.derivative.as_ref().map(|d| d(x))
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// The function `x ↦ x·φ'(x)`, when a derivative is available.
    pub fn x_phi_prime(&self) -> Option<MultiplierFunction> {
        let d = self.derivative.clone()?;
        let r = self.support_radius;
        let mut nonsmooth = self.nonsmooth_points.clone();
        if r.is_finite() {
            nonsmooth.push(r);
            nonsmooth.push(-r);
        }
        Some(MultiplierFunction {
            label: format!("x*d[{}]", self.label),
            eval: Arc::new(move |x| {
                if x.abs() > r {
                    Complex64::new(0.0, 0.0)
                } else {
                    x * d(x)
                }
            }),
            support_radius: r,
            value_at_zero: Complex64::new(0.0, 0.0),
            derivative: None,
            nonsmooth_points: nonsmooth,
            tail_frequency: self.tail_frequency,
            decay_scale: self.decay_scale,
        })
    }
}

/// A finite complex measure given by point masses.
#[derive(Clone, Debug)]
pub struct DiscreteMeasure {
    pub atoms: Vec<(f64, Complex64)>,
}

impl DiscreteMeasure {
    pub fn total_mass(&self) -> Complex64 {
        self.atoms.iter().map(|(_, w)| *w).sum()
    }
}

struct FamilyInner {
    label: String,
    builder: Box<dyn Fn(usize) -> Weights + Send + Sync>,
    phi: Option<MultiplierFunction>,
    cache: Mutex<HashMap<usize, Arc<Weights>>>,
}

/// Weights of one family member: `values[k + window]` is `λ_{k,n}`.
#[derive(Clone, Debug)]
pub struct Weights {
    pub window: usize,
    pub values: Vec<Complex64>,
}

impl Weights {
    pub fn lambda(&self, k: i64) -> Complex64 {
        let idx = k + self.window as i64;
        if idx < 0 || idx >= self.values.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[idx as usize]
        }
    }

    fn from_rule(window: usize, rule: impl Fn(i64) -> Complex64) -> Self {
        Weights {
            window,
            values: (-(window as i64)..=window as i64).map(rule).collect(),
        }
    }
}

/// Rule `(k, n) ↦ λ_{k,n}` with a finite truncation window per `n`.
#[derive(Clone)]
pub struct MultiplierFamily {
    inner: Arc<FamilyInner>,
}

impl std::fmt::Debug for MultiplierFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MultiplierFamily")
            .field("label", &self.inner.label)
            .finish()
    }
}

/// Relative tail tolerance used to truncate infinite-support families.
pub const TAIL_TOL: f64 = 1e-10;
/// Window cap for slowly decaying multiplier families.
pub const WINDOW_CAP: usize = 262_144;

impl MultiplierFamily {
    pub fn new<B>(label: impl Into<String>, builder: B) -> Self
    where
        B: Fn(usize) -> Weights + Send + Sync + 'static,
    {
        MultiplierFamily {
            inner: Arc::new(FamilyInner {
                label: label.into(),
                builder: Box::new(builder),
                phi: None,
                cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    fn with_phi(mut self, phi: MultiplierFunction) -> Self {
        Arc::get_mut(&mut self.inner).unwrap().phi = Some(phi);
        self
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    /// The generating `φ`, when the family came from one.
    pub fn phi(&self) -> Option<&MultiplierFunction> {
        self.inner.phi.as_ref()
    }

    pub fn weights(&self, n: usize) -> Arc<Weights> {
        let mut cache = self.inner.cache.lock().unwrap();
        cache
            .entry(n)
            .or_insert_with(|| Arc::new((self.inner.builder)(n)))
            .clone()
    }

    pub fn lambda(&self, k: i64, n: usize) -> Complex64 {
        self.weights(n).lambda(k)
    }
}

/// Build a family from `φ` with `λ_{k,n} = φ(k/(n+1))` and window from the
/// support radius (or the tail tolerance for infinite support).
pub fn phi_family(label: impl Into<String>, phi: MultiplierFunction, window: impl Fn(usize) -> usize + Send + Sync + 'static) -> MultiplierFamily {
    let phi_for_builder = phi.clone();
    let label = label.into();
    MultiplierFamily::new(label, move |n| {
        let w = window(n);
        let scale = 1.0 / (n as f64 + 1.0);
        Weights::from_rule(w, |k| phi_for_builder.eval(k as f64 * scale))
    })
    .with_phi(phi)
}

/// Catalog multiplier functions by name: `fejer`, `riesz:alpha=..,beta=..`,
/// `exp:alpha=..`, `sinc`, `rogosinski`, `bernstein`.
pub fn phi_catalog(name: &str, params: &BTreeMap<String, f64>) -> Result<MultiplierFunction> {
    let get = |key: &str, default: f64| params.get(key).copied().unwrap_or(default);
    match name {
        "fejer" => Ok(MultiplierFunction::new("fejer", |x| {
            Complex64::new((1.0 - x.abs()).max(0.0), 0.0)
        })
        .with_support(1.0)
        .with_derivative(|x| {
            if x.abs() < 1.0 && x != 0.0 {
                Complex64::new(-x.signum(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .with_nonsmooth(vec![-1.0, 0.0, 1.0])
        .with_decay_scale(0.5)),
        "riesz" => {
            let alpha = get("alpha", 1.0);
            let beta = get("beta", 1.0);
            if alpha <= 0.0 || beta <= 0.0 {
                return Err(Error::param("riesz", "need alpha > 0 and beta > 0"));
            }
            Ok(MultiplierFunction::new(
                format!("riesz:alpha={alpha},beta={beta}"),
                move |x| {
                    let base = 1.0 - x.abs().powf(alpha);
                    Complex64::new(if base > 0.0 { base.powf(beta) } else { 0.0 }, 0.0)
                },
            )
            .with_support(1.0)
            .with_derivative(move |x| {
                let base = 1.0 - x.abs().powf(alpha);
                if base <= 0.0 || x == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(
                        -alpha * beta * x.abs().powf(alpha - 1.0) * x.signum() * base.powf(beta - 1.0),
                        0.0,
                    )
                }
            })
            .with_nonsmooth(vec![-1.0, 0.0, 1.0])
            .with_decay_scale(0.5))
        }
        "exp" => {
            let alpha = get("alpha", 1.0);
            if alpha <= 0.0 {
                return Err(Error::param("exp", "need alpha > 0"));
            }
            Ok(MultiplierFunction::new(
                format!("exp:alpha={alpha}"),
                move |x| Complex64::new((-x.abs().powf(alpha)).exp(), 0.0),
            )
            .with_derivative(move |x| {
                if x == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(
                        -alpha * x.abs().powf(alpha - 1.0) * x.signum() * (-x.abs().powf(alpha)).exp(),
                        0.0,
                    )
                }
            })
            .with_nonsmooth(vec![0.0])
            .with_decay_scale(if alpha >= 1.0 { 1.0 } else { 4.0 }))
        }
        "sinc" => Ok(MultiplierFunction::new("sinc", |x| {
            Complex64::new(if x.abs() < 1e-12 { 1.0 } else { x.sin() / x }, 0.0)
        })
        .with_derivative(|x| {
            if x.abs() < 1e-6 {
                Complex64::new(-x / 3.0, 0.0)
            } else {
                Complex64::new((x * x.cos() - x.sin()) / (x * x), 0.0)
            }
        })
        .with_tail_frequency(1.0)),
        "rogosinski" => Ok(MultiplierFunction::new("rogosinski", |x| {
            Complex64::new((PI * x / 2.0).cos(), 0.0)
        })
        .with_support(1.0)
        .with_derivative(|x| Complex64::new(-(PI / 2.0) * (PI * x / 2.0).sin(), 0.0))
        .with_nonsmooth(vec![-1.0, 1.0])
        .with_decay_scale(0.5)),
        "bernstein" => Ok(MultiplierFunction::new("bernstein", |x| {
            let c = (PI * x / 2.0).cos();
            Complex64::new(c * c, 0.5 * (PI * x).sin())
        })
        .with_support(1.0)
        .with_derivative(|x| {
            Complex64::new(
                -PI * (PI * x / 2.0).cos() * (PI * x / 2.0).sin(),
                0.5 * PI * (PI * x).cos(),
            )
        })
        .with_nonsmooth(vec![-1.0, 1.0])
        .with_decay_scale(0.5)),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// The method catalog.
///
/// Names and parameters: `fejer`, `cesaro:alpha=`, `riesz:alpha=,beta=`,
/// `exp:alpha=`, `vallee_poussin:m=` (even `m`), `fejer_jackson:s=`,
/// `rogosinski`, `bernstein`, `lebesgue[:eps=]` (default `ε_n = π/(n+1)`),
/// `rb_measure:gamma=,t0=,w0=,...`.
pub fn catalog_family(name: &str, params: &BTreeMap<String, f64>) -> Result<MultiplierFamily> {
    let get = |key: &str, default: f64| params.get(key).copied().unwrap_or(default);
    match name {
        "fejer" => Ok(phi_family(
            "fejer",
            phi_catalog("fejer", params)?,
            |n| n + 1,
        )),
        "riesz" => {
            let phi = phi_catalog("riesz", params)?;
            let label = phi.label.clone();
            Ok(phi_family(label, phi, |n| n + 1))
        }
        "rogosinski" => Ok(phi_family(
            "rogosinski",
            phi_catalog("rogosinski", params)?,
            |n| n + 1,
        )),
        "bernstein" => Ok(phi_family(
            "bernstein",
            phi_catalog("bernstein", params)?,
            |n| n + 1,
        )),
        "exp" => {
            let alpha = get("alpha", 1.0);
            let phi = phi_catalog("exp", params)?;
            let label = phi.label.clone();
            // e^{-(k/(n+1))^alpha} < TAIL_TOL  <=>  k > (n+1) ln(1/TAIL_TOL)^{1/alpha}
            let factor = (1.0 / TAIL_TOL).ln().powf(1.0 / alpha);
            Ok(phi_family(label, phi, move |n| {
                (((n as f64 + 1.0) * factor).ceil() as usize).min(WINDOW_CAP)
            }))
        }
        "cesaro" => {
            let alpha = get("alpha", 1.0);
            if alpha <= 0.0 {
                return Err(Error::param("cesaro", "need alpha > 0"));
            }
            Ok(MultiplierFamily::new(
                format!("cesaro:alpha={alpha}"),
                move |n| {
                    // A^alpha_m = prod_{j=1}^m (alpha+j)/j by the product recurrence
                    let mut a = vec![1.0f64; n + 1];
                    for m in 1..=n {
                        a[m] = a[m - 1] * (alpha + m as f64) / m as f64;
                    }
                    Weights::from_rule(n, |k| {
                        let m = n - k.unsigned_abs() as usize;
                        Complex64::new(a[m] / a[n], 0.0)
                    })
                },
            ))
        }
        "vallee_poussin" => {
            let m = get("m", f64::NAN);
            if !m.is_finite() || m < 0.0 || m.fract() != 0.0 || (m as u64) % 2 != 0 {
                return Err(Error::param("vallee_poussin", "m must be a nonnegative even integer"));
            }
            let m = m as usize;
            Ok(MultiplierFamily::new(
                format!("vallee_poussin:m={m}"),
                move |_n| {
                    // cos^m(t/2) = 2^{-m} sum_j C(m,j) e^{i(j-m/2)t}; normalised so
                    // lambda_0 = 1:   lambda_k = C(m, m/2+k)/C(m, m/2)
                    let half = m / 2;
                    Weights::from_rule(half, |k| {
                        let k = k.unsigned_abs() as usize;
                        let mut ratio = 1.0f64;
                        for j in 1..=k {
                            ratio *= (half - j + 1) as f64 / (half + j) as f64;
                        }
                        Complex64::new(ratio, 0.0)
                    })
                },
            ))
        }
        "fejer_jackson" => {
            let s = get("s", 2.0);
            if s < 1.0 || s.fract() != 0.0 {
                return Err(Error::param("fejer_jackson", "s must be an integer >= 1"));
            }
            let s = s as usize;
            Ok(MultiplierFamily::new(
                format!("fejer_jackson:s={s}"),
                move |n| {
                    // s-fold self-convolution of the Dirichlet coefficient block
                    let mut conv = vec![1.0f64; 2 * n + 1];
                    let ones = vec![1.0f64; 2 * n + 1];
                    for _ in 1..s {
                        let mut next = vec![0.0f64; conv.len() + 2 * n];
                        for (i, a) in conv.iter().enumerate() {
                            for (j, b) in ones.iter().enumerate() {
                                next[i + j] += a * b;
                            }
                        }
                        conv = next;
                    }
                    let window = s * n;
                    let mid = conv.len() / 2;
                    let center = conv[mid];
                    Weights::from_rule(window, |k| {
                        Complex64::new(conv[(mid as i64 + k) as usize] / center, 0.0)
                    })
                },
            ))
        }
        "lebesgue" => {
            let eps_override = params.get("eps").copied();
            Ok(MultiplierFamily::new(
                match eps_override {
                    Some(e) => format!("lebesgue:eps={e}"),
                    None => "lebesgue".to_string(),
                },
                move |n| {
                    let eps = eps_override.unwrap_or(PI / (n as f64 + 1.0));
                    lebesgue_weights(eps)
                },
            ))
        }
        "rb_measure" => {
            let gamma = get("gamma", 1.0);
            let mut atoms = Vec::new();
            let mut i = 0usize;
            loop {
                let (tk, wk) = (format!("t{i}"), format!("w{i}"));
                match (params.get(&tk), params.get(&wk)) {
                    (Some(&t), Some(&w)) => atoms.push((t, Complex64::new(w, 0.0))),
                    _ => break,
                }
                i += 1;
            }
            if atoms.is_empty() {
                return Err(Error::param("rb_measure", "need at least one atom t0/w0"));
            }
            rogosinski_bernstein_family(gamma, &DiscreteMeasure { atoms })
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Lebesgue-method weights for a fixed scale: `λ_k = sin(kε)/(kε)`, `λ₀ = 1`.
pub fn lebesgue_weights(eps: f64) -> Weights {
    // |sinc(k eps)| <= 1/(k eps): window from a 2e-4 tail level, capped
    let window = ((5000.0 / eps).ceil() as usize).min(WINDOW_CAP);
    Weights::from_rule(window, |k| {
        if k == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            let u = k as f64 * eps;
            Complex64::new(u.sin() / u, 0.0)
        }
    })
}

/// General Rogosinski-Bernstein means from a discrete measure:
/// `φ(x) = Σ w_j e^{-iγ x t_j}` on `|x| ≤ 1`, zero outside, `φ(0) = 1`.
pub fn rogosinski_bernstein_family(gamma: f64, mu: &DiscreteMeasure) -> Result<MultiplierFamily> {
    let mass = mu.total_mass();
    if (mass - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
        return Err(Error::param(
            "rb_measure",
            format!("total mass must be 1, got {mass}"),
        ));
    }
    let atoms = mu.atoms.clone();
    let phi = MultiplierFunction::new(format!("rb_measure:gamma={gamma}"), move |x| {
        atoms
            .iter()
            .map(|&(t, w)| w * Complex64::from_polar(1.0, -gamma * x * t))
            .sum()
    })
    .with_support(1.0)
    .with_nonsmooth(vec![-1.0, 1.0]);
    let label = phi.label.clone();
    Ok(phi_family(label, phi, |n| n + 1))
}

/// `Λ_n(f; x) = Σ_{|k| ≤ N(n)} λ_{k,n} f̂_k e^{ikx}`.
pub fn linear_means(
    f: &PeriodicFunction,
    fam: &MultiplierFamily,
    n: usize,
    x: f64,
) -> Result<Complex64> {
    linear_means_tol(f, fam, n, x, DEFAULT_TOL)
}

pub fn linear_means_tol(
    f: &PeriodicFunction,
    fam: &MultiplierFamily,
    n: usize,
    x: f64,
    tol: f64,
) -> Result<Complex64> {
    let weights = fam.weights(n);
    let window = coefficient_window(f, weights.window, tol)?;
    let mut acc = weights.lambda(0) * window_coefficient(&window, 0);
    for k in 1..=weights.window as i64 {
        let e = Complex64::from_polar(1.0, k as f64 * x);
        acc += weights.lambda(k) * window_coefficient(&window, k) * e;
        acc += weights.lambda(-k) * window_coefficient(&window, -k) * e.conj();
    }
    Ok(acc)
}

/// The truncated kernel `K_n(t) = Σ λ_{k,n} e^{ikt}` as a polynomial.
pub fn kernel_of(fam: &MultiplierFamily, n: usize) -> TrigPolynomial {
    let weights = fam.weights(n);
    TrigPolynomial::from_coeffs(weights.window, weights.values.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::l1_norm;
    use crate::periodic::partial_sum;

    fn no_params() -> BTreeMap<String, f64> {
        BTreeMap::new()
    }

    fn params(kv: &[(&str, f64)]) -> BTreeMap<String, f64> {
        kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn fejer_family_small() {
        let fam = catalog_family("fejer", &no_params()).unwrap();
        let w = fam.weights(1);
        assert!((w.lambda(0).re - 1.0).abs() < 1e-15);
        assert!((w.lambda(1).re - 0.5).abs() < 1e-15);
        assert!((w.lambda(-1).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cesaro_alpha_one_is_fejer() {
        let ces = catalog_family("cesaro", &params(&[("alpha", 1.0)])).unwrap();
        let fej = catalog_family("fejer", &no_params()).unwrap();
        for n in [1usize, 4, 16] {
            for k in -(n as i64)..=n as i64 {
                let a = ces.lambda(k, n);
                let b = fej.lambda(k, n);
                assert!((a - b).norm() < 1e-12, "n={n} k={k} {a} vs {b}");
            }
        }
    }

    #[test]
    fn riesz_one_one_is_fejer() {
        let r = catalog_family("riesz", &params(&[("alpha", 1.0), ("beta", 1.0)])).unwrap();
        let f = catalog_family("fejer", &no_params()).unwrap();
        for k in -8i64..=8 {
            assert!((r.lambda(k, 7) - f.lambda(k, 7)).norm() < 1e-14);
        }
    }

    #[test]
    fn vallee_poussin_m2() {
        // independent oracle: Fourier integral of cos^2(t/2) via quadrature
        let fam = catalog_family("vallee_poussin", &params(&[("m", 2.0)])).unwrap();
        let w = fam.weights(5);
        let f = PeriodicFunction::real("cos^2(t/2)", |t| (0.5 * t).cos().powi(2));
        let c0 = crate::periodic::fourier_coefficient(&f, 0, 1e-12).unwrap();
        let c1 = crate::periodic::fourier_coefficient(&f, 1, 1e-12).unwrap();
        let oracle = (c1 / c0).re;
        assert!((w.lambda(0).re - 1.0).abs() < 1e-14);
        assert!((w.lambda(1).re - oracle).abs() < 1e-10);
        assert!((w.lambda(1).re - 0.5).abs() < 1e-12);
        assert!(w.lambda(2).norm() < 1e-15);
        assert!(matches!(
            catalog_family("vallee_poussin", &params(&[("m", 3.0)])),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn rogosinski_weights_at_n3() {
        let fam = catalog_family("rogosinski", &no_params()).unwrap();
        let w = fam.weights(3);
        for k in -3i64..=3 {
            let expect = (PI * k as f64 / 8.0).cos();
            assert!((w.lambda(k).re - expect).abs() < 1e-14);
        }
        assert!(w.lambda(4).norm() < 1e-15);
    }

    #[test]
    fn means_on_single_harmonics() {
        let c = PeriodicFunction::real("c", |_| 2.0);
        let fej = catalog_family("fejer", &no_params()).unwrap();
        for n in [0usize, 3, 9] {
            let v = linear_means(&c, &fej, n, 0.7).unwrap();
            assert!((v.re - 2.0).abs() < 1e-9 && v.im.abs() < 1e-10);
        }

        let e1 = PeriodicFunction::new("e^{it}", |t| Complex64::from_polar(1.0, t));
        for n in [1usize, 5] {
            let x = 0.4;
            let v = linear_means(&e1, &fej, n, x).unwrap();
            let expect = (1.0 - 1.0 / (n as f64 + 1.0)) * Complex64::from_polar(1.0, x);
            assert!((v - expect).norm() < 1e-9);
        }

        let leb = catalog_family("lebesgue", &params(&[("eps", 0.3)])).unwrap();
        let x = -0.9;
        let v = linear_means(&e1, &leb, 4, x).unwrap();
        let expect = (0.3f64.sin() / 0.3) * Complex64::from_polar(1.0, x);
        assert!((v - expect).norm() < 1e-9);
    }

    #[test]
    fn fejer_means_equal_averaged_partial_sums() {
        // Cesàro identity on a random-ish trig polynomial
        let f = PeriodicFunction::real("mix", |t| {
            1.3 + 0.7 * t.cos() + 0.4 * (3.0 * t).sin() - 0.2 * (5.0 * t).cos()
        })
        .with_oscillation(5.0);
        let fej = catalog_family("fejer", &no_params()).unwrap();
        for &x in &[0.0, 1.1] {
            for n in [4usize, 9, 16] {
                let mean = linear_means(&f, &fej, n, x).unwrap();
                let mut avg = Complex64::new(0.0, 0.0);
                for m in 0..=n {
                    avg += partial_sum(&f, m, x).unwrap();
                }
                avg /= n as f64 + 1.0;
                assert!((mean - avg).norm() < 1e-9, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn bernstein_is_shifted_partial_sum_average() {
        let f = PeriodicFunction::real("mix", |t| t.cos() + 0.5 * (2.0 * t).sin())
            .with_oscillation(2.0);
        let fam = catalog_family("bernstein", &no_params()).unwrap();
        for n in [4usize, 8] {
            let x = 0.3;
            let v = linear_means(&f, &fam, n, x).unwrap();
            let shift = PI / (n as f64 + 1.0);
            let expect =
                0.5 * (partial_sum(&f, n, x).unwrap() + partial_sum(&f, n, x + shift).unwrap());
            assert!((v - expect).norm() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn rogosinski_is_symmetric_shift_average() {
        let f = PeriodicFunction::real("mix", |t| t.cos() - 0.3 * (3.0 * t).cos())
            .with_oscillation(3.0);
        let fam = catalog_family("rogosinski", &no_params()).unwrap();
        for n in [5usize, 11] {
            let x = -0.8;
            let v = linear_means(&f, &fam, n, x).unwrap();
            let shift = PI / (2.0 * (n as f64 + 1.0));
            let expect =
                0.5 * (partial_sum(&f, n, x + shift).unwrap() + partial_sum(&f, n, x - shift).unwrap());
            assert!((v - expect).norm() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn fejer_jackson_coefficients() {
        let fam = catalog_family("fejer_jackson", &params(&[("s", 2.0)])).unwrap();
        let w = fam.weights(3);
        // s=2 on n=3: coefficients real, even, nonnegative kernel (Fejér-type)
        for k in 0..=w.window as i64 {
            assert!((w.lambda(k) - w.lambda(-k)).norm() < 1e-15);
            assert!(w.lambda(k).im.abs() < 1e-15);
        }
        assert!((w.lambda(0).re - 1.0).abs() < 1e-15);
        // kernel nonnegative for even s (spot check)
        let kern = kernel_of(&fam, 3);
        for i in 0..64 {
            let t = -PI + TAU_LOCAL * i as f64 / 64.0;
            assert!(kern.eval(t).re > -1e-10);
        }
    }
    const TAU_LOCAL: f64 = std::f64::consts::TAU;

    #[test]
    fn lebesgue_kernel_norm_near_one() {
        let fam = catalog_family("lebesgue", &params(&[("eps", 0.1)])).unwrap();
        let kern = kernel_of(&fam, 0);
        let norm = l1_norm(&kern, 1e-9).unwrap();
        assert!(norm >= 1.0 - 1e-9 && norm <= 1.0 + 1e-3, "norm = {norm}");
    }

    #[test]
    fn rb_measure_requires_unit_mass() {
        let mu = DiscreteMeasure {
            atoms: vec![(0.0, Complex64::new(0.5, 0.0)), (1.0, Complex64::new(0.2, 0.0))],
        };
        assert!(rogosinski_bernstein_family(1.0, &mu).is_err());
        let mu = DiscreteMeasure {
            atoms: vec![(0.0, Complex64::new(0.5, 0.0)), (1.0, Complex64::new(0.5, 0.0))],
        };
        let fam = rogosinski_bernstein_family(PI / 2.0, &mu).unwrap();
        assert!((fam.lambda(0, 4).re - 1.0).abs() < 1e-12);
    }
}

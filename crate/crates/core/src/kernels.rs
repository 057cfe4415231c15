//! Classical summability kernels, their differential identities, L¹ norms
//! and coefficient-side lower bounds.

use crate::error::{Error, Result};
use crate::fftgrid;
use crate::periodic::TrigPolynomial;
use crate::quad::{self, QuadOptions, GL8_NODES, GL8_WEIGHTS};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::str::FromStr;

/// `D_n(t) = 1/2 + Σ_{k=1}^n cos kt = sin((n+1/2)t) / (2 sin(t/2))`.
pub fn dirichlet_kernel(n: usize, t: f64) -> f64 {
    let s = (0.5 * t).sin();
    if s.abs() < 1e-9 {
        // removable singularity at t in 2*pi*Z
        return n as f64 + 0.5;
    }
    ((n as f64 + 0.5) * t).sin() / (2.0 * s)
}

/// `Φ_n(t) = 1/2 + Σ (1 - k/(n+1)) cos kt = sin²((n+1)t/2) / (2(n+1) sin²(t/2))`.
pub fn fejer_kernel(n: usize, t: f64) -> f64 {
    let s = (0.5 * t).sin();
    if s.abs() < 1e-9 {
        return (n as f64 + 1.0) / 2.0;
    }
    let num = ((n as f64 + 1.0) * 0.5 * t).sin();
    num * num / (2.0 * (n as f64 + 1.0) * s * s)
}

/// Conjugate Dirichlet kernel `D̃_n(t) = Σ_{k=1}^n sin kt`.
pub fn conjugate_dirichlet_kernel(n: usize, t: f64) -> f64 {
    let s = (0.5 * t).sin();
    if s.abs() < 1e-9 {
        return 0.0;
    }
    ((0.5 * t).cos() - ((n as f64 + 0.5) * t).cos()) / (2.0 * s)
}

/// Conjugate Fejér kernel `Φ̃_n(t) = (1/(n+1)) Σ_{k=1}^n D̃_k(t)`, evaluated
/// through its defining coefficients `Σ (1 - k/(n+1)) sin kt`.
pub fn conjugate_fejer_kernel(n: usize, t: f64) -> f64 {
    let mut acc = 0.0;
    for k in 1..=n {
        acc += (1.0 - k as f64 / (n as f64 + 1.0)) * (k as f64 * t).sin();
    }
    acc
}

/// Kernel differential identities measured by [`identity_residual`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityId {
    /// `2 sin(t/2) Φ'_n = 2 Φ_n cos(t/2) - D_n cos(t/2) - cos((n+1/2)t)/2 + O(1/n)`
    Lemma1,
    /// conjugate-kernel analogue of `Lemma1`
    Remark1_1,
    /// exact algebraic identity for `(1-e^{-it}) Σ (1-k/(n+1)) k e^{ikt}`
    Remark1_2,
    /// exact algebraic identity for `(1-e^{it}) Σ (1-k/(n+1)) k e^{ikt}`
    Remark1_3,
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma1" => Ok(IdentityId::Lemma1),
            "remark1_1" => Ok(IdentityId::Remark1_1),
            "remark1_2" => Ok(IdentityId::Remark1_2),
            "remark1_3" => Ok(IdentityId::Remark1_3),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

impl IdentityId {
    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::Lemma1 => "lemma1",
            IdentityId::Remark1_1 => "remark1_1",
            IdentityId::Remark1_2 => "remark1_2",
            IdentityId::Remark1_3 => "remark1_3",
        }
    }
}

fn weight(k: usize, n: usize) -> f64 {
    1.0 - k as f64 / (n as f64 + 1.0)
}

/// Sup over a `t`-grid of the identity residual, with derivative kernels
/// formed by termwise coefficient differentiation (never finite
/// differences). The `O(1/n)` term of the two kernel lemmas is excluded;
/// the two Remark identities are exact and return the full residual.
pub fn identity_residual(id: IdentityId, n: usize, grid: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::param("n", "need n >= 1"));
    }
    if grid < 128 {
        return Err(Error::param("grid", "need grid >= 128"));
    }
    let mut worst = 0.0f64;
    for i in 0..=grid {
        let t = -PI + TAU * i as f64 / grid as f64;
        let r = match id {
            IdentityId::Lemma1 => {
                // direct sums on both sides
                let mut phi = 0.5;
                let mut dphi = 0.0;
                let mut dir = 0.5;
                for k in 1..=n {
                    let kt = k as f64 * t;
                    phi += weight(k, n) * kt.cos();
                    dphi -= k as f64 * weight(k, n) * kt.sin();
                    dir += kt.cos();
                }
                let lhs = 2.0 * (0.5 * t).sin() * dphi;
                let rhs = 2.0 * phi * (0.5 * t).cos()
                    - dir * (0.5 * t).cos()
                    - 0.5 * ((n as f64 + 0.5) * t).cos();
                (lhs - rhs).abs()
            }
            IdentityId::Remark1_1 => {
                let mut phit = 0.0;
                let mut dphit = 0.0;
                let mut dirt = 0.0;
                for k in 1..=n {
                    let kt = k as f64 * t;
                    phit += weight(k, n) * kt.sin();
                    dphit += k as f64 * weight(k, n) * kt.cos();
                    dirt += kt.sin();
                }
                let lhs = 2.0 * (0.5 * t).sin() * dphit;
                let rhs = -2.0 * (0.5 * t).cos() * phit + (0.5 * t).cos() * dirt
                    - 0.5 * (0.5 * t).sin()
                    + 0.5 * ((n as f64 + 0.5) * t).sin();
                (lhs - rhs).abs()
            }
            IdentityId::Remark1_2 => {
                let mut s1 = Complex64::new(0.0, 0.0);
                let mut s2 = Complex64::new(0.0, 0.0);
                let mut s3 = Complex64::new(0.0, 0.0);
                for k in 0..=n {
                    let e = Complex64::from_polar(1.0, k as f64 * t);
                    if k >= 1 {
                        s1 += weight(k, n) * k as f64 * e;
                    }
                    s2 += e;
                    s3 += weight(k, n) * e;
                }
                let lhs = (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -t)) * s1;
                let rhs = (1.0 + 1.0 / (n as f64 + 1.0)) * s2 - 2.0 * s3;
                (lhs - rhs).norm()
            }
            IdentityId::Remark1_3 => {
                let mut s1 = Complex64::new(0.0, 0.0);
                let mut s2 = Complex64::new(0.0, 0.0);
                let mut s3 = Complex64::new(0.0, 0.0);
                for k in 1..=(n + 1) {
                    let e = Complex64::from_polar(1.0, k as f64 * t);
                    if k <= n {
                        s1 += weight(k, n) * k as f64 * e;
                        s3 += weight(k, n) * e;
                    }
                    s2 += e;
                }
                let lhs = (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, t)) * s1;
                let rhs = -(1.0 - 1.0 / (n as f64 + 1.0)) * s2 + 2.0 * s3;
                (lhs - rhs).norm()
            }
        };
        if r > worst {
            worst = r;
        }
    }
    Ok(worst)
}

const ADAPTIVE_DEGREE_LIMIT: usize = 2048;

/// `(1/2π) ∫ |p(t)| dt` with oscillation-aware panelling.
///
/// Small degrees go through the adaptive rule with panels at most
/// `π/(4(deg+1))` wide. Large degrees are evaluated on a uniform
/// Gauss-Legendre grid by FFT; panels whose values change sign are
/// re-integrated against the local degree-7 interpolant so kinks of `|p|`
/// do not degrade the panel rule.
pub fn l1_norm(p: &TrigPolynomial, tol: f64) -> Result<f64> {
    let deg = p.degree();
    if deg <= ADAPTIVE_DEGREE_LIMIT {
        let opts = QuadOptions {
            tol: tol.max(1e-13),
            oscillation: (deg as f64 + 1.0) * 2.0,
            ..QuadOptions::default()
        };
        let v = quad::integrate_real(|t| p.eval(t).norm(), -PI, PI, &opts)?;
        return Ok(v / TAU);
    }
    Ok(l1_norm_fft(p))
}

fn l1_norm_fft(p: &TrigPolynomial) -> f64 {
    let deg = p.degree();
    let panels = (8 * (deg + 1)).next_power_of_two();
    let real = p.is_conjugate_symmetric(1e-12 * p.max_coefficient().max(1e-300));
    let w = TAU / panels as f64;
    // per-offset grids: values[g][panel]
    let mut values: Vec<Vec<Complex64>> = Vec::with_capacity(8);
    for g in 0..8 {
        let xi = 0.5 * w * (1.0 + GL8_NODES[g]);
        values.push(fftgrid::eval_grid(p.coefficients(), deg, panels, xi));
    }
    let mut total = 0.0f64;
    let mut panel_vals = [0.0f64; 8];
    for pid in 0..panels {
        if real {
            let mut sign_change = false;
            for g in 0..8 {
                panel_vals[g] = values[g][pid].re;
                if g > 0 && panel_vals[g].signum() != panel_vals[g - 1].signum() {
                    sign_change = true;
                }
            }
            if !sign_change {
                let mut acc = 0.0;
                for g in 0..8 {
                    acc += GL8_WEIGHTS[g] * panel_vals[g].abs();
                }
                total += acc * 0.5 * w;
            } else {
                total += integrate_abs_interpolant(&panel_vals) * 0.5 * w;
            }
        } else {
            let mut acc = 0.0;
            for g in 0..8 {
                acc += GL8_WEIGHTS[g] * values[g][pid].norm();
            }
            total += acc * 0.5 * w;
        }
    }
    total / TAU
}

/// Integrate `|q(u)|` over `[-1, 1]` where `q` is the degree-7 interpolant
/// through the GL8 nodes with the given values (16 GL4 sub-panels).
fn integrate_abs_interpolant(vals: &[f64; 8]) -> f64 {
    // barycentric weights for GL8 nodes
    let mut bw = [0.0f64; 8];
    for j in 0..8 {
        let mut prod = 1.0;
        for m in 0..8 {
            if m != j {
                prod *= GL8_NODES[j] - GL8_NODES[m];
            }
        }
        bw[j] = 1.0 / prod;
    }
    let interp = |u: f64| -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..8 {
            let d = u - GL8_NODES[j];
            if d.abs() < 1e-14 {
                return vals[j];
            }
            let t = bw[j] / d;
            num += t * vals[j];
            den += t;
        }
        num / den
    };
    const GL4_NODES: [f64; 4] = [
        -0.861_136_311_594_052_6,
        -0.339_981_043_584_856_26,
        0.339_981_043_584_856_26,
        0.861_136_311_594_052_6,
    ];
    const GL4_WEIGHTS: [f64; 4] = [
        0.347_854_845_137_453_85,
        0.652_145_154_862_546_2,
        0.652_145_154_862_546_2,
        0.347_854_845_137_453_85,
    ];
    let sub = 16;
    let mut acc = 0.0;
    for i in 0..sub {
        let a = -1.0 + 2.0 * i as f64 / sub as f64;
        let b = -1.0 + 2.0 * (i + 1) as f64 / sub as f64;
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for g in 0..4 {
            acc += half * GL4_WEIGHTS[g] * interp(mid + half * GL4_NODES[g]).abs();
        }
    }
    acc
}

/// Report of a coefficient-side lower bound for `∫|p|`.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    /// `∫_{-π}^{π} |p(t)| dt`
    pub lhs: f64,
    pub rhs_terms: Vec<f64>,
    pub fitted_constant: f64,
    pub verdict: bool,
}

/// Lower-bound variants for [`sidon_bound_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundVariant {
    /// `Σ |λ_k| / (n - |k| + 1)`
    Sidon,
    /// dyadic blocks `Σ_s (Σ_{2^{s-1} ≤ ν < 2^s} |λ_ν|²/ν)^{1/2}` over
    /// positive frequencies
    Dyadic,
}

/// Computes `lhs = ∫|p|`, the per-term right side, and the fitted constant
/// `lhs / Σ rhs`. Constants are reported, never asserted against any
/// external value.
pub fn sidon_bound_check(p: &TrigPolynomial, variant: BoundVariant) -> Result<BoundsReport> {
    if p.max_coefficient() == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let lhs = TAU * l1_norm(p, 1e-9)?;
    let n = p.degree();
    let rhs_terms: Vec<f64> = match variant {
        BoundVariant::Sidon => (-(n as i64)..=n as i64)
            .map(|k| p.coefficient(k).norm() / (n as f64 - k.unsigned_abs() as f64 + 1.0))
            .collect(),
        BoundVariant::Dyadic => {
            let mut terms = Vec::new();
            let mut s = 1usize;
            loop {
                let lo = 1usize << (s - 1);
                if lo > n {
                    break;
                }
                let hi = (1usize << s).min(n + 1);
                let mut block = 0.0;
                for nu in lo..hi {
                    let c = p.coefficient(nu as i64).norm();
                    block += c * c / nu as f64;
                }
                terms.push(block.sqrt());
                s += 1;
            }
            terms
        }
    };
    let sum: f64 = rhs_terms.iter().sum();
    let fitted_constant = if sum > 0.0 { lhs / sum } else { f64::INFINITY };
    let verdict = lhs >= fitted_constant * sum - 1e-12 * lhs.abs();
    Ok(BoundsReport {
        lhs,
        rhs_terms,
        fitted_constant,
        verdict,
    })
}

/// The Dirichlet coefficient family `λ_k = 1`, `|k| ≤ n`, as a polynomial.
pub fn dirichlet_polynomial(n: usize) -> TrigPolynomial {
    TrigPolynomial::from_rule(n, |_| Complex64::new(1.0, 0.0))
}

/// The Fejér coefficient family `λ_k = (1 - |k|/(n+1))₊`.
pub fn fejer_polynomial(n: usize) -> TrigPolynomial {
    TrigPolynomial::from_rule(n, |k| {
        Complex64::new(1.0 - k.unsigned_abs() as f64 / (n as f64 + 1.0), 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirichlet_values() {
        assert!((dirichlet_kernel(5, 0.0) - 5.5).abs() < 1e-12);
        // n=2, t=pi/2: 1/2 + cos(pi/2) + cos(pi) = 1/2 + 0 - 1 = -1/2
        assert!((dirichlet_kernel(2, PI / 2.0) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn dirichlet_closed_form_vs_sum() {
        // direct-summation oracle
        let n = 64;
        for i in 0..50 {
            let t = -PI + TAU * (i as f64 + 0.37) / 50.0;
            let mut direct = 0.5;
            for k in 1..=n {
                direct += (k as f64 * t).cos();
            }
            assert!((dirichlet_kernel(n, t) - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn fejer_values_and_sum() {
        assert!((fejer_kernel(3, 0.0) - 2.0).abs() < 1e-12);
        assert!(fejer_kernel(1, PI).abs() < 1e-12);
        let n = 32;
        for i in 0..50 {
            let t = -PI + TAU * (i as f64 + 0.61) / 50.0;
            let mut direct = 0.5;
            for k in 1..=n {
                direct += (1.0 - k as f64 / (n as f64 + 1.0)) * (k as f64 * t).cos();
            }
            assert!((fejer_kernel(n, t) - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn identity_residuals_small() {
        // lemma 1 and remark 1.1 cancel exactly in the algebra; the grid
        // residual is pure roundoff
        for n in [8usize, 32, 64] {
            let r = identity_residual(IdentityId::Lemma1, n, 256).unwrap();
            assert!(r < 1e-10, "lemma1 n={n} r={r}");
            let r = identity_residual(IdentityId::Remark1_1, n, 256).unwrap();
            assert!(r < 1e-10, "remark1_1 n={n} r={r}");
        }
        for n in [1usize, 9, 64] {
            let r = identity_residual(IdentityId::Remark1_2, n, 256).unwrap();
            assert!(r < 1e-12 * (n * n) as f64 + 1e-12, "remark1_2 n={n} r={r}");
            let r = identity_residual(IdentityId::Remark1_3, n, 256).unwrap();
            assert!(r < 1e-12 * (n * n) as f64 + 1e-12, "remark1_3 n={n} r={r}");
        }
    }

    #[test]
    fn l1_norm_examples() {
        // degree 0
        let p = TrigPolynomial::from_rule(0, |_| Complex64::new(1.0, 0.0));
        assert!((l1_norm(&p, 1e-10).unwrap() - 1.0).abs() < 1e-10);

        // Dirichlet n=1: 1/3 + 2 sqrt(3)/pi  (closed form: |1 + 2cos t| changes sign at 2pi/3)
        let p = dirichlet_polynomial(1);
        let expect = 1.0 / 3.0 + 2.0 * 3.0f64.sqrt() / PI;
        assert!((l1_norm(&p, 1e-9).unwrap() - expect).abs() < 1e-8);

        // Fejér: nonnegative with mean 1
        for n in [4usize, 17] {
            let p = fejer_polynomial(n);
            assert!((l1_norm(&p, 1e-9).unwrap() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn l1_norm_fft_path_matches_adaptive() {
        // compare the two routes on a mid-size Dirichlet family
        let p = dirichlet_polynomial(96);
        let adaptive = l1_norm(&p, 1e-9).unwrap();
        let fft = super::l1_norm_fft(&p);
        assert!(
            (adaptive - fft).abs() < 5e-7,
            "adaptive={adaptive} fft={fft}"
        );
    }

    #[test]
    fn sidon_trivial_cases() {
        let p = TrigPolynomial::from_rule(0, |_| Complex64::new(1.0, 0.0));
        let rep = sidon_bound_check(&p, BoundVariant::Sidon).unwrap();
        assert!((rep.lhs - TAU).abs() < 1e-8);
        assert!((rep.rhs_terms.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((rep.fitted_constant - TAU).abs() < 1e-7);
        assert!(rep.verdict);

        // lambda_1 = 1 only, dyadic
        let p = TrigPolynomial::from_rule(1, |k| {
            if k == 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let rep = sidon_bound_check(&p, BoundVariant::Dyadic).unwrap();
        assert!((rep.rhs_terms.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((rep.lhs - TAU).abs() < 1e-7);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let p = TrigPolynomial::from_rule(2, |_| Complex64::new(0.0, 0.0));
        assert!(matches!(
            sidon_bound_check(&p, BoundVariant::Sidon),
            Err(Error::ZeroPolynomial)
        ));
    }
}

//! Truncated Perron kernels on a vertical segment.
//!
//! For a > 0, b > 0, T > 0 and order k ≥ 1 we integrate
//!
//! ```text
//! (1/2πi) ∫_{b−iT}^{b+iT} k!·a^s / (s(s+1)⋯(s+k)) ds
//! ```
//!
//! numerically and compare with the limit as T → ∞: the residue sum
//! (1 − 1/a)^k when a > 1 and 0 when a < 1. At a = 1 and k = 1 the truncated
//! integral behaves like 1/(πT) with an O(T^−3) remainder.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::quadrature::{graded_edges, integrate, QuadratureConfig, QuadratureResult};

/// Largest kernel order accepted.
pub const MAX_KERNEL_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerronResult {
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub k: usize,
    pub numeric: Complex64,
    pub main_term: f64,
    pub bound: f64,
    pub quadrature_error_estimate: f64,
}

impl PerronResult {
    /// |numeric − main_term|.
    pub fn gap(&self) -> f64 {
        (self.numeric - self.main_term).norm()
    }

    /// gap / bound.
    pub fn ratio(&self) -> f64 {
        self.gap() / self.bound
    }
}

/// n^s for real n > 0.
fn real_pow(n: f64, s: Complex64) -> Complex64 {
    (s * n.ln()).exp()
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|m| m as f64).product()
}

/// k!·a^s/(s(s+1)⋯(s+k)) at s = b + it.
fn kernel(ln_a: f64, b: f64, k: usize, scale: f64, t: f64) -> Complex64 {
    let s = Complex64::new(b, t);
    let mut denom = s;
    for j in 1..=k {
        denom *= s + j as f64;
    }
    Complex64::from_polar(scale * (b * ln_a).exp(), t * ln_a) / denom
}

/// Limit of the kernel integral as T → ∞, plus the a = 1, k = 1 leading
/// term 1/(πT).
pub fn main_term(a: f64, t: f64, k: usize) -> f64 {
    if a > 1.0 {
        // Σ_j Res_{s=−j} k!a^s/Π(s+m) = Σ_j C(k,j)(−1)^j a^−j
        (1.0 - 1.0 / a).powi(k as i32)
    } else if a == 1.0 && k == 1 {
        1.0 / (PI * t)
    } else {
        0.0
    }
}

/// a^b·min(1/T, 1/(T²·|log a|)), the shape of the remainder for a ≠ 1 with
/// unit constant.
pub fn lemma1_error_bound(a: f64, b: f64, t: f64) -> Result<f64> {
    if !(a > 0.0) {
        return invalid(format!("a = {a} must be positive"));
    }
    if a == 1.0 {
        return invalid("a = 1 has its own T^-3 remainder; see unit_argument_bound");
    }
    if !(t > 0.0) {
        return invalid(format!("T = {t} must be positive"));
    }
    Ok(a.powf(b) * (1.0 / t).min(1.0 / (t * t * a.ln().abs())))
}

/// Remainder envelope at a = 1. For k = 1 the truncated integral is
/// (arctan(T/b) − arctan(T/(b+1)))/π = 1/(πT) − (3b²+3b+1)/(3πT³) + O(T^−5),
/// bounded here by (b+1)³/T³; higher orders fall back to 1/T.
pub fn unit_argument_bound(b: f64, t: f64, k: usize) -> f64 {
    if k == 1 {
        (b + 1.0).powi(3) / t.powi(3)
    } else {
        1.0 / t
    }
}

fn validate(a: f64, b: f64, t: f64, k: usize) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return invalid(format!("a = {a} must be a positive finite number"));
    }
    if !(b > 0.0) || !b.is_finite() {
        return invalid(format!("b = {b} must be positive so the segment avoids s = 0"));
    }
    if !(t > 0.0) || !t.is_finite() {
        return invalid(format!("T = {t} must be positive"));
    }
    if k == 0 || k > MAX_KERNEL_ORDER {
        return invalid(format!("kernel order {k} outside 1..={MAX_KERNEL_ORDER}"));
    }
    Ok(())
}

fn panel_edges(t: f64, b: f64, omega: f64) -> Vec<f64> {
    graded_edges(0.0, t, b.max(0.25), omega)
}

/// Evaluate the truncated kernel integral with the default quadrature
/// tolerance (1e−10 absolute).
pub fn perron_integral(a: f64, b: f64, t: f64, k: usize) -> Result<PerronResult> {
    perron_integral_with(a, b, t, k, &QuadratureConfig::default())
}

/// As [`perron_integral`] with an explicit quadrature configuration.
///
/// The integrand at b − it is the conjugate of the one at b + it, so only
/// [0, T] is integrated and the result is real.
pub fn perron_integral_with(
    a: f64,
    b: f64,
    t: f64,
    k: usize,
    config: &QuadratureConfig,
) -> Result<PerronResult> {
    validate(a, b, t, k)?;
    let ln_a = a.ln();
    let scale = factorial(k);
    let cfg = QuadratureConfig {
        abs_tol: config.abs_tol * PI,
        ..*config
    };
    let half = integrate(
        |x| Complex64::new(kernel(ln_a, b, k, scale, x).re, 0.0),
        &panel_edges(t, b, ln_a.abs()),
        &cfg,
    )?;
    let numeric = Complex64::new(half.value.re / PI, 0.0);
    let bound = if a == 1.0 {
        unit_argument_bound(b, t, k)
    } else {
        lemma1_error_bound(a, b, t)?
    };
    Ok(PerronResult {
        a,
        b,
        t,
        k,
        numeric,
        main_term: main_term(a, t, k),
        bound,
        quadrature_error_estimate: half.error_estimate / PI,
    })
}

/// Reference evaluation over the whole segment [−T, T] without using the
/// conjugate symmetry. Returns the complex value (1/2π)∫ f(b+it) dt.
pub fn perron_integral_full_range(
    a: f64,
    b: f64,
    t: f64,
    k: usize,
    config: &QuadratureConfig,
) -> Result<QuadratureResult> {
    validate(a, b, t, k)?;
    let ln_a = a.ln();
    let scale = factorial(k);
    let cfg = QuadratureConfig {
        abs_tol: config.abs_tol * 2.0 * PI,
        ..*config
    };
    let mut r = integrate(
        |x| kernel(ln_a, b, k, scale, x),
        &symmetric_edges(t, b, ln_a.abs()),
        &cfg,
    )?;
    r.value /= 2.0 * PI;
    r.error_estimate /= 2.0 * PI;
    Ok(r)
}

fn symmetric_edges(t: f64, b: f64, omega: f64) -> Vec<f64> {
    let right = panel_edges(t, b, omega);
    let mut edges: Vec<f64> = right.iter().rev().map(|x| -x).collect();
    edges.extend_from_slice(&right[1..]);
    edges
}

/// A finite Dirichlet polynomial Σ a(n) n^−s.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletPolynomial {
    terms: Vec<(u64, Complex64)>,
}

impl DirichletPolynomial {
    /// Terms are sorted by n; repeated n are summed; n = 0 is rejected.
    pub fn new<I: IntoIterator<Item = (u64, Complex64)>>(terms: I) -> Result<Self> {
        let mut terms: Vec<(u64, Complex64)> = terms.into_iter().collect();
        if terms.iter().any(|&(n, _)| n == 0) {
            return invalid("Dirichlet coefficients start at n = 1");
        }
        terms.sort_by_key(|&(n, _)| n);
        let mut merged: Vec<(u64, Complex64)> = Vec::with_capacity(terms.len());
        for (n, c) in terms {
            match merged.last_mut() {
                Some((m, acc)) if *m == n => *acc += c,
                _ => merged.push((n, c)),
            }
        }
        Ok(Self { terms: merged })
    }

    pub fn from_real<I: IntoIterator<Item = (u64, f64)>>(terms: I) -> Result<Self> {
        Self::new(terms.into_iter().map(|(n, c)| (n, Complex64::new(c, 0.0))))
    }

    pub fn terms(&self) -> &[(u64, Complex64)] {
        &self.terms
    }

    /// F(x, s0) = Σ_{n≤x} Σ_{m≤n} a(m) m^−s0 = Σ_{m≤x} a(m) m^−s0 (x − m + 1).
    pub fn summatory(&self, x: u64, s0: Complex64) -> Complex64 {
        self.terms
            .iter()
            .take_while(|&&(m, _)| m <= x)
            .map(|&(m, c)| c * real_pow(m as f64, -s0) * (x - m + 1) as f64)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletCheck {
    /// F(x, s0).
    pub lhs: Complex64,
    /// x̄/(2πi) ∫_{b−iT}^{b+iT} A(s+s0) x̄^s/(s(s+1)) ds with x̄ = x + 1.
    pub rhs: Complex64,
    pub gap: f64,
    pub quadrature_error_estimate: f64,
}

/// Compare F(x, s0) with its Perron-kernel representation truncated at
/// height T.
pub fn dirichlet_perron_check(
    coeffs: &DirichletPolynomial,
    s0: Complex64,
    b: f64,
    t: f64,
    x: u64,
) -> Result<DirichletCheck> {
    dirichlet_perron_check_with(coeffs, s0, b, t, x, &QuadratureConfig::default())
}

pub fn dirichlet_perron_check_with(
    coeffs: &DirichletPolynomial,
    s0: Complex64,
    b: f64,
    t: f64,
    x: u64,
    config: &QuadratureConfig,
) -> Result<DirichletCheck> {
    if !(b > 0.0) || !(b + s0.re > 0.0) {
        return invalid(format!("need b > 0 and b + Re(s0) > 0, got b = {b}, s0 = {s0}"));
    }
    if !(t > 0.0) || !t.is_finite() {
        return invalid(format!("T = {t} must be positive"));
    }
    if x == 0 {
        return invalid("x must be at least 1");
    }
    let x_bar = (x + 1) as f64;
    // Each term contributes a(n) n^−s0 (x̄/n)^(b+it).
    let terms: Vec<(Complex64, f64)> = coeffs
        .terms()
        .iter()
        .map(|&(n, c)| {
            let ln_ratio = (x_bar / n as f64).ln();
            (c * real_pow(n as f64, -s0) * (b * ln_ratio).exp(), ln_ratio)
        })
        .collect();
    let omega = terms.iter().map(|&(_, w)| w.abs()).fold(0.0, f64::max);
    let integrand = |tt: f64| {
        let s = Complex64::new(b, tt);
        let series: Complex64 = terms
            .iter()
            .map(|&(c, w)| c * Complex64::from_polar(1.0, tt * w))
            .sum();
        series / (s * (s + 1.0))
    };
    let scale = 2.0 * PI / x_bar;
    let cfg = QuadratureConfig {
        abs_tol: config.abs_tol * scale,
        ..*config
    };
    let q = integrate(integrand, &symmetric_edges(t, b, omega), &cfg)?;
    let rhs = q.value / scale;
    let lhs = coeffs.summatory(x, s0);
    Ok(DirichletCheck {
        lhs,
        rhs,
        gap: (lhs - rhs).norm(),
        quadrature_error_estimate: q.error_estimate / scale,
    })
}

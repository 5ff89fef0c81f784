//! Ordinates of nontrivial zeros of ζ(s) and truncated sums over them.
//!
//! Every zero is taken as ρ = 1/2 + iγ, and the sums pair ρ with its
//! conjugate, so a sum over |Im ρ| ≤ T becomes 2·Re over 0 < γ ≤ T.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use num_complex::Complex64;

use crate::averaging::IteratedAverage;
use crate::error::{invalid, Error, Result};
use crate::summation::Neumaier;

/// Smallest admissible ordinate; the first zero sits at γ ≈ 14.134725.
const MIN_ORDINATE: f64 = 14.0;

/// Strictly increasing positive ordinates γ.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    gammas: Vec<f64>,
    source: String,
}

impl ZeroSet {
    pub fn empty(source: impl Into<String>) -> Self {
        Self {
            gammas: Vec::new(),
            source: source.into(),
        }
    }

    /// Validate and wrap ordinates.
    pub fn from_ordinates(gammas: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        for (i, &g) in gammas.iter().enumerate() {
            check_ordinate(g, i + 1)?;
            if i > 0 && g <= gammas[i - 1] {
                return Err(not_increasing(i + 1, gammas[i - 1], g));
            }
        }
        Ok(Self {
            gammas,
            source: source.into(),
        })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// The first `count` zeros.
    pub fn truncated(&self, count: usize) -> ZeroSet {
        ZeroSet {
            gammas: self.gammas[..count.min(self.gammas.len())].to_vec(),
            source: format!("{} (first {count})", self.source),
        }
    }

    /// Number of ordinates not exceeding `t`.
    pub fn count_up_to(&self, t: f64) -> usize {
        self.gammas.partition_point(|&g| g <= t)
    }

    fn up_to(&self, t: f64) -> &[f64] {
        &self.gammas[..self.count_up_to(t)]
    }

    fn check_cutoff(&self, t: f64) -> Result<()> {
        if t.is_nan() || t < 0.0 {
            return invalid(format!("height T = {t} must be non-negative"));
        }
        match self.gammas.last() {
            Some(&last) if t > last => Err(Error::OutOfData { cutoff: t, last }),
            _ => Ok(()),
        }
    }
}

fn check_ordinate(g: f64, line: usize) -> Result<()> {
    if !g.is_finite() || g <= MIN_ORDINATE {
        return Err(Error::Format {
            line,
            message: format!("ordinate {g} is not a zero ordinate (must exceed {MIN_ORDINATE})"),
        });
    }
    Ok(())
}

fn not_increasing(line: usize, prev: f64, g: f64) -> Error {
    Error::Format {
        line,
        message: format!("ordinate {g} does not exceed the previous one ({prev})"),
    }
}

/// Parse one ordinate per line. Lines starting with `#` and blank lines are
/// ignored; anything else must be exactly one decimal number.
pub fn load_zeros<R: Read>(source: R, name: &str) -> Result<ZeroSet> {
    let reader = BufReader::new(source);
    let mut gammas: Vec<f64> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut tokens = text.split_whitespace();
        let token = tokens.next().unwrap_or_default();
        if tokens.next().is_some() {
            return Err(Error::Format {
                line: lineno,
                message: format!("expected a single ordinate, found {text:?}"),
            });
        }
        let g: f64 = token.parse().map_err(|_| Error::Parse {
            line: lineno,
            token: token.to_string(),
        })?;
        check_ordinate(g, lineno)?;
        if let Some(&prev) = gammas.last() {
            if g <= prev {
                return Err(not_increasing(lineno, prev, g));
            }
        }
        gammas.push(g);
    }
    Ok(ZeroSet {
        gammas,
        source: name.to_string(),
    })
}

pub fn load_zeros_from_path(path: &Path) -> Result<ZeroSet> {
    let file = File::open(path)?;
    load_zeros(file, &path.display().to_string())
}

/// Paired zero sum for one (x, T, k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroSumResult {
    pub x: f64,
    pub t: f64,
    pub k: usize,
    pub value: f64,
    pub count_used: usize,
}

/// Π_{j=0}^{k} (ρ + j).
fn rho_product(rho: Complex64, k: usize) -> Complex64 {
    (1..=k).fold(rho, |acc, j| acc * (rho + j as f64))
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 1.0) || !x.is_finite() {
        return invalid(format!("x = {x} must exceed 1"));
    }
    Ok(())
}

fn check_order(k: usize) -> Result<()> {
    if k == 0 || k > 8 {
        return invalid(format!("kernel order {k} outside 1..=8"));
    }
    Ok(())
}

/// Σ_{0<γ≤T} 2·Re[x^ρ / Π_{j=0}^{k}(ρ+j)], ρ = 1/2 + iγ, accumulated in
/// ascending γ.
pub fn zero_sum(zeros: &ZeroSet, x: f64, t: f64, k: usize) -> Result<ZeroSumResult> {
    check_x(x)?;
    check_order(k)?;
    zeros.check_cutoff(t)?;
    let used = zeros.up_to(t);
    let ln_x = x.ln();
    let sqrt_x = x.sqrt();
    let mut acc = Neumaier::new();
    for &g in used {
        let rho = Complex64::new(0.5, g);
        let term = Complex64::from_polar(sqrt_x, g * ln_x) / rho_product(rho, k);
        acc.add(2.0 * term.re);
    }
    Ok(ZeroSumResult {
        x,
        t,
        k,
        value: acc.total(),
        count_used: used.len(),
    })
}

/// Triangle-inequality envelope 2·Σ_{γ≤T} x^{1/2}/Π|ρ+j| for [`zero_sum`].
pub fn zero_sum_bound(zeros: &ZeroSet, x: f64, t: f64, k: usize) -> Result<f64> {
    check_x(x)?;
    check_order(k)?;
    zeros.check_cutoff(t)?;
    let mut acc = Neumaier::new();
    for &g in zeros.up_to(t) {
        acc.add(2.0 / rho_product(Complex64::new(0.5, g), k).norm());
    }
    Ok(x.sqrt() * acc.total())
}

/// λ_i(x, T) = zero_sum(x, T, i) / x^{1/2}, i ∈ {1, 2, 3}.
pub fn lambda_factor(zeros: &ZeroSet, x: f64, t: f64, i: usize) -> Result<f64> {
    if !(1..=3).contains(&i) {
        return invalid(format!("λ_i is defined for i in 1..=3, got {i}"));
    }
    Ok(zero_sum(zeros, x, t, i)?.value / x.sqrt())
}

/// r̄(x) + zero_sum(x, T, 1): what is left of the first average error after
/// removing the oscillation carried by zeros up to height T.
pub fn explicit_formula_residual(
    avg: &IteratedAverage,
    zeros: &ZeroSet,
    x: usize,
    t: f64,
) -> Result<f64> {
    if avg.order() != 1 {
        return invalid(format!("need the first average (k = 1), got k = {}", avg.order()));
    }
    if x < 2 {
        return invalid("x must be at least 2");
    }
    Ok(avg.value(x)? + zero_sum(zeros, x as f64, t, 1)?.value)
}

/// 2·Σ_{γ≤T} 1/γ².
pub fn gamma_square_tail(zeros: &ZeroSet, t: f64) -> f64 {
    if !(t >= 0.0) {
        return 0.0;
    }
    let mut acc = Neumaier::new();
    for &g in zeros.up_to(t) {
        acc.add(2.0 / (g * g));
    }
    acc.total()
}

//! Iterated average errors and the statistics derived from their
//! differences.
//!
//! r̄^(k)(n) is the k-fold nested sum of r divided by C(n+k−1, k). It is
//! computed from k successive prefix sums held in double-double precision;
//! the differenced statistics are read off those precise values before any
//! rounding to `f64`.

use std::fmt;

use crate::error::{invalid, Result};
use crate::sieve::{ErrorSeries, LambdaTable};
use crate::summation::{DoubleDouble, Neumaier};
use crate::weights::{WeightFamily, WeightScheme, MAX_ORDER};

/// r̄^(k)(n) for 1 ≤ n ≤ n_max.
#[derive(Debug, Clone)]
pub struct IteratedAverage {
    order: usize,
    n_max: usize,
    values: Vec<f64>,
    precise: Vec<DoubleDouble>,
    partial_sums: Option<Vec<Vec<f64>>>,
}

/// C(n+k−1, k) in double-double.
fn multiset_count(n: usize, k: usize) -> DoubleDouble {
    let num = DoubleDouble::product((0..k).map(|m| (n + m) as f64));
    let fact: f64 = (1..=k).map(|m| m as f64).product();
    num / fact
}

impl IteratedAverage {
    /// Build r̄^(k) over 1..=n_max.
    pub fn new(series: &ErrorSeries, k: usize, n_max: usize) -> Result<Self> {
        Self::build(series, k, n_max, false)
    }

    /// As [`Self::new`], also keeping the intermediate prefix sums S_1..S_k.
    pub fn with_partial_sums(series: &ErrorSeries, k: usize, n_max: usize) -> Result<Self> {
        Self::build(series, k, n_max, true)
    }

    fn build(series: &ErrorSeries, k: usize, n_max: usize, keep: bool) -> Result<Self> {
        if k == 0 {
            return invalid("order k = 0: use the error series directly");
        }
        if k > MAX_ORDER {
            return invalid(format!("order k = {k} exceeds {MAX_ORDER}"));
        }
        if n_max == 0 || n_max > series.n_max() {
            return invalid(format!("n_max {n_max} outside 1..={}", series.n_max()));
        }
        let mut level: Vec<DoubleDouble> = std::iter::once(DoubleDouble::ZERO)
            .chain(series.values()[..n_max].iter().map(|&v| DoubleDouble::from(v)))
            .collect();
        let mut kept = keep.then(Vec::new);
        for _ in 0..k {
            let mut acc = DoubleDouble::ZERO;
            for slot in level.iter_mut().skip(1) {
                acc += *slot;
                *slot = acc;
            }
            if let Some(kept) = kept.as_mut() {
                kept.push(level.iter().map(|v| v.to_f64()).collect());
            }
        }
        let mut precise = vec![DoubleDouble::ZERO; n_max + 1];
        let mut values = vec![0.0; n_max + 1];
        for n in 1..=n_max {
            let avg = level[n] / multiset_count(n, k);
            precise[n] = avg;
            values[n] = avg.to_f64();
        }
        Ok(Self {
            order: k,
            n_max,
            values,
            precise,
            partial_sums: kept,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn value(&self, n: usize) -> Result<f64> {
        self.check(n, 1)?;
        Ok(self.values[n])
    }

    /// r̄^(k)(1..=n_max); element 0 is n = 1.
    pub fn values(&self) -> &[f64] {
        &self.values[1..]
    }

    /// S_1..S_k, each indexed by n, when built with
    /// [`Self::with_partial_sums`].
    pub fn partial_sums(&self) -> Option<&[Vec<f64>]> {
        self.partial_sums.as_deref()
    }

    pub fn as_series(&self) -> Series {
        Series::new(1, self.values[1..].to_vec())
    }

    fn check(&self, n: usize, first: usize) -> Result<()> {
        if n < first || n > self.n_max {
            return invalid(format!("index {n} outside {first}..={}", self.n_max));
        }
        Ok(())
    }

    fn difference(&self, n: usize) -> DoubleDouble {
        self.precise[n] - self.precise[n - 1]
    }

    fn scaled_difference(&self, n: usize) -> DoubleDouble {
        let m = n as f64;
        self.difference(n) * (m * (m - 1.0))
    }

    /// r̂^(i)(n) = (i+1)(r̄(n) − r̄(n−1)), n ≥ 2.
    pub fn hat_r(&self, n: usize) -> Result<f64> {
        self.check(n, 2)?;
        Ok((self.difference(n) * (self.order as f64 + 1.0)).to_f64())
    }

    /// (n−1)(r̄(n) − r̄(n−1)), n ≥ 2.
    pub fn hat_prime_r(&self, n: usize) -> Result<f64> {
        self.check(n, 2)?;
        Ok((self.difference(n) * (n as f64 - 1.0)).to_f64())
    }

    /// r̃^(i)(n) = (𝔯(n) − 𝔯(n−1))/2 with 𝔯(m) = m(m−1)(r̄(m) − r̄(m−1));
    /// needs n ≥ 3 and order ≥ 2.
    pub fn tilde_r(&self, n: usize) -> Result<f64> {
        if self.order < 2 {
            return invalid("r̃ needs order i ≥ 2");
        }
        self.check(n, 3)?;
        Ok(((self.scaled_difference(n) - self.scaled_difference(n - 1)) * 0.5).to_f64())
    }

    fn collect(&self, first: usize, f: impl Fn(usize) -> Result<f64>) -> Result<Series> {
        let values = (first..=self.n_max).map(f).collect::<Result<Vec<_>>>()?;
        Ok(Series::new(first, values))
    }

    pub fn hat_r_series(&self) -> Result<Series> {
        self.collect(2, |n| self.hat_r(n))
    }

    pub fn hat_prime_r_series(&self) -> Result<Series> {
        self.collect(2, |n| self.hat_prime_r(n))
    }

    pub fn tilde_r_series(&self) -> Result<Series> {
        self.collect(3, |n| self.tilde_r(n))
    }
}

/// `IteratedAverage::new` under its operational name.
pub fn iterated_average(series: &ErrorSeries, k: usize, n_max: usize) -> Result<IteratedAverage> {
    IteratedAverage::new(series, k, n_max)
}

/// r̄^(k)(n) = (1/C(n+k−1, k)) Σ_{m≤n} C(n+k−1−m, k−1) r(m), evaluated
/// directly in O(n·k).
pub fn average_via_weights(series: &ErrorSeries, k: usize, n: usize) -> Result<f64> {
    if k == 0 || k > MAX_ORDER {
        return invalid(format!("order k = {k} outside 1..={MAX_ORDER}"));
    }
    if n == 0 || n > series.n_max() {
        return invalid(format!("index {n} outside 1..={}", series.n_max()));
    }
    let big_n = (n + k - 1) as f64;
    let kf = k as f64;
    let lead = kf / (big_n - kf + 1.0);
    let mut acc = Neumaier::new();
    for (idx, &r) in series.values()[..n].iter().enumerate() {
        let m = (idx + 1) as f64;
        let w = (0..k - 1).fold(lead, |w, t| {
            let t = t as f64;
            w * ((big_n - m - t) / (big_n - t))
        });
        acc.add(w * r);
    }
    Ok(acc.total())
}

/// Σ_{j≤x} w(x, j) Λ(j) for any weight scheme.
pub fn weighted_lambda_sum(table: &LambdaTable, scheme: WeightScheme, x: usize) -> Result<f64> {
    if x == 0 || x > table.n_max() {
        return invalid(format!("index {x} outside 1..={}", table.n_max()));
    }
    let mut acc = Neumaier::new();
    for (idx, &lam) in table.lambda_values()[..x].iter().enumerate() {
        if lam != 0.0 {
            acc.add(scheme.weight_f64(x, idx + 1)? * lam);
        }
    }
    Ok(acc.total())
}

/// ψ_i(x) = Σ_{j≤x} a^(i)(x, j) Λ(j); ψ_0 is ψ itself.
pub fn weighted_psi(table: &LambdaTable, i: usize, x: usize) -> Result<f64> {
    if i == 0 {
        return table.psi(x);
    }
    weighted_lambda_sum(table, WeightScheme::new(WeightFamily::A, i)?, x)
}

/// ψ̂_i(x) = Σ b^(i)(x, j) Λ(j), x ≥ 2.
pub fn hat_psi(table: &LambdaTable, i: usize, x: usize) -> Result<f64> {
    weighted_lambda_sum(table, WeightScheme::new(WeightFamily::B, i)?, x)
}

/// ψ̂′_i(x) = Σ (j−1)·C(x+i−1−j, i−1)/C(x+i−1, i)·Λ(j).
pub fn hat_prime_psi(table: &LambdaTable, i: usize, x: usize) -> Result<f64> {
    weighted_lambda_sum(table, WeightScheme::new(WeightFamily::ScaledB, i)?, x)
}

/// ψ̃_i(x) = Σ h^(i)(x, j) Λ(j), i ≥ 2.
pub fn tilde_psi(table: &LambdaTable, i: usize, x: usize) -> Result<f64> {
    weighted_lambda_sum(table, WeightScheme::new(WeightFamily::H, i)?, x)
}

/// r̄^(i)(x) through ψ_i: ψ_i(x) − (x+i)/(i+1).
pub fn average_via_psi(table: &LambdaTable, i: usize, x: usize) -> Result<f64> {
    Ok(weighted_psi(table, i, x)? - (x + i) as f64 / (i + 1) as f64)
}

/// r̂^(i)(x) through ψ̂_i: ψ̂_i(x) − 1.
pub fn hat_r_via_weights(table: &LambdaTable, i: usize, x: usize) -> Result<f64> {
    if x < 2 {
        return invalid("r̂ is undefined at n = 1");
    }
    Ok(hat_psi(table, i, x)? - 1.0)
}

/// r̂′^(i)(x) through ψ̂′_i: ψ̂′_i(x) − (x−1)/(i+1).
pub fn hat_prime_r_via_weights(table: &LambdaTable, i: usize, x: usize) -> Result<f64> {
    if x < 2 {
        return invalid("r̂′ is undefined at n = 1");
    }
    Ok(hat_prime_psi(table, i, x)? - (x - 1) as f64 / (i + 1) as f64)
}

/// r̃^(i)(x) through ψ̃_i: ψ̃_i(x) − (x−1)/(i+1).
pub fn tilde_r_via_weights(table: &LambdaTable, i: usize, x: usize) -> Result<f64> {
    if x < 3 {
        return invalid("r̃ is undefined below n = 3");
    }
    Ok(tilde_psi(table, i, x)? - (x - 1) as f64 / (i + 1) as f64)
}

/// A run of values indexed by consecutive n starting at `first`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    first: usize,
    values: Vec<f64>,
}

impl Series {
    pub fn new(first: usize, values: Vec<f64>) -> Self {
        Self { first, values }
    }

    pub fn first(&self) -> usize {
        self.first
    }

    /// Last index, or `None` when empty.
    pub fn last(&self) -> Option<usize> {
        (!self.values.is_empty()).then(|| self.first + self.values.len() - 1)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.first).and_then(|i| self.values.get(i).copied())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (self.first + i, v))
    }

    fn window(&self, lo: usize, hi: usize) -> Result<&[f64]> {
        if lo > hi {
            return invalid(format!("empty range {lo}..={hi}"));
        }
        match self.last() {
            Some(last) if lo >= self.first && hi <= last => {
                Ok(&self.values[lo - self.first..=hi - self.first])
            }
            _ => invalid(format!(
                "range {lo}..={hi} not covered by series {}..={}",
                self.first,
                self.last().map_or("(empty)".to_string(), |l| l.to_string())
            )),
        }
    }
}

impl From<&ErrorSeries> for Series {
    fn from(series: &ErrorSeries) -> Self {
        Series::new(1, series.values().to_vec())
    }
}

/// Extremes of a series over lo..=hi with their first attaining indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSummary {
    pub lo: usize,
    pub hi: usize,
    pub min: f64,
    pub argmin: usize,
    pub max: f64,
    pub argmax: usize,
}

pub fn range_summary(series: &Series, lo: usize, hi: usize) -> Result<RangeSummary> {
    let window = series.window(lo, hi)?;
    let mut summary = RangeSummary {
        lo,
        hi,
        min: f64::INFINITY,
        argmin: lo,
        max: f64::NEG_INFINITY,
        argmax: lo,
    };
    for (offset, &v) in window.iter().enumerate() {
        if v.is_nan() {
            return invalid(format!("NaN at index {}", lo + offset));
        }
        if v < summary.min {
            summary.min = v;
            summary.argmin = lo + offset;
        }
        if v > summary.max {
            summary.max = v;
            summary.argmax = lo + offset;
        }
    }
    Ok(summary)
}

/// Arithmetic mean of a series over lo..=hi.
pub fn series_mean(series: &Series, lo: usize, hi: usize) -> Result<f64> {
    let window = series.window(lo, hi)?;
    let mut acc = Neumaier::new();
    acc.extend(window.iter().copied());
    Ok(acc.total() / window.len() as f64)
}

/// Which derived quantity a series holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// r(n) = ψ(n) − n.
    Error,
    /// r̄^(k).
    Average(usize),
    /// r̂^(i) = (i+1)(r̄^(i)(n) − r̄^(i)(n−1)).
    Hat(usize),
    /// r̂′^(i) = (n−1)(r̄^(i)(n) − r̄^(i)(n−1)).
    HatPrime(usize),
    /// r̃^(i).
    Tilde(usize),
}

impl Statistic {
    /// First index at which the statistic is defined.
    pub fn first_index(&self) -> usize {
        match self {
            Statistic::Error | Statistic::Average(_) => 1,
            Statistic::Hat(_) | Statistic::HatPrime(_) => 2,
            Statistic::Tilde(_) => 3,
        }
    }

    /// Compute the series over first_index..=n_max.
    pub fn series(&self, errors: &ErrorSeries, n_max: usize) -> Result<Series> {
        match *self {
            Statistic::Error => {
                if n_max == 0 || n_max > errors.n_max() {
                    return invalid(format!("n_max {n_max} outside 1..={}", errors.n_max()));
                }
                Ok(Series::new(1, errors.values()[..n_max].to_vec()))
            }
            Statistic::Average(k) => Ok(IteratedAverage::new(errors, k, n_max)?.as_series()),
            Statistic::Hat(i) => IteratedAverage::new(errors, i, n_max)?.hat_r_series(),
            Statistic::HatPrime(i) => IteratedAverage::new(errors, i, n_max)?.hat_prime_r_series(),
            Statistic::Tilde(i) => IteratedAverage::new(errors, i, n_max)?.tilde_r_series(),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::Error => write!(f, "r"),
            Statistic::Average(k) => write!(f, "rbar{k}"),
            Statistic::Hat(i) => write!(f, "rhat{i}"),
            Statistic::HatPrime(i) => write!(f, "rhatprime{i}"),
            Statistic::Tilde(i) => write!(f, "rtilde{i}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(n: usize) -> (LambdaTable, ErrorSeries) {
        let t = LambdaTable::build(n).unwrap();
        let r = t.error_series(n).unwrap();
        (t, r)
    }

    #[test]
    fn first_value_is_minus_one() {
        let (_, r) = setup(50);
        for k in 1..=MAX_ORDER {
            let avg = IteratedAverage::new(&r, k, 50).unwrap();
            assert_eq!(avg.value(1).unwrap(), -1.0);
        }
    }

    #[test]
    fn order_zero_rejected() {
        let (_, r) = setup(10);
        assert!(IteratedAverage::new(&r, 0, 10).is_err());
        assert!(IteratedAverage::new(&r, 9, 10).is_err());
        assert!(IteratedAverage::new(&r, 1, 11).is_err());
        assert!(average_via_weights(&r, 0, 5).is_err());
    }

    #[test]
    fn average_at_two() {
        let (_, r) = setup(10);
        let expected = (-1.0 + (2f64.ln() - 2.0)) / 2.0;
        let avg = IteratedAverage::new(&r, 1, 10).unwrap();
        assert!((avg.value(2).unwrap() - expected).abs() < 1e-15);
        assert!((expected - -1.1534264).abs() < 1e-7);
        assert!((average_via_weights(&r, 1, 2).unwrap() - expected).abs() < 1e-15);
        assert_eq!(average_via_weights(&r, 2, 1).unwrap(), -1.0);
    }

    #[test]
    fn hat_values_at_two() {
        let (_, r) = setup(10);
        let avg = IteratedAverage::new(&r, 1, 10).unwrap();
        let hat = avg.hat_r(2).unwrap();
        assert!((hat - (2f64.ln() - 1.0)).abs() < 1e-15);
        assert!((hat - -0.3068528).abs() < 1e-7);
        assert!((avg.hat_prime_r(2).unwrap() - (2f64.ln() - 1.0) / 2.0).abs() < 1e-15);
        assert!(avg.hat_r(1).is_err());
        assert!(avg.hat_prime_r(1).is_err());
        assert!(avg.tilde_r(3).is_err());
    }

    #[test]
    fn tilde_at_three() {
        // Both sides of the h-weight identity evaluated by hand at n = 3, i = 2.
        let (t, r) = setup(10);
        let avg = IteratedAverage::new(&r, 2, 10).unwrap();
        let (l2, l3) = (2f64.ln(), 3f64.ln());
        // h^(2)(3, j) = C(j,2)/C(4,2): j=2 -> 1/6, j=3 -> 3/6
        let rhs = l2 / 6.0 + l3 / 2.0 - 2.0 / 3.0;
        assert!((avg.tilde_r(3).unwrap() - rhs).abs() < 1e-13);
        assert!((tilde_r_via_weights(&t, 2, 3).unwrap() - rhs).abs() < 1e-13);
        assert!(avg.tilde_r(2).is_err());
    }

    #[test]
    fn psi_zero_is_psi() {
        let (t, _) = setup(100);
        assert_eq!(weighted_psi(&t, 0, 10).unwrap(), t.psi(10).unwrap());
        assert_eq!(weighted_psi(&t, 1, 1).unwrap(), 0.0);
    }

    #[test]
    fn psi_one_matches_average() {
        let (t, r) = setup(100);
        let avg = IteratedAverage::new(&r, 1, 100).unwrap();
        let via = weighted_psi(&t, 1, 100).unwrap() - 101.0 / 2.0;
        assert!((via - avg.value(100).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn partial_sums_kept() {
        let (_, r) = setup(20);
        let avg = IteratedAverage::with_partial_sums(&r, 2, 20).unwrap();
        let sums = avg.partial_sums().unwrap();
        assert_eq!(sums.len(), 2);
        assert!((sums[0][3] - (r.r(1).unwrap() + r.r(2).unwrap() + r.r(3).unwrap())).abs() < 1e-14);
        assert!(IteratedAverage::new(&r, 2, 20).unwrap().partial_sums().is_none());
    }

    #[test]
    fn range_summary_basics() {
        let s = Series::new(1, vec![3.0, -1.0, 5.0, -1.0, 5.0]);
        let sum = range_summary(&s, 1, 5).unwrap();
        assert_eq!((sum.min, sum.argmin, sum.max, sum.argmax), (-1.0, 2, 5.0, 3));
        let c = Series::new(4, vec![2.0; 3]);
        let sum = range_summary(&c, 4, 6).unwrap();
        assert_eq!(sum.min, sum.max);
        assert!(range_summary(&s, 3, 2).is_err());
        assert!(range_summary(&s, 0, 2).is_err());
        assert!(range_summary(&s, 1, 6).is_err());
        assert!(range_summary(&Series::new(1, vec![]), 1, 1).is_err());
        assert_eq!(series_mean(&s, 1, 2).unwrap(), 1.0);
    }

    #[test]
    fn statistic_labels() {
        assert_eq!(Statistic::Average(2).to_string(), "rbar2");
        assert_eq!(Statistic::HatPrime(5).to_string(), "rhatprime5");
        assert_eq!(Statistic::Tilde(3).first_index(), 3);
    }
}

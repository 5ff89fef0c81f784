//! Invariant suites at reduced scale (n ≤ 10^4, T ≤ 10^3).
//!
//! Each suite returns a one-line detail on success and names the violated
//! invariant on failure.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::averaging::{
    average_via_psi, average_via_weights, hat_prime_r_via_weights, hat_r_via_weights,
    range_summary, tilde_r_via_weights, IteratedAverage,
};
use crate::error::Result;
use crate::perron::{
    dirichlet_perron_check, perron_integral, perron_integral_full_range, DirichletPolynomial,
};
use crate::quadrature::QuadratureConfig;
use crate::sieve::{ErrorSeries, LambdaTable};
use crate::weights::{WeightFamily, WeightScheme};
use crate::zeros::{explicit_formula_residual, gamma_square_tail, zero_sum, zero_sum_bound, ZeroSet};

/// Largest n touched by the suites.
pub const CHECK_N_MAX: usize = 10_000;

/// Largest height T touched by the suites.
pub const CHECK_T_MAX: f64 = 1_000.0;

pub struct CheckContext {
    pub table: LambdaTable,
    pub errors: ErrorSeries,
    pub zeros: Option<ZeroSet>,
}

impl CheckContext {
    pub fn new(table: LambdaTable, zeros: Option<ZeroSet>) -> Result<Self> {
        let n = table.n_max().min(CHECK_N_MAX);
        let errors = table.error_series(n)?;
        Ok(Self {
            table,
            errors,
            zeros,
        })
    }

    fn n_max(&self) -> usize {
        self.errors.n_max()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

impl Outcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

type SuiteFn = fn(&CheckContext) -> Result<Outcome>;

/// Suite names paired with their runners, in execution order.
pub const SUITES: &[(&str, SuiteFn)] = &[
    ("psi_lcm_oracle", psi_lcm_oracle),
    ("prime_count_oracle", prime_count_oracle),
    ("psi_theta_prime_powers", psi_theta_prime_powers),
    ("nested_sum_oracle", nested_sum_oracle),
    ("weight_form_equivalence", weight_form_equivalence),
    ("exact_b_normalization", exact_b_normalization),
    ("weighted_sum_identities", weighted_sum_identities),
    ("hat_scaling", hat_scaling),
    ("range_containment", range_containment),
    ("perron_envelope", perron_envelope),
    ("perron_unit_argument", perron_unit_argument),
    ("perron_conjugate_symmetry", perron_conjugate_symmetry),
    ("dirichlet_convergence", dirichlet_convergence),
    ("zero_sum_additivity", zero_sum_additivity),
    ("zero_sum_bound", zero_sum_envelope),
    ("gamma_tail", gamma_tail),
    ("explicit_formula_trend", explicit_formula_trend),
];

/// Run every suite in order; a computation error counts as a failure.
pub fn run_all(ctx: &CheckContext) -> Vec<(&'static str, Outcome)> {
    SUITES
        .iter()
        .map(|&(name, suite)| {
            let outcome = suite(ctx).unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")));
            (name, outcome)
        })
        .collect()
}

fn verdict(worst: f64, tol: f64, what: &str) -> Outcome {
    if worst <= tol {
        Outcome::Pass(format!("max {what} {worst:.3e} ≤ {tol:.0e}"))
    } else {
        Outcome::Fail(format!("max {what} {worst:.3e} > {tol:.0e}"))
    }
}

/// Natural log of a big integer.
fn big_ln(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 64 {
        return (v.to_u64().unwrap_or(0) as f64).ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().unwrap_or(0) as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn psi_lcm_oracle(ctx: &CheckContext) -> Result<Outcome> {
    let n_max = ctx.n_max().min(2000);
    let mut lcm = BigUint::one();
    let mut worst: f64 = 0.0;
    for n in 1..=n_max {
        lcm = lcm.lcm(&BigUint::from(n));
        let ln_lcm = if n == 1 { 0.0 } else { big_ln(&lcm) };
        worst = worst.max((ctx.table.psi(n)? - ln_lcm).abs());
    }
    Ok(verdict(worst, 1e-9, "|ψ(n) − log lcm(1..n)|"))
}

fn prime_count_oracle(ctx: &CheckContext) -> Result<Outcome> {
    let mut count = 0u64;
    for n in 1..=ctx.n_max() {
        if n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0) {
            count += 1;
        }
        let got = ctx.table.prime_pi(n)?;
        if got != count {
            return Ok(Outcome::Fail(format!("π({n}) = {got}, trial division gives {count}")));
        }
    }
    Ok(Outcome::Pass(format!("π(n) exact for n ≤ {}", ctx.n_max())))
}

fn psi_theta_prime_powers(ctx: &CheckContext) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for n in [100usize, 1000].into_iter().filter(|&n| n <= ctx.n_max()) {
        let psi = ctx.table.psi(n)?;
        let theta = ctx.table.theta(n)?;
        if psi < theta {
            return Ok(Outcome::Fail(format!("ψ({n}) < θ({n})")));
        }
        // θ(⌊n^{1/m}⌋) for m ≥ 2, with the integer root found by enumeration.
        let mut rhs = 0.0;
        for m in 2u32.. {
            let root = (1..=n).take_while(|&r| r.pow(m) <= n).last().unwrap_or(1);
            if root < 2 {
                break;
            }
            rhs += ctx.table.theta(root)?;
        }
        worst = worst.max((psi - theta - rhs).abs());
    }
    Ok(verdict(worst, 1e-9, "|ψ − θ − Σθ(n^{1/m})|"))
}

/// r̄^(k)(n) by literal k-fold nesting over r.
pub fn nested_sum(errors: &ErrorSeries, k: usize, n: usize) -> Result<f64> {
    let r = errors.values();
    let mut level: Vec<f64> = r[..n].to_vec();
    for _ in 0..k {
        level = (1..=n)
            .map(|m| {
                let mut acc = crate::summation::Neumaier::new();
                acc.extend(level[..m].iter().copied());
                acc.total()
            })
            .collect();
    }
    let count: f64 = (0..k).map(|t| (n + t) as f64 / (t + 1) as f64).product();
    Ok(level[n - 1] / count)
}

fn nested_sum_oracle(ctx: &CheckContext) -> Result<Outcome> {
    let n_max = ctx.n_max().min(300);
    let mut worst: f64 = 0.0;
    for k in 1..=3 {
        let avg = IteratedAverage::new(&ctx.errors, k, n_max)?;
        for n in 1..=n_max {
            worst = worst.max((nested_sum(&ctx.errors, k, n)? - avg.value(n)?).abs());
        }
    }
    Ok(verdict(worst, 1e-9, "|nested − prefix|"))
}

fn weight_form_equivalence(ctx: &CheckContext) -> Result<Outcome> {
    let n_max = ctx.n_max().min(1000);
    let mut worst: f64 = 0.0;
    for k in 1..=3 {
        let avg = IteratedAverage::new(&ctx.errors, k, n_max)?;
        for n in 1..=n_max {
            worst = worst.max((average_via_weights(&ctx.errors, k, n)? - avg.value(n)?).abs());
        }
    }
    Ok(verdict(worst, 1e-9, "|weight form − prefix|"))
}

fn exact_b_normalization(ctx: &CheckContext) -> Result<Outcome> {
    let n_max = ctx.n_max().min(500);
    for i in 1..=5 {
        let scheme = WeightScheme::new(WeightFamily::B, i)?;
        for n in 2..=n_max {
            let sum: BigRational = scheme.exact_row_sum(n)?;
            if !sum.is_one() {
                return Ok(Outcome::Fail(format!("Σ_j b^({i})({n}, j) = {sum}")));
            }
        }
    }
    Ok(Outcome::Pass(format!("Σ_j b = 1 exactly for 2 ≤ n ≤ {n_max}, i ≤ 5")))
}

/// Every n up to 1000, then every 37th n up to the table size.
fn identity_sample(n_max: usize, first: usize) -> impl Iterator<Item = usize> {
    (first..=n_max.min(1000)).chain((1000..=n_max).step_by(37).skip(1))
}

fn weighted_sum_identities(ctx: &CheckContext) -> Result<Outcome> {
    let n_max = ctx.n_max();
    let mut worst: f64 = 0.0;
    for i in 1..=5 {
        let avg = IteratedAverage::new(&ctx.errors, i, n_max)?;
        for n in identity_sample(n_max, 1) {
            worst = worst.max((average_via_psi(&ctx.table, i, n)? - avg.value(n)?).abs());
            if n >= 2 {
                worst = worst.max((hat_r_via_weights(&ctx.table, i, n)? - avg.hat_r(n)?).abs());
                worst = worst
                    .max((hat_prime_r_via_weights(&ctx.table, i, n)? - avg.hat_prime_r(n)?).abs());
            }
            if n >= 3 && i >= 2 {
                worst = worst.max((tilde_r_via_weights(&ctx.table, i, n)? - avg.tilde_r(n)?).abs());
            }
        }
    }
    Ok(verdict(worst, 1e-7, "|weighted sum − difference form|"))
}

fn hat_scaling(ctx: &CheckContext) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for i in 1..=5 {
        let avg = IteratedAverage::new(&ctx.errors, i, ctx.n_max())?;
        for n in 2..=ctx.n_max() {
            let lhs = avg.hat_prime_r(n)? * (i + 1) as f64;
            let rhs = avg.hat_r(n)? * (n - 1) as f64;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok(verdict(worst, 1e-9, "|(i+1)r̂′ − (n−1)r̂|"))
}

fn range_containment(ctx: &CheckContext) -> Result<Outcome> {
    let n = ctx.n_max();
    let ranges = (1..=3)
        .map(|k| range_summary(&IteratedAverage::new(&ctx.errors, k, n)?.as_series(), 1, n))
        .collect::<Result<Vec<_>>>()?;
    for k in 0..2 {
        let (outer, inner) = (&ranges[k], &ranges[k + 1]);
        if inner.min < outer.min || inner.max > outer.max {
            return Ok(Outcome::Fail(format!(
                "range of r̄^({}) not inside range of r̄^({}) on [1, {n}]",
                k + 2,
                k + 1
            )));
        }
    }
    Ok(Outcome::Pass(format!("r̄^(3) ⊂ r̄^(2) ⊂ r̄ on [1, {n}]")))
}

pub const ENVELOPE_A: [f64; 7] = [1.01, 1.5, 2.0, 5.0, 0.99, 0.5, 0.1];
pub const ENVELOPE_B: [f64; 3] = [0.5, 1.0, 2.0];
pub const SAFETY_FACTOR: f64 = 4.0;

fn perron_envelope(_: &CheckContext) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for &a in &ENVELOPE_A {
        for &b in &ENVELOPE_B {
            for t in [1e2, CHECK_T_MAX] {
                for k in 1..=3 {
                    let r = perron_integral(a, b, t, k)?;
                    worst = worst.max(r.ratio());
                }
            }
        }
    }
    Ok(verdict(worst, SAFETY_FACTOR, "gap/bound"))
}

fn perron_unit_argument(_: &CheckContext) -> Result<Outcome> {
    let cfg = QuadratureConfig {
        abs_tol: 1e-14,
        ..Default::default()
    };
    let fitted = [1e2, CHECK_T_MAX]
        .iter()
        .map(|&t| {
            let r = crate::perron::perron_integral_with(1.0, 1.0, t, 1, &cfg)?;
            Ok(r.gap() * t.powi(3))
        })
        .collect::<Result<Vec<f64>>>()?;
    let spread = fitted[0].max(fitted[1]) / fitted[0].min(fitted[1]);
    if spread <= 2.0 {
        Ok(Outcome::Pass(format!("T³·gap = {:.4}, {:.4}", fitted[0], fitted[1])))
    } else {
        Ok(Outcome::Fail(format!(
            "T³·|numeric − 1/(πT)| drifts: {:.4} vs {:.4}",
            fitted[0], fitted[1]
        )))
    }
}

fn perron_conjugate_symmetry(_: &CheckContext) -> Result<Outcome> {
    let cfg = QuadratureConfig {
        abs_tol: 1e-13,
        ..Default::default()
    };
    let mut worst: f64 = 0.0;
    for &(a, b, k) in &[(2.0, 1.0, 1), (0.5, 0.5, 2), (1.5, 2.0, 3)] {
        let half = crate::perron::perron_integral_with(a, b, 200.0, k, &cfg)?;
        let full = perron_integral_full_range(a, b, 200.0, k, &cfg)?;
        worst = worst.max((half.numeric - full.value).norm());
    }
    Ok(verdict(worst, 1e-12, "|half range − full range|"))
}

/// Λ(n) for n ≤ 50 as a Dirichlet polynomial.
pub fn lambda_polynomial(table: &LambdaTable, n_max: usize) -> Result<DirichletPolynomial> {
    let terms = (1..=n_max)
        .map(|n| Ok((n as u64, table.lambda(n)?)))
        .collect::<Result<Vec<_>>>()?;
    DirichletPolynomial::from_real(terms.into_iter().filter(|&(_, c)| c != 0.0))
}

fn dirichlet_convergence(ctx: &CheckContext) -> Result<Outcome> {
    let poly = lambda_polynomial(&ctx.table, 50)?;
    let s0 = Complex64::new(0.0, 0.0);
    let low = dirichlet_perron_check(&poly, s0, 1.0, 1e2, 30)?;
    let high = dirichlet_perron_check(&poly, s0, 1.0, CHECK_T_MAX, 30)?;
    let shrink = low.gap / high.gap;
    if shrink >= 5.0 {
        Ok(Outcome::Pass(format!("gap shrinks {shrink:.2}× from T = 100 to 1000")))
    } else {
        Ok(Outcome::Fail(format!("gap shrinks only {shrink:.2}× from T = 100 to 1000")))
    }
}

fn zeros_or_skip(ctx: &CheckContext) -> std::result::Result<&ZeroSet, Outcome> {
    match &ctx.zeros {
        Some(z) if !z.is_empty() => Ok(z),
        _ => Err(Outcome::Skipped("no zeros file (pass --zeros)".to_string())),
    }
}

/// Largest usable height within the reduced scale.
fn height(zeros: &ZeroSet) -> f64 {
    zeros.gammas().last().copied().unwrap_or(0.0).min(CHECK_T_MAX)
}

fn zero_sum_additivity(ctx: &CheckContext) -> Result<Outcome> {
    let zeros = match zeros_or_skip(ctx) {
        Ok(z) => z,
        Err(o) => return Ok(o),
    };
    let t2 = height(zeros);
    let t1 = 0.5 * t2;
    let mut worst: f64 = 0.0;
    for x in [10.0, 1234.5, 1e4] {
        for k in 1..=3 {
            let whole = zero_sum(zeros, x, t2, k)?.value;
            let lower = zero_sum(zeros, x, t1, k)?.value;
            let upper_set = ZeroSet::from_ordinates(
                zeros.gammas().iter().copied().filter(|&g| g > t1).collect(),
                "upper",
            )?;
            let upper = zero_sum(&upper_set, x, t2, k)?.value;
            worst = worst.max((whole - lower - upper).abs());
        }
    }
    Ok(verdict(worst, 1e-12, "|S(T2) − S(T1) − S(T1, T2]|"))
}

fn zero_sum_envelope(ctx: &CheckContext) -> Result<Outcome> {
    let zeros = match zeros_or_skip(ctx) {
        Ok(z) => z,
        Err(o) => return Ok(o),
    };
    let t = height(zeros);
    for x in [2.0, 100.0, 1e4, 1e5] {
        for k in 1..=3 {
            let v = zero_sum(zeros, x, t, k)?.value.abs();
            let bound = zero_sum_bound(zeros, x, t, k)?;
            let coarse = x.sqrt() * gamma_square_tail(zeros, t);
            if v > bound * (1.0 + 1e-12) || (bound > coarse * (1.0 + 1e-12)) {
                return Ok(Outcome::Fail(format!(
                    "|zero_sum({x}, {t}, {k})| = {v:e} exceeds its envelope"
                )));
            }
        }
    }
    Ok(Outcome::Pass(format!("|S| ≤ 2√x·Σ1/|ρ(ρ+1)⋯| ≤ √x·2Σγ⁻² up to T = {t}")))
}

fn gamma_tail(ctx: &CheckContext) -> Result<Outcome> {
    let zeros = match zeros_or_skip(ctx) {
        Ok(z) => z,
        Err(o) => return Ok(o),
    };
    let mut prev = 0.0;
    for &g in zeros.gammas().iter().filter(|&&g| g <= CHECK_T_MAX) {
        let v = gamma_square_tail(zeros, g);
        if v < prev {
            return Ok(Outcome::Fail(format!("gamma_square_tail decreases at T = {g}")));
        }
        prev = v;
    }
    // Over all zeros, 2Σ1/γ² is ≈ 0.0462; any prefix stays below it.
    if prev > 0.0462 {
        return Ok(Outcome::Fail(format!("gamma_square_tail = {prev} exceeds 0.0462")));
    }
    Ok(Outcome::Pass(format!("monotone, reaches {prev:.6}")))
}

/// 100 integers spread evenly over [10^3, 10^4].
pub fn residual_sample() -> Vec<usize> {
    (0..100).map(|j| 1000 + j * 9000 / 99).collect()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 0 {
        0.5 * (v[m - 1] + v[m])
    } else {
        v[m]
    }
}

/// Median |r̄(x) + zero_sum(x, T, 1)| over the sample.
pub fn median_residual(avg: &IteratedAverage, zeros: &ZeroSet, t: f64) -> Result<f64> {
    let residuals = residual_sample()
        .into_iter()
        .map(|x| explicit_formula_residual(avg, zeros, x, t).map(f64::abs))
        .collect::<Result<Vec<_>>>()?;
    Ok(median(residuals))
}

fn explicit_formula_trend(ctx: &CheckContext) -> Result<Outcome> {
    let zeros = match zeros_or_skip(ctx) {
        Ok(z) => z,
        Err(o) => return Ok(o),
    };
    if zeros.len() < 21 || ctx.n_max() < 10_000 {
        return Ok(Outcome::Skipped("needs ≥ 21 zeros and n_max ≥ 10^4".to_string()));
    }
    let avg = IteratedAverage::new(&ctx.errors, 1, 10_000)?;
    let (t_few, t_many) = (zeros.gammas()[19], height(zeros));
    let few = median_residual(&avg, zeros, t_few)?;
    let many = median_residual(&avg, zeros, t_many)?;
    let used = zeros.count_up_to(t_many);
    let detail = format!(
        "median residual {few:.4} (20 zeros) → {many:.4} ({used} zeros); about 1/2 − log 2π: {:.4} → {:.4}",
        median_offset(&avg, zeros, t_few)?,
        median_offset(&avg, zeros, t_many)?
    );
    if many <= few {
        Ok(Outcome::Pass(detail))
    } else {
        Ok(Outcome::Fail(detail))
    }
}

/// Median |residual − (1/2 − log 2π)|, the spread of the residual about the
/// constant it settles at. Diagnostic only.
pub fn median_offset(avg: &IteratedAverage, zeros: &ZeroSet, t: f64) -> Result<f64> {
    let c = 0.5 - std::f64::consts::TAU.ln();
    let offsets = residual_sample()
        .into_iter()
        .map(|x| explicit_formula_residual(avg, zeros, x, t).map(|v| (v - c).abs()))
        .collect::<Result<Vec<_>>>()?;
    Ok(median(offsets))
}

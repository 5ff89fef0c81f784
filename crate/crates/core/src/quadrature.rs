//! Adaptive 21-point Gauss–Kronrod quadrature for complex-valued integrands
//! on a finite interval.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, QuadratureDiagnostics, Result};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980138164,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ...
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 0.0,
            max_subdivisions: 400_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub panels: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
    /// Error is already at the rounding floor for this panel.
    converged: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> Complex64>(f: &F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut values = [Complex64::new(0.0, 0.0); 21];
    values[20] = fc;
    let mut res_abs = WGK[10] * fc.norm();
    for i in 0..10 {
        let dx = half * XGK[i];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        values[2 * i] = f1;
        values[2 * i + 1] = f2;
        kronrod += (f1 + f2) * WGK[i];
        res_abs += WGK[i] * (f1.norm() + f2.norm());
        if i % 2 == 1 {
            gauss += (f1 + f2) * WG[i / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).norm();
    for i in 0..10 {
        res_asc += WGK[i] * ((values[2 * i] - mean).norm() + (values[2 * i + 1] - mean).norm());
    }
    let value = kronrod * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((kronrod - gauss) * half).norm();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    let converged = error <= floor;
    Panel {
        lo,
        hi,
        value,
        error: error.max(floor),
        converged,
    }
}

/// Integrate `f` over the panels delimited by `edges` (ascending), bisecting
/// the panel with the largest error estimate until the total estimate meets
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    edges: &[f64],
    config: &QuadratureConfig,
) -> Result<QuadratureResult> {
    assert!(edges.len() >= 2, "need at least one panel");
    let mut heap: BinaryHeap<Panel> = edges
        .windows(2)
        .map(|w| gauss_kronrod(&f, w[0], w[1]))
        .collect();
    let mut evaluations = 21 * heap.len();
    let mut subdivisions = 0usize;
    let mut done: Vec<Panel> = Vec::new();
    let (mut value, mut error) = totals(heap.iter());
    loop {
        let tol = config.abs_tol.max(config.rel_tol * value.norm());
        if error <= tol {
            // Re-sum from scratch so the running totals' drift never leaks out.
            let (value, error) = totals(heap.iter().chain(done.iter()));
            if error <= tol {
                return Ok(QuadratureResult {
                    value,
                    error_estimate: error,
                    panels: heap.len() + done.len(),
                    evaluations,
                });
            }
        }
        let Some(worst) = heap.pop() else {
            // Every panel sits at its rounding floor; nothing left to refine.
            return Err(failure(value, error, tol, subdivisions));
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if worst.converged || mid <= worst.lo || mid >= worst.hi {
            done.push(worst);
            continue;
        }
        if subdivisions >= config.max_subdivisions {
            return Err(failure(value, error, tol, subdivisions));
        }
        let left = gauss_kronrod(&f, worst.lo, mid);
        let right = gauss_kronrod(&f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        evaluations += 42;
        subdivisions += 1;
        if subdivisions % 4096 == 0 {
            (value, error) = totals(heap.iter().chain(done.iter()));
        }
    }
}

fn failure(estimate: Complex64, error: f64, tol: f64, subdivisions: usize) -> Error {
    Error::NumericFailure(QuadratureDiagnostics {
        estimate: estimate.re,
        error_estimate: error,
        tolerance: tol,
        subdivisions,
    })
}

fn totals<'a>(panels: impl Iterator<Item = &'a Panel>) -> (Complex64, f64) {
    // Panel contributions can be O(1) with opposite signs; keep the sum
    // compensated.
    let mut re = crate::summation::Neumaier::new();
    let mut im = crate::summation::Neumaier::new();
    let mut err = 0.0;
    for p in panels {
        re.add(p.value.re);
        im.add(p.value.im);
        err += p.error;
    }
    (Complex64::new(re.total(), im.total()), err)
}

/// Panel edges on [lo, hi] (lo ≥ 0) whose widths grow geometrically with t
/// (starting from `scale`) but never exceed one period `2π/ω` of an
/// oscillation with angular frequency `omega`.
pub fn graded_edges(lo: f64, hi: f64, scale: f64, omega: f64) -> Vec<f64> {
    let cap = if omega > 0.0 {
        std::f64::consts::TAU / omega
    } else {
        f64::INFINITY
    };
    let mut edges = vec![lo];
    let mut t = lo;
    while t < hi {
        let step = t.max(scale).min(cap);
        t = (t + step).min(hi);
        edges.push(t);
    }
    edges
}

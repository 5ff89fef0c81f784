//! Binomial weight families that express the averaged errors as weighted
//! sums of Λ.
//!
//! With N = n + i − 1 and C(m, k) the binomial coefficient:
//!
//! * `A`: a(n, j) = C(n+i−j, i) / C(N, i)
//! * `B`: b(n, j) = (j−1)·C(N−j, i−1) / C(N, i+1), summing to 1 over j ≤ n
//! * `ScaledB`: (j−1)·C(N−j, i−1) / C(N, i) = b(n, j)·(n−1)/(i+1)
//! * `H`: h(n, j) = C(N−1−j, i−2)·C(j, 2) / C(N, i), for i ≥ 2
//!
//! Every ratio is evaluated as a product of at most i + 2 small factors so
//! no factorial is ever formed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightFamily {
    A,
    B,
    ScaledB,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightScheme {
    family: WeightFamily,
    order: usize,
}

/// Largest order accepted; keeps every factor product small.
pub const MAX_ORDER: usize = 8;

/// Factors of a weight: an integer prefactor times Π num/den.
struct Factors {
    prefactor: u64,
    ratios: Vec<(u64, u64)>,
}

impl WeightScheme {
    pub fn new(family: WeightFamily, order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return invalid(format!("weight order {order} exceeds {MAX_ORDER}"));
        }
        match family {
            WeightFamily::B | WeightFamily::ScaledB if order < 1 => {
                invalid("families B and ScaledB need order i ≥ 1")
            }
            WeightFamily::H if order < 2 => invalid("family H needs order i ≥ 2"),
            _ => Ok(Self { family, order }),
        }
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn factors(&self, n: usize, j: usize) -> Result<Factors> {
        if j == 0 || j > n {
            return invalid(format!("weight index j = {j} outside 1..={n}"));
        }
        if self.family == WeightFamily::B && n < 2 {
            return invalid("family B is undefined at n = 1");
        }
        let (n, j, i) = (n as u64, j as u64, self.order as u64);
        let big_n = n + i - 1;
        let mut ratios = Vec::with_capacity(self.order + 2);
        let prefactor = match self.family {
            WeightFamily::A => {
                ratios.extend((0..i).map(|m| (n + i - j - m, big_n - m)));
                1
            }
            WeightFamily::B => {
                ratios.extend((0..i - 1).map(|m| (big_n - j - m, big_n - m)));
                ratios.push(((i + 1) * i, n * (n - 1)));
                j - 1
            }
            WeightFamily::ScaledB => {
                ratios.extend((0..i - 1).map(|m| (big_n - j - m, big_n - m)));
                ratios.push((i, n));
                j - 1
            }
            WeightFamily::H => {
                ratios.extend((0..i - 2).map(|m| (big_n - 1 - j - m, big_n - m)));
                ratios.push((i * (i - 1), (n + 1) * n));
                j * (j - 1) / 2
            }
        };
        Ok(Factors { prefactor, ratios })
    }

    /// Exact weight w(n, j), reduced after every factor.
    pub fn weight(&self, n: usize, j: usize) -> Result<BigRational> {
        let f = self.factors(n, j)?;
        let mut acc = BigRational::from_integer(BigInt::from(f.prefactor));
        if acc.is_zero() {
            return Ok(acc);
        }
        for (num, den) in f.ratios {
            acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
        }
        Ok(acc)
    }

    /// Weight w(n, j) in floating point, same factor order as [`Self::weight`].
    pub fn weight_f64(&self, n: usize, j: usize) -> Result<f64> {
        if j == 0 || j > n {
            return invalid(format!("weight index j = {j} outside 1..={n}"));
        }
        if self.family == WeightFamily::B && n < 2 {
            return invalid("family B is undefined at n = 1");
        }
        let (n, j, i) = (n as f64, j as f64, self.order);
        let big_n = n + i as f64 - 1.0;
        let fi = i as f64;
        let prod = |count: usize, shift: f64| {
            (0..count).fold(1.0, |acc, m| {
                let m = m as f64;
                acc * ((big_n - shift - j - m) / (big_n - m))
            })
        };
        Ok(match self.family {
            WeightFamily::A => prod(i, -1.0),
            WeightFamily::B => (j - 1.0) * prod(i - 1, 0.0) * ((fi + 1.0) * fi / (n * (n - 1.0))),
            WeightFamily::ScaledB => (j - 1.0) * prod(i - 1, 0.0) * (fi / n),
            WeightFamily::H => {
                j * (j - 1.0) / 2.0 * prod(i - 2, 1.0) * (fi * (fi - 1.0) / ((n + 1.0) * n))
            }
        })
    }

    /// Exact Σ_{j≤n} w(n, j).
    pub fn exact_row_sum(&self, n: usize) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for j in 1..=n {
            total += self.weight(n, j)?;
        }
        Ok(total)
    }
}

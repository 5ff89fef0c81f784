//! Chebyshev's ψ, the prime-number-theorem error r(n) = ψ(n) − n, its
//! iterated averages and binomially weighted von Mangoldt sums, numerical
//! checks of truncated Perron kernels, and truncated sums over Riemann
//! zeros.

pub mod averaging;
pub mod check;
pub mod error;
pub mod perron;
pub mod quadrature;
pub mod report;
pub mod sieve;
pub mod summation;
pub mod tables;
pub mod weights;
pub mod zeros;

pub use averaging::{
    average_via_weights, iterated_average, range_summary, IteratedAverage, RangeSummary, Series,
    Statistic,
};
pub use error::{Error, Result};
pub use sieve::{build_lambda_table, ErrorSeries, LambdaTable};
pub use weights::{WeightFamily, WeightScheme};
pub use perron::{dirichlet_perron_check, lemma1_error_bound, perron_integral, PerronResult};
pub use zeros::{
    explicit_formula_residual, gamma_square_tail, lambda_factor, load_zeros, zero_sum, ZeroSet,
    ZeroSumResult,
};

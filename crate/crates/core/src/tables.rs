//! The four min/max tables over 1 ≤ n ≤ N.

use crate::averaging::{range_summary, IteratedAverage, RangeSummary, Series, Statistic};
use crate::error::{invalid, Result};
use crate::sieve::ErrorSeries;

/// Range at which the published tables were computed.
pub const FULL_N_MAX: usize = 100_000;

/// Start of the scan for r̂, where the small-valued table begins.
pub const HAT_SCAN_START: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub statistic: Statistic,
    pub summary: RangeSummary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn row(&self, statistic: Statistic) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.statistic == statistic)
    }
}

/// Compute all four tables:
///
/// 1. r and r̄^(1..3) over [1, N]
/// 2. r̂^(1..5) over [100, N]
/// 3. r̂′^(1..5) over [2, N]
/// 4. r̃^(2..6) over [3, N]
pub fn compute_tables(errors: &ErrorSeries, n_max: usize) -> Result<Vec<Table>> {
    if n_max < HAT_SCAN_START || n_max > errors.n_max() {
        return invalid(format!(
            "tables need {HAT_SCAN_START} ≤ n_max ≤ {}, got {n_max}",
            errors.n_max()
        ));
    }
    let averages = (1..=6)
        .map(|k| IteratedAverage::new(errors, k, n_max))
        .collect::<Result<Vec<_>>>()?;
    let avg = |k: usize| &averages[k - 1];
    let row = |statistic: Statistic, series: Series, lo: usize| -> Result<TableRow> {
        Ok(TableRow {
            statistic,
            summary: range_summary(&series, lo, n_max)?,
        })
    };

    let mut averages_table = vec![row(Statistic::Error, Series::from(errors), 1)?];
    for k in 1..=3 {
        averages_table.push(row(Statistic::Average(k), avg(k).as_series(), 1)?);
    }
    let mut hat = Vec::new();
    let mut hat_prime = Vec::new();
    for i in 1..=5 {
        hat.push(row(Statistic::Hat(i), avg(i).hat_r_series()?, HAT_SCAN_START)?);
        hat_prime.push(row(Statistic::HatPrime(i), avg(i).hat_prime_r_series()?, 2)?);
    }
    let mut tilde = Vec::new();
    for i in 2..=6 {
        tilde.push(row(Statistic::Tilde(i), avg(i).tilde_r_series()?, 3)?);
    }
    Ok(vec![
        Table {
            name: "averages",
            rows: averages_table,
        },
        Table {
            name: "hat",
            rows: hat,
        },
        Table {
            name: "hat_prime",
            rows: hat_prime,
        },
        Table {
            name: "tilde",
            rows: tilde,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::LambdaTable;

    #[test]
    fn shapes_and_ranges() {
        let errors = LambdaTable::build(1000).unwrap().error_series(1000).unwrap();
        let tables = compute_tables(&errors, 1000).unwrap();
        let sizes: Vec<usize> = tables.iter().map(|t| t.rows.len()).collect();
        assert_eq!(sizes, vec![4, 5, 5, 5]);
        let hat = tables[1].row(Statistic::Hat(1)).unwrap();
        assert_eq!((hat.summary.lo, hat.summary.hi), (100, 1000));
        let tilde = tables[3].row(Statistic::Tilde(6)).unwrap();
        assert_eq!(tilde.summary.lo, 3);
        assert!(compute_tables(&errors, 50).is_err());
        assert!(compute_tables(&errors, 2000).is_err());
    }
}

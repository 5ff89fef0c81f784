//! CSV and aligned-text renderings of computed results.
//!
//! Numbers are written with six decimals. `{:.6}` rounds the exact binary
//! value, ties to even, and never consults the locale.

use std::io::Write;

use crate::averaging::{Series, Statistic};
use crate::error::Result;
use crate::perron::PerronResult;
use crate::tables::{Table, TableRow};
use crate::zeros::ZeroSumResult;

/// Six-decimal rendering; a value that rounds to zero prints unsigned.
pub fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// Display width, not counting combining accents such as the bar in r̄.
fn width(cell: &str) -> usize {
    cell.chars().filter(|c| !('\u{0300}'..='\u{036F}').contains(c)).count()
}

/// A header plus rows of already formatted cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Grid {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    /// Columns padded to a common width; the first is left-aligned, the rest
    /// right-aligned.
    pub fn write_pretty<W: Write>(&self, out: &mut W) -> Result<()> {
        let mut widths: Vec<usize> = self.header.iter().map(|h| width(h)).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(width(cell));
            }
        }
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let mut text = String::new();
            for (i, (cell, &w)) in line.iter().zip(&widths).enumerate() {
                let pad = w - width(cell);
                if i == 0 {
                    text.push_str(cell);
                    text.push_str(&" ".repeat(pad));
                } else {
                    text.push_str("  ");
                    text.push_str(&" ".repeat(pad));
                    text.push_str(cell);
                }
            }
            writeln!(out, "{}", text.trim_end())?;
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, out: &mut W, pretty: bool) -> Result<()> {
        if pretty {
            self.write_pretty(out)
        } else {
            self.write_csv(out)
        }
    }
}

/// `n,value`
pub fn series_grid(series: &Series) -> Grid {
    let mut g = Grid::new(&["n", "value"]);
    g.rows = series
        .iter()
        .map(|(n, v)| vec![n.to_string(), fmt6(v)])
        .collect();
    g
}

/// `statistic,lo,hi,min,argmin,max,argmax`
pub fn summary_grid<'a>(rows: impl IntoIterator<Item = &'a TableRow>) -> Grid {
    let mut g = Grid::new(&["statistic", "lo", "hi", "min", "argmin", "max", "argmax"]);
    for row in rows {
        let s = &row.summary;
        g.rows.push(vec![
            row.statistic.to_string(),
            s.lo.to_string(),
            s.hi.to_string(),
            fmt6(s.min),
            s.argmin.to_string(),
            fmt6(s.max),
            s.argmax.to_string(),
        ]);
    }
    g
}

/// Readable label such as `r̄^(2)(n)`.
pub fn pretty_label(statistic: Statistic) -> String {
    match statistic {
        Statistic::Error => "r(n)".to_string(),
        Statistic::Average(1) => "r̄(n)".to_string(),
        Statistic::Average(k) => format!("r̄^({k})(n)"),
        Statistic::Hat(i) => format!("r̂^({i})(n)"),
        Statistic::HatPrime(i) => format!("r̂′^({i})(n)"),
        Statistic::Tilde(i) => format!("r̃^({i})(n)"),
    }
}

/// One table laid out as `lo ≤ n ≤ hi | min | max`.
pub fn pretty_table_grid(table: &Table) -> Grid {
    let range = table
        .rows
        .first()
        .map(|r| format!("{} ≤ n ≤ {}", r.summary.lo, r.summary.hi))
        .unwrap_or_default();
    let mut g = Grid::new(&[range.as_str(), "min", "max"]);
    for row in &table.rows {
        g.rows.push(vec![
            pretty_label(row.statistic),
            fmt6(row.summary.min),
            fmt6(row.summary.max),
        ]);
    }
    g
}

/// All tables: one summary CSV, or one aligned block per table.
pub fn write_tables<W: Write>(out: &mut W, tables: &[Table], pretty: bool) -> Result<()> {
    if !pretty {
        return summary_grid(tables.iter().flat_map(|t| &t.rows)).write_csv(out);
    }
    for (i, table) in tables.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        pretty_table_grid(table).write_pretty(out)?;
    }
    Ok(())
}

/// `x,T,k,value,count_used`
pub fn zero_sum_grid(results: &[ZeroSumResult]) -> Grid {
    let mut g = Grid::new(&["x", "T", "k", "value", "count_used"]);
    for r in results {
        g.rows.push(vec![
            r.x.to_string(),
            r.t.to_string(),
            r.k.to_string(),
            fmt6(r.value),
            r.count_used.to_string(),
        ]);
    }
    g
}

/// `a,b,T,k,numeric,main_term,bound,gap,ratio`. The gap and bound can sit
/// far below 1e−6, so they are printed in scientific notation.
pub fn perron_grid(results: &[PerronResult]) -> Grid {
    let mut g = Grid::new(&["a", "b", "T", "k", "numeric", "main_term", "bound", "gap", "ratio"]);
    for r in results {
        g.rows.push(vec![
            r.a.to_string(),
            r.b.to_string(),
            r.t.to_string(),
            r.k.to_string(),
            format!("{:.12}", r.numeric.re),
            format!("{:.12}", r.main_term),
            format!("{:.6e}", r.bound),
            format!("{:.6e}", r.gap()),
            fmt6(r.ratio()),
        ]);
    }
    g
}

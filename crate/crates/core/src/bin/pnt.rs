//! `pnt`: command-line front end.
//!
//! Exit status: 0 on success, 1 when a computation or invariant fails, 2 on
//! a usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pnt_core::averaging::{range_summary, Statistic};
use pnt_core::check::{run_all, CheckContext, Outcome, CHECK_N_MAX};
use pnt_core::perron::perron_integral;
use pnt_core::report::{perron_grid, series_grid, summary_grid, write_tables, zero_sum_grid, fmt6, Grid};
use pnt_core::sieve::{load_or_build, DEFAULT_N_MAX};
use pnt_core::tables::{compute_tables, TableRow, FULL_N_MAX};
use pnt_core::zeros::{load_zeros_from_path, zero_sum};

const CACHE_ENV: &str = "PNT_CACHE_DIR";

#[derive(Parser)]
#[command(name = "pnt", version, about = "Prime number theorem error experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the von Mangoldt table and store it in the sieve cache.
    Sieve {
        #[command(flatten)]
        sieve: SieveArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Emit r (order 0) or r̄^(k) as `n,value` rows.
    Errors {
        #[command(flatten)]
        sieve: SieveArgs,
        /// Averaging order; repeat for several. 0 is r itself.
        #[arg(long = "order", required = true, value_parser = clap::value_parser!(u32).range(0..=8))]
        orders: Vec<u32>,
        /// Emit min/max summaries instead of the full series.
        #[arg(long)]
        summary: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reproduce the four min/max tables.
    Tables {
        #[command(flatten)]
        sieve: SieveArgs,
        /// Accept n_max below 100000 and compute over the reduced range.
        #[arg(long)]
        allow_partial: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Truncated sums over zeros, one row per x.
    Zerosum {
        #[arg(long, value_name = "PATH")]
        zeros: PathBuf,
        #[arg(long = "x", required = true)]
        xs: Vec<f64>,
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Numerically integrate the Perron kernel and compare with its limit.
    Perron {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the invariant suites at reduced scale.
    Check {
        #[arg(long, value_name = "PATH")]
        zeros: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        cache: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SieveArgs {
    #[arg(long, default_value_t = DEFAULT_N_MAX as u64, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
    /// Sieve cache file; defaults to $PNT_CACHE_DIR/sieve-<n_max>.bin when
    /// that variable is set.
    #[arg(long, value_name = "PATH")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Aligned text instead of CSV.
    #[arg(long)]
    pretty: bool,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<pnt_core::Error> for Failure {
    fn from(e: pnt_core::Error) -> Self {
        match e {
            pnt_core::Error::InvalidArgument(msg) => Failure::Usage(msg),
            other => Failure::Compute(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn cache_path(explicit: Option<&Path>, n_max: usize) -> Option<PathBuf> {
    explicit.map(Path::to_path_buf).or_else(|| {
        std::env::var_os(CACHE_ENV).map(|dir| PathBuf::from(dir).join(format!("sieve-{n_max}.bin")))
    })
}

fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(out: &OutputArgs, render: impl FnOnce(&mut dyn Write) -> pnt_core::Result<()>) -> CmdResult {
    let mut w = open_output(out.output.as_deref())?;
    render(&mut w)?;
    w.flush()?;
    Ok(())
}

fn emit_grid(out: &OutputArgs, grid: &Grid) -> CmdResult {
    emit(out, |w| grid.write(&mut &mut *w, out.pretty))
}

fn cmd_sieve(sieve: &SieveArgs, out: &OutputArgs) -> CmdResult {
    let n = sieve.n_max as usize;
    let path = cache_path(sieve.cache.as_deref(), n)
        .unwrap_or_else(|| std::env::temp_dir().join("pnt-cache").join(format!("sieve-{n}.bin")));
    let table = load_or_build(n, Some(&path))?;
    let grid = Grid {
        header: ["n_max", "psi", "theta", "prime_pi", "cache"].map(String::from).to_vec(),
        rows: vec![vec![
            n.to_string(),
            fmt6(table.psi(n)?),
            fmt6(table.theta(n)?),
            table.prime_pi(n)?.to_string(),
            path.display().to_string(),
        ]],
    };
    emit_grid(out, &grid)
}

fn statistic_for(order: u32) -> Statistic {
    match order {
        0 => Statistic::Error,
        k => Statistic::Average(k as usize),
    }
}

fn cmd_errors(sieve: &SieveArgs, orders: &[u32], summary: bool, out: &OutputArgs) -> CmdResult {
    let n = sieve.n_max as usize;
    let table = load_or_build(n, cache_path(sieve.cache.as_deref(), n).as_deref())?;
    let errors = table.error_series(n)?;
    let mut series = Vec::new();
    for &order in orders {
        let stat = statistic_for(order);
        series.push((stat, stat.series(&errors, n)?));
    }
    if summary {
        let rows = series
            .iter()
            .map(|(stat, s)| {
                Ok(TableRow {
                    statistic: *stat,
                    summary: range_summary(s, 1, n)?,
                })
            })
            .collect::<pnt_core::Result<Vec<_>>>()?;
        return emit_grid(out, &summary_grid(&rows));
    }
    if let [(_, only)] = series.as_slice() {
        return emit_grid(out, &series_grid(only));
    }
    // Several orders: one column per statistic.
    let mut grid = Grid {
        header: std::iter::once("n".to_string())
            .chain(series.iter().map(|(stat, _)| stat.to_string()))
            .collect(),
        rows: Vec::with_capacity(n),
    };
    for m in 1..=n {
        let mut row = vec![m.to_string()];
        row.extend(series.iter().map(|(_, s)| fmt6(s.get(m).unwrap_or(f64::NAN))));
        grid.rows.push(row);
    }
    emit_grid(out, &grid)
}

fn cmd_tables(sieve: &SieveArgs, allow_partial: bool, out: &OutputArgs) -> CmdResult {
    let n = sieve.n_max as usize;
    if n < FULL_N_MAX {
        if !allow_partial {
            return Err(Failure::Usage(format!(
                "tables are defined over n ≤ {FULL_N_MAX}; pass --allow-partial to use n_max = {n}"
            )));
        }
        eprintln!("warning: computing tables over the reduced range n ≤ {n}");
    }
    let table = load_or_build(n, cache_path(sieve.cache.as_deref(), n).as_deref())?;
    let tables = compute_tables(&table.error_series(n)?, n)?;
    emit(out, |w| write_tables(&mut &mut *w, &tables, out.pretty))
}

fn cmd_zerosum(zeros: &Path, xs: &[f64], t: f64, k: usize, out: &OutputArgs) -> CmdResult {
    let set = load_zeros_from_path(zeros)?;
    let rows = xs
        .iter()
        .map(|&x| zero_sum(&set, x, t, k))
        .collect::<pnt_core::Result<Vec<_>>>()?;
    emit_grid(out, &zero_sum_grid(&rows))
}

fn cmd_perron(a: f64, b: f64, t: f64, k: usize, out: &OutputArgs) -> CmdResult {
    let r = perron_integral(a, b, t, k)?;
    emit_grid(out, &perron_grid(&[r]))
}

fn cmd_check(zeros: Option<&Path>, cache: Option<&Path>) -> CmdResult {
    let table = load_or_build(CHECK_N_MAX, cache_path(cache, CHECK_N_MAX).as_deref())?;
    let zeros = zeros.map(load_zeros_from_path).transpose()?;
    let ctx = CheckContext::new(table, zeros)?;
    let mut stdout = io::stdout().lock();
    let mut failed = Vec::new();
    for (name, outcome) in run_all(&ctx) {
        let (tag, detail) = match &outcome {
            Outcome::Pass(d) => ("pass", d),
            Outcome::Fail(d) => ("FAIL", d),
            Outcome::Skipped(d) => ("skip", d),
        };
        writeln!(stdout, "{tag:4}  {name:28}  {detail}")?;
        if outcome.is_failure() {
            failed.push(name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Compute(format!("failing invariants: {}", failed.join(", "))))
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Sieve { sieve, out } => cmd_sieve(sieve, out),
        Command::Errors {
            sieve,
            orders,
            summary,
            out,
        } => cmd_errors(sieve, orders, *summary, out),
        Command::Tables {
            sieve,
            allow_partial,
            out,
        } => cmd_tables(sieve, *allow_partial, out),
        Command::Zerosum { zeros, xs, t, k, out } => cmd_zerosum(zeros, xs, *t, *k, out),
        Command::Perron { a, b, t, k, out } => cmd_perron(*a, *b, *t, *k, out),
        Command::Check { zeros, cache } => cmd_check(zeros.as_deref(), cache.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

//! Von Mangoldt sieve and the Chebyshev functions built on it.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::summation::DoubleDouble;

/// Default sieve bound, matching the range of the published tables.
pub const DEFAULT_N_MAX: usize = 100_000;

/// Λ(n) for 1 ≤ n ≤ n_max together with prefix sums ψ, θ and π.
///
/// Immutable once built; all arrays are indexed by n directly and slot 0 is
/// unused (zero).
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaTable {
    n_max: usize,
    lambda: Vec<f64>,
    psi_prefix: Vec<f64>,
    theta_prefix: Vec<f64>,
    prime_count: Vec<u32>,
}

/// Smallest-prime-factor table via the linear sieve. `spf[n] == n` iff n is
/// prime (for n ≥ 2).
pub fn smallest_prime_factors(n_max: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n_max + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n_max {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let lpf = spf[i];
        for &p in &primes {
            let m = i * p as usize;
            if p > lpf || m > n_max {
                break;
            }
            spf[m] = p;
        }
    }
    spf
}

impl LambdaTable {
    /// Sieve Λ up to `n_max`.
    pub fn build(n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return invalid("n_max must be at least 1");
        }
        if n_max > u32::MAX as usize {
            return invalid(format!("n_max {n_max} exceeds the supported sieve range"));
        }
        let spf = smallest_prime_factors(n_max);
        let mut lambda = vec![0.0; n_max + 1];
        let mut is_prime = vec![false; n_max + 1];
        for n in 2..=n_max {
            let p = spf[n] as usize;
            if p == n {
                is_prime[n] = true;
                lambda[n] = (p as f64).ln();
                continue;
            }
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            if m == 1 {
                lambda[n] = (p as f64).ln();
            }
        }
        Ok(Self::assemble(lambda, &is_prime))
    }

    /// Rebuild a table from stored Λ values (index 1..=n_max in `values`,
    /// i.e. `values[0]` is Λ(1)).
    ///
    /// Primes are recognised as the n with Λ(n) = log n; a proper prime power
    /// p^m has Λ = (log n)/m, so the two never come close.
    pub fn from_lambda_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return invalid("n_max must be at least 1");
        }
        let n_max = values.len();
        let mut lambda = vec![0.0; n_max + 1];
        lambda[1..].copy_from_slice(values);
        let mut is_prime = vec![false; n_max + 1];
        for n in 1..=n_max {
            let v = lambda[n];
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Cache(format!("Λ({n}) = {v} is not a valid value")));
            }
            if v > 0.0 && (v - (n as f64).ln()).abs() < 1e-9 {
                is_prime[n] = true;
            }
        }
        if lambda[1] != 0.0 {
            return Err(Error::Cache("Λ(1) must be 0".into()));
        }
        Ok(Self::assemble(lambda, &is_prime))
    }

    fn assemble(lambda: Vec<f64>, is_prime: &[bool]) -> Self {
        let n_max = lambda.len() - 1;
        let mut psi_prefix = vec![0.0; n_max + 1];
        let mut theta_prefix = vec![0.0; n_max + 1];
        let mut prime_count = vec![0u32; n_max + 1];
        let mut psi = DoubleDouble::ZERO;
        let mut theta = DoubleDouble::ZERO;
        let mut count = 0u32;
        for n in 1..=n_max {
            psi += lambda[n];
            if is_prime[n] {
                theta += lambda[n];
                count += 1;
            }
            psi_prefix[n] = psi.to_f64();
            theta_prefix[n] = theta.to_f64();
            prime_count[n] = count;
        }
        Self {
            n_max,
            lambda,
            psi_prefix,
            theta_prefix,
            prime_count,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn check(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.n_max {
            return invalid(format!("index {x} outside 1..={}", self.n_max));
        }
        Ok(())
    }

    /// Λ(n).
    pub fn lambda(&self, n: usize) -> Result<f64> {
        self.check(n)?;
        Ok(self.lambda[n])
    }

    /// Λ(1..=n_max) as a slice; element 0 is Λ(1).
    pub fn lambda_values(&self) -> &[f64] {
        &self.lambda[1..]
    }

    /// ψ(x) = Σ_{n≤x} Λ(n).
    pub fn psi(&self, x: usize) -> Result<f64> {
        self.check(x)?;
        Ok(self.psi_prefix[x])
    }

    /// θ(x) = Σ_{p≤x} log p.
    pub fn theta(&self, x: usize) -> Result<f64> {
        self.check(x)?;
        Ok(self.theta_prefix[x])
    }

    /// π(x), the number of primes not exceeding x.
    pub fn prime_pi(&self, x: usize) -> Result<u64> {
        self.check(x)?;
        Ok(u64::from(self.prime_count[x]))
    }

    pub fn is_prime(&self, n: usize) -> Result<bool> {
        self.check(n)?;
        Ok(n >= 2 && self.prime_count[n] != self.prime_count[n - 1])
    }

    /// Σ_{n≤x} ψ(n).
    pub fn psi_summatory(&self, x: usize) -> Result<f64> {
        self.check(x)?;
        let mut acc = DoubleDouble::ZERO;
        for &v in &self.psi_prefix[1..=x] {
            acc += v;
        }
        Ok(acc.to_f64())
    }

    /// The error series r(n) = ψ(n) − n for 1 ≤ n ≤ `n_max`.
    pub fn error_series(&self, n_max: usize) -> Result<ErrorSeries> {
        if n_max == 0 || n_max > self.n_max {
            return invalid(format!("series length {n_max} outside 1..={}", self.n_max));
        }
        let mut r = vec![0.0; n_max + 1];
        for n in 1..=n_max {
            r[n] = self.psi_prefix[n] - n as f64;
        }
        Ok(ErrorSeries { n_max, r })
    }
}

/// `LambdaTable::build` under its operational name.
pub fn build_lambda_table(n_max: usize) -> Result<LambdaTable> {
    LambdaTable::build(n_max)
}

/// r(n) = ψ(n) − n, indexed by n (slot 0 unused).
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSeries {
    n_max: usize,
    r: Vec<f64>,
}

impl ErrorSeries {
    /// Wrap explicit r values; `values[0]` is r(1).
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return invalid("empty error series");
        }
        let mut r = Vec::with_capacity(values.len() + 1);
        r.push(0.0);
        r.extend_from_slice(values);
        Ok(Self {
            n_max: values.len(),
            r,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn r(&self, n: usize) -> Result<f64> {
        if n == 0 || n > self.n_max {
            return invalid(format!("index {n} outside 1..={}", self.n_max));
        }
        Ok(self.r[n])
    }

    /// r(1..=n_max); element 0 is r(1).
    pub fn values(&self) -> &[f64] {
        &self.r[1..]
    }
}

const CACHE_MAGIC: &[u8; 9] = b"PNTSIEVE1";

/// Write Λ(1..=n_max) as `PNTSIEVE1`, little-endian u64 n_max, n_max
/// little-endian f64 values, followed by a SHA-256 digest of everything
/// before it.
pub fn write_cache<W: Write>(table: &LambdaTable, mut out: W) -> Result<()> {
    let mut buf = Vec::with_capacity(CACHE_MAGIC.len() + 8 + 8 * table.n_max + 32);
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&(table.n_max as u64).to_le_bytes());
    for v in table.lambda_values() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    let digest = Sha256::digest(&buf);
    buf.extend_from_slice(&digest);
    out.write_all(&buf)?;
    out.flush()?;
    Ok(())
}

/// Read a cache written by [`write_cache`], verifying its digest.
pub fn read_cache<R: Read>(mut input: R) -> Result<LambdaTable> {
    let mut buf = Vec::new();
    input.read_to_end(&mut buf)?;
    let header = CACHE_MAGIC.len() + 8;
    if buf.len() < header + 32 || &buf[..CACHE_MAGIC.len()] != CACHE_MAGIC {
        return Err(Error::Cache("missing PNTSIEVE1 header".into()));
    }
    let n_max = u64::from_le_bytes(buf[CACHE_MAGIC.len()..header].try_into().unwrap());
    let expected_len = (n_max as usize)
        .checked_mul(8)
        .and_then(|b| b.checked_add(header + 32));
    if expected_len != Some(buf.len()) {
        return Err(Error::Cache(format!(
            "length {} does not match n_max {n_max}",
            buf.len()
        )));
    }
    let (body, digest) = buf.split_at(buf.len() - 32);
    if Sha256::digest(body).as_slice() != digest {
        return Err(Error::Cache("checksum mismatch".into()));
    }
    let values: Vec<f64> = body[header..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    LambdaTable::from_lambda_values(&values)
}

/// Table for 1..=n_max through a cache file: an existing file is read (and
/// must verify), truncated if it covers more than needed, and rebuilt and
/// overwritten if it covers less. A missing file is created.
pub fn load_or_build(n_max: usize, cache: Option<&Path>) -> Result<LambdaTable> {
    let Some(path) = cache else {
        return LambdaTable::build(n_max);
    };
    if path.exists() {
        let cached = read_cache(BufReader::new(File::open(path)?))?;
        if cached.n_max() >= n_max {
            return LambdaTable::from_lambda_values(&cached.lambda_values()[..n_max]);
        }
    }
    let table = LambdaTable::build(n_max)?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    write_cache(&table, BufWriter::new(File::create(path)?))?;
    Ok(table)
}

//! Dimension of `|eH - sum n_i E_i|` by interpolation at random points over
//! a prime field.
//!
//! Columns are the degree-`e` monomials `x^a y^b` (`a + b <= e`, affine
//! chart). Point `p` with multiplicity `n` contributes one row per Hasse
//! derivative of order `i + j < n`, whose entry in column `x^a y^b` is
//! `C(a,i) C(b,j) x0^(a-i) y0^(b-j)`. The projective dimension is
//! `cols - 1 - rank`. Random points can only lower the rank, so the
//! answer is never below the generic one; an unlucky draw shows up as a
//! spuriously special system.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;
pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_TRIALS: usize = 3;
pub const SEED_ENV: &str = "BLOWUP_POSITIVITY_SEED";

/// Arithmetic modulo a prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    // floor(2^64 / p), used when p < 2^32
    barrett: Option<u64>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::InvalidPrime { prime: p, reason: "must be below 2^63".into() });
        }
        if !primal_check::miller_rabin(p) {
            return Err(Error::InvalidPrime { prime: p, reason: "not prime".into() });
        }
        let barrett = (p < 1 << 32).then(|| ((1u128 << 64) / p as u128) as u64);
        Ok(Self { p, barrett })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// `x mod p`.
    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        match self.barrett {
            Some(mu) => {
                let q = ((x as u128 * mu as u128) >> 64) as u64;
                let r = x - q * self.p;
                if r >= self.p {
                    r - self.p
                } else {
                    r
                }
            }
            None => x % self.p,
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.barrett.is_some() {
            // a, b < 2^32 so the product fits
            self.reduce(a * b)
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut a: u64, mut k: u64) -> u64 {
        let mut acc = 1 % self.p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }

    /// Inverse of a non-zero element.
    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    /// `a + f * b`.
    #[inline]
    fn mul_add(&self, a: u64, f: u64, b: u64) -> u64 {
        if self.barrett.is_some() {
            // a < 2^32 and f * b < 2^64 - 2^33
            self.reduce(a + f * b)
        } else {
            self.add(a, self.mul(f, b))
        }
    }
}

/// Rank of a dense matrix over `field`, destroying it.
pub fn rank(field: &PrimeField, rows: &mut [Vec<u64>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        rest.par_iter_mut().for_each(|row| {
            if row[col] == 0 {
                return;
            }
            let f = field.neg(field.mul(row[col], inv));
            for k in col..cols {
                row[k] = field.mul_add(row[k], f, pivot_row[k]);
            }
        });
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemDimensionReport {
    pub system: DivisorClass,
    pub expected_dim: i64,
    /// Projective dimension, -1 when empty.
    pub actual_dim: i64,
    pub special: bool,
    pub prime: u64,
    pub seed: u64,
    /// `(rows, cols)` of the interpolation matrix.
    pub matrix_shape: (usize, usize),
    pub rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub prime: u64,
    pub seed: u64,
    /// Independent point sets tried; trial `t` uses seed `seed + t`.
    pub trials: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { prime: DEFAULT_PRIME, seed: DEFAULT_SEED, trials: DEFAULT_TRIALS }
    }
}

impl OracleConfig {
    /// Defaults, with the seed taken from `BLOWUP_POSITIVITY_SEED` if set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(raw) = std::env::var(SEED_ENV) {
            cfg.seed = raw.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("{SEED_ENV} must be an unsigned integer, got {raw:?}"))
            })?;
        }
        Ok(cfg)
    }
}

fn draw_points(field: &PrimeField, count: usize, seed: u64) -> Result<Vec<(u64, u64)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_attempts = 4 * count + 64;
    let mut points: Vec<(u64, u64)> = Vec::with_capacity(count);
    let mut attempts = 0;
    while points.len() < count {
        if attempts == max_attempts {
            return Err(Error::RetryExhausted { points: count, attempts });
        }
        attempts += 1;
        let p = (rng.gen_range(0..field.p), rng.gen_range(0..field.p));
        if !points.contains(&p) {
            points.push(p);
        }
    }
    Ok(points)
}

fn binomials(field: &PrimeField, e: usize) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; e + 1]; e + 1];
    for a in 0..=e {
        table[a][0] = 1;
        for i in 1..=a {
            table[a][i] = field.add(table[a - 1][i - 1], if i < a { table[a - 1][i] } else { 0 });
        }
    }
    table
}

fn check_system(system: &DivisorClass, prime: u64) -> Result<PrimeField> {
    if system.degree() < 1 {
        return Err(Error::InvalidInput(format!(
            "the oracle needs degree >= 1, got {}",
            system.degree()
        )));
    }
    if system.mults().iter().any(|&n| n < 0) {
        return Err(Error::InvalidInput("the oracle needs multiplicities >= 0".into()));
    }
    if prime <= system.degree() as u64 {
        return Err(Error::InvalidPrime {
            prime,
            reason: format!("must exceed the degree {}", system.degree()),
        });
    }
    PrimeField::new(prime)
}

/// Rank computation at `r` points drawn from `seed`.
pub fn actual_dimension(system: &DivisorClass, prime: u64, seed: u64) -> Result<SystemDimensionReport> {
    let field = check_system(system, prime)?;
    let e = system.degree() as usize;
    let monomials: Vec<(usize, usize)> = (0..=e).flat_map(|a| (0..=e - a).map(move |b| (a, b))).collect();
    let cols = monomials.len();
    let points = draw_points(&field, system.r(), seed)?;
    let binom = binomials(&field, e);

    let mut rows = Vec::new();
    for (&n, &(x0, y0)) in system.mults().iter().zip(&points) {
        let n = n as usize;
        if n == 0 {
            continue;
        }
        let xp: Vec<u64> = (0..=e).map(|k| field.pow(x0, k as u64)).collect();
        let yp: Vec<u64> = (0..=e).map(|k| field.pow(y0, k as u64)).collect();
        for order in 0..n {
            for i in 0..=order {
                let j = order - i;
                let row: Vec<u64> = monomials
                    .iter()
                    .map(|&(a, b)| {
                        if a < i || b < j {
                            0
                        } else {
                            let c = field.mul(binom[a][i], binom[b][j]);
                            field.mul(c, field.mul(xp[a - i], yp[b - j]))
                        }
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    let shape = (rows.len(), cols);
    let rank = rank(&field, &mut rows);
    let actual_dim = cols as i64 - 1 - rank as i64;
    let expected_dim = system.profile().expected_dim as i64;
    Ok(SystemDimensionReport {
        system: system.clone(),
        expected_dim,
        actual_dim,
        special: actual_dim > expected_dim,
        prime,
        seed,
        matrix_shape: shape,
        rank,
    })
}

/// The report with the smallest dimension over `config.trials` seeds.
pub fn minimal_report(system: &DivisorClass, config: &OracleConfig) -> Result<SystemDimensionReport> {
    if config.trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let mut best: Option<SystemDimensionReport> = None;
    for t in 0..config.trials {
        let report = actual_dimension(system, config.prime, config.seed.wrapping_add(t as u64))?;
        if best.as_ref().is_none_or(|b| report.actual_dim < b.actual_dim) {
            best = Some(report);
        }
    }
    Ok(best.expect("at least one trial"))
}

/// Whether the actual dimension exceeds the expected one.
pub fn is_special(system: &DivisorClass, config: &OracleConfig) -> Result<bool> {
    Ok(minimal_report(system, config)?.special)
}

/// Whether the system is non-empty.
pub fn curve_class_effective(system: &DivisorClass, config: &OracleConfig) -> Result<bool> {
    Ok(minimal_report(system, config)?.actual_dim >= 0)
}

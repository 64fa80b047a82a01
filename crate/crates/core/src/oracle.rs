//! Brute-force lattice-point counting, used as an independent check on the
//! algebraic pipeline.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::tropical::{check_kleene, WeightMatrix};

/// Default bound on the number of points in the enumeration box.
pub const DEFAULT_CAP: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest enumeration box (product of coordinate ranges) accepted.
    pub cap: u64,
    /// Worker threads; 1 runs on the calling thread.
    pub threads: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            threads: 1,
        }
    }
}

/// `counts[k] = |kP ∩ Z^(n-1)|` for `k = 0..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilateCounts {
    pub counts: Vec<u128>,
}

/// Coordinates `x_0 .. x_{n-2}` with `x_{n-1} = 0`; walks them in order,
/// intersecting each coordinate's range with every constraint against the
/// coordinates already fixed.
struct Enumerator {
    n: usize,
    c: Vec<i64>,
}

impl Enumerator {
    fn new(w: &WeightMatrix, k: i64) -> Self {
        let n = w.n();
        let mut c = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                c[i * n + j] = w.get(i, j) * k;
            }
        }
        Self { n, c }
    }

    fn get(&self, i: usize, j: usize) -> i64 {
        self.c[i * self.n + j]
    }

    fn box_size(&self) -> u128 {
        let last = self.n - 1;
        (0..last)
            .map(|i| (self.get(i, last) + self.get(last, i) + 1).max(0) as u128)
            .product()
    }

    fn range(&self, i: usize, x: &[i64]) -> (i64, i64) {
        let last = self.n - 1;
        let mut lo = -self.get(last, i);
        let mut hi = self.get(i, last);
        for (j, &xj) in x.iter().enumerate() {
            lo = lo.max(xj - self.get(j, i));
            hi = hi.min(xj + self.get(i, j));
        }
        (lo, hi)
    }

    fn count_from(&self, x: &mut Vec<i64>) -> u128 {
        let i = x.len();
        let (lo, hi) = self.range(i, x);
        if lo > hi {
            return 0;
        }
        if i + 2 == self.n {
            return (hi - lo + 1) as u128;
        }
        let mut total = 0;
        for v in lo..=hi {
            x.push(v);
            total += self.count_from(x);
            x.pop();
        }
        total
    }

    fn count(&self, threads: usize) -> u128 {
        let (lo, hi) = self.range(0, &[]);
        if lo > hi {
            return 0;
        }
        if self.n == 2 || threads <= 1 {
            return self.count_from(&mut Vec::new());
        }
        let work = || {
            (lo..=hi)
                .into_par_iter()
                .map(|v| self.count_from(&mut vec![v]))
                .sum()
        };
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(work),
            Err(_) => self.count_from(&mut Vec::new()),
        }
    }
}

/// Number of integer points of the `k`-th dilate of the polytrope of `w`.
pub fn count_lattice_points(w: &WeightMatrix, k: u64) -> Result<u128> {
    count_lattice_points_with(w, k, &OracleConfig::default())
}

pub fn count_lattice_points_with(w: &WeightMatrix, k: u64, cfg: &OracleConfig) -> Result<u128> {
    check_kleene(w)?;
    let e = Enumerator::new(w, k as i64);
    let size = e.box_size();
    if size > cfg.cap as u128 {
        return Err(Error::ResourceCap {
            points: size,
            cap: cfg.cap,
        });
    }
    Ok(e.count(cfg.threads))
}

pub fn dilate_counts(w: &WeightMatrix, kmax: u64, cfg: &OracleConfig) -> Result<DilateCounts> {
    let counts = (0..=kmax)
        .map(|k| count_lattice_points_with(w, k, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(DilateCounts { counts })
}

/// Coefficients (lowest first) of the polynomial through `(k, values[k])`, `k = 0..len`.
fn lagrange(values: &[BigRational]) -> Vec<BigRational> {
    let m = values.len();
    let mut out = vec![BigRational::zero(); m];
    for (i, yi) in values.iter().enumerate() {
        // basis polynomial prod_{j != i} (t - j) / (i - j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in (0..m).filter(|&j| j != i) {
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, b) in basis.iter().enumerate() {
                next[d + 1] += b;
                next[d] -= b * BigRational::from_integer(BigInt::from(j));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(i as i64 - j as i64));
        }
        for (d, b) in basis.iter().enumerate() {
            out[d] += b * yi / &denom;
        }
    }
    out
}

/// Ehrhart polynomial in `t` interpolated from the counts at `k = 0..n-1`.
pub fn interpolate_ehrhart(w: &WeightMatrix) -> Result<QPoly> {
    interpolate_ehrhart_with(w, &OracleConfig::default())
}

pub fn interpolate_ehrhart_with(w: &WeightMatrix, cfg: &OracleConfig) -> Result<QPoly> {
    let d = (w.n() - 1) as u64;
    let counts = dilate_counts(w, d, cfg)?;
    let values: Vec<BigRational> = counts
        .counts
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    Ok(QPoly::univariate(&lagrange(&values)))
}

/// `(n-1)!` times the leading coefficient of the interpolated Ehrhart polynomial.
pub fn normalized_volume_bruteforce(w: &WeightMatrix) -> Result<BigInt> {
    normalized_volume_bruteforce_with(w, &OracleConfig::default())
}

pub fn normalized_volume_bruteforce_with(w: &WeightMatrix, cfg: &OracleConfig) -> Result<BigInt> {
    let d = w.n() - 1;
    let ehr = interpolate_ehrhart_with(w, cfg)?;
    let lead = ehr.univariate_coefficients().get(d).cloned().unwrap_or_default();
    let fact: BigInt = (1..=d).fold(BigInt::one(), |acc, v| acc * BigInt::from(v));
    let vol = lead * BigRational::from_integer(fact);
    if !vol.is_integer() {
        return Err(Error::Consistency(format!(
            "interpolated normalized volume {vol} is not an integer"
        )));
    }
    Ok(vol.to_integer())
}

/// h*-vector from the counts: the first `d + 1` coefficients of
/// `(1 - t)^(d+1) sum_k ehr(k) t^k`.
pub fn hstar_bruteforce(w: &WeightMatrix) -> Result<Vec<BigInt>> {
    hstar_bruteforce_with(w, &OracleConfig::default())
}

pub fn hstar_bruteforce_with(w: &WeightMatrix, cfg: &OracleConfig) -> Result<Vec<BigInt>> {
    let d = w.n() - 1;
    let counts = dilate_counts(w, d as u64, cfg)?;
    let mut h = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let mut acc = BigInt::zero();
        let mut binom = BigInt::one(); // C(d+1, i)
        for i in 0..=j {
            let term = &binom * BigInt::from(counts.counts[j - i]);
            if i % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
            binom = binom * BigInt::from(d + 1 - i) / BigInt::from(i + 1);
        }
        if acc < BigInt::zero() {
            return Err(Error::Consistency(format!("h*_{j} = {acc} is negative")));
        }
        h.push(acc);
    }
    Ok(h)
}

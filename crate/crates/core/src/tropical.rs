//! Weighted complete digraphs: Kleene stars, polytrope membership and
//! H-representations.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::VarSet;

/// An `n x n` integer matrix with zero diagonal; entry `(i, j)` is the weight
/// of the edge `i -> j`. Indices are 0-based in the API and 1-based in
/// rendered output.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl WeightMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::InvalidMatrix(format!("need n >= 2, got {n}")));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if row[i] != 0 {
                return Err(Error::InvalidMatrix(format!(
                    "diagonal entry ({0}, {0}) is {1}, expected 0",
                    i + 1,
                    row[i]
                )));
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { n, entries })
    }

    /// Builds the matrix from its `n^2 - n` off-diagonal entries in pair order
    /// `(1,2), (1,3), ..., (n,n-1)`.
    pub fn from_vector(n: usize, c: &[i64]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidMatrix(format!("need n >= 2, got {n}")));
        }
        if c.len() != n * (n - 1) {
            return Err(Error::InvalidMatrix(format!(
                "expected {} off-diagonal entries, got {}",
                n * (n - 1),
                c.len()
            )));
        }
        let vars = VarSet::x(n);
        let mut entries = vec![0; n * n];
        for (k, (i, j)) in vars.pairs().enumerate() {
            entries[i * n + j] = c[k];
        }
        Ok(Self { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 2);
        Self {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    /// Off-diagonal entries in pair order.
    pub fn to_vector(&self) -> Vec<i64> {
        VarSet::x(self.n).pairs().map(|(i, j)| self.get(i, j)).collect()
    }

    /// Simultaneous row/column relabelling: vertex `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut entries = vec![0; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                entries[perm[i] * self.n + perm[j]] = self.get(i, j);
            }
        }
        Self { n: self.n, entries }
    }

    /// Entrywise multiple `k * W` (the `k`-th dilate of the polytrope).
    pub fn scale(&self, k: i64) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|&v| v * k).collect(),
        }
    }

    /// An entrywise nonnegative matrix describing a translate of the same
    /// polytrope: `n*c_ij - (r_i - r_j)` with `r` the row sums. Each entry
    /// equals `sum_k (c_ij + c_jk - c_ik)`, so it is nonnegative for Kleene
    /// stars, and it differs from `n*c` by a potential, which cancels on
    /// every binomial of the toric ideal.
    pub fn nonnegative_translate(&self) -> Self {
        let n = self.n as i64;
        let r: Vec<i64> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).sum())
            .collect();
        let mut entries = vec![0; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    entries[i * self.n + j] = n * self.get(i, j) - (r[i] - r[j]);
                }
            }
        }
        Self { n: self.n, entries }
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows().iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// All-pairs shortest path weights by Floyd-Warshall.
///
/// Fails with [`Error::NegativeCycle`] carrying a witness cycle when some
/// directed cycle has negative total weight.
pub fn kleene_star(w: &WeightMatrix) -> Result<WeightMatrix> {
    let n = w.n;
    let mut d: Vec<i128> = w.entries.iter().map(|&v| v as i128).collect();
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            for j in 0..n {
                let via = dik + d[k * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    if (0..n).any(|i| d[i * n + i] < 0) {
        return Err(Error::NegativeCycle {
            cycle: negative_cycle_witness(w),
        });
    }
    let entries = d
        .into_iter()
        .map(|v| {
            i64::try_from(v).map_err(|_| Error::InvalidMatrix("path weight overflows i64".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightMatrix { n, entries })
}

/// Bellman-Ford from a virtual source; returns the vertices of one negative cycle.
fn negative_cycle_witness(w: &WeightMatrix) -> Vec<usize> {
    let n = w.n;
    let mut dist = vec![0i128; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last = None;
    for _ in 0..n {
        last = None;
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                let cand = dist[u] + w.get(u, v) as i128;
                if cand < dist[v] {
                    dist[v] = cand;
                    pred[v] = Some(u);
                    last = Some(v);
                }
            }
        }
    }
    let Some(mut v) = last else {
        return Vec::new();
    };
    for _ in 0..n {
        v = pred[v].expect("relaxed vertex has a predecessor");
    }
    let start = v;
    let mut cycle = vec![start];
    let mut u = pred[start].expect("cycle vertex has a predecessor");
    while u != start {
        cycle.push(u);
        u = pred[u].expect("cycle vertex has a predecessor");
    }
    cycle.reverse();
    cycle
}

/// Explains why `w` is not a Kleene star, or returns `Ok(())`.
pub fn check_kleene(w: &WeightMatrix) -> Result<()> {
    let star = kleene_star(w)?;
    if star == *w {
        return Ok(());
    }
    for i in 0..w.n {
        for j in 0..w.n {
            if star.get(i, j) < w.get(i, j) {
                return Err(Error::NotKleene(format!(
                    "c_{}{} = {} exceeds the shortest path weight {}",
                    i + 1,
                    j + 1,
                    w.get(i, j),
                    star.get(i, j)
                )));
            }
        }
    }
    unreachable!("star differs from the input but no entry decreased")
}

pub fn is_kleene(w: &WeightMatrix) -> bool {
    check_kleene(w).is_ok()
}

/// One defining inequality `x_i - x_j <= bound` (0-based indices; the
/// coordinate `x_{n-1}` is fixed to zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub i: usize,
    pub j: usize,
    pub bound: i64,
}

/// The `n^2 - n` inequalities of a polytrope in the chart `x_n = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    n: usize,
    inequalities: Vec<Inequality>,
}

impl HRep {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient dimension of the chart, `n - 1`.
    pub fn dim(&self) -> usize {
        self.n - 1
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    /// Coordinate box `-c_ni <= x_i <= c_in` implied by the inequalities through `x_n`.
    pub fn bounding_box(&self) -> Vec<(i64, i64)> {
        let last = self.n - 1;
        let bound = |i: usize, j: usize| {
            self.inequalities
                .iter()
                .find(|q| q.i == i && q.j == j)
                .map(|q| q.bound)
                .expect("every pair has an inequality")
        };
        (0..last).map(|i| (-bound(last, i), bound(i, last))).collect()
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        if x.len() != self.n - 1 {
            return Err(Error::DimensionMismatch {
                expected: self.n - 1,
                got: x.len(),
            });
        }
        let coord = |k: usize| if k + 1 == self.n { 0 } else { x[k] };
        Ok(self
            .inequalities
            .iter()
            .all(|q| coord(q.i) - coord(q.j) <= q.bound))
    }
}

impl fmt::Display for HRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.n - 1;
        for (k, q) in self.inequalities.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let lhs = match (q.i == last, q.j == last) {
                (false, false) => format!("y_{} - y_{}", q.i + 1, q.j + 1),
                (false, true) => format!("y_{}", q.i + 1),
                (true, false) => format!("-y_{}", q.j + 1),
                (true, true) => unreachable!(),
            };
            write!(f, "{lhs} <= {}", q.bound)?;
        }
        Ok(())
    }
}

/// H-representation of the polytrope of a Kleene star.
pub fn hrep(w: &WeightMatrix) -> Result<HRep> {
    check_kleene(w)?;
    let inequalities = VarSet::x(w.n)
        .pairs()
        .map(|(i, j)| Inequality {
            i,
            j,
            bound: w.get(i, j),
        })
        .collect();
    Ok(HRep { n: w.n, inequalities })
}

/// Membership of an integer point (length `n - 1`, chart `x_n = 0`).
pub fn contains_point(w: &WeightMatrix, x: &[i64]) -> Result<bool> {
    hrep(w)?.contains(x)
}

use std::cmp::Ordering;

use crate::poly::{grevlex, Monomial};
use crate::tropical::WeightMatrix;

/// Weight order refined by graded reverse lexicographic order.
///
/// `u > v` when `u . w > v . w`; ties are broken by grevlex with variable 0
/// largest. Larger weight leads, so the initial form of a polynomial is the
/// sum of its maximal-weight terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    weight: Vec<i64>,
}

impl TermOrder {
    pub fn new(weight: Vec<i64>) -> Self {
        Self { weight }
    }

    /// Plain grevlex on `nvars` variables.
    pub fn grevlex(nvars: usize) -> Self {
        Self {
            weight: vec![0; nvars],
        }
    }

    /// The order `>_c` for a Kleene star `c`.
    ///
    /// A weight with a negative entry does not give a well-order, so such
    /// matrices are first replaced by [`WeightMatrix::nonnegative_translate`];
    /// the two weights agree on every binomial of the toric ideal, so the
    /// initial ideal is the same. Nonnegative matrices are used as given.
    pub fn for_matrix(w: &WeightMatrix) -> Self {
        let c = w.to_vector();
        if c.iter().all(|&v| v >= 0) {
            Self::new(c)
        } else {
            Self::new(w.nonnegative_translate().to_vector())
        }
    }

    pub fn weight(&self) -> &[i64] {
        &self.weight
    }

    pub fn nvars(&self) -> usize {
        self.weight.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.weight(&self.weight)
            .cmp(&b.weight(&self.weight))
            .then_with(|| grevlex(a, b))
    }

    pub(crate) fn key(&self, m: Monomial) -> Key {
        Key {
            w: m.weight(&self.weight),
            m,
        }
    }

    /// Variables sorted from largest to smallest under this order.
    pub fn variables_descending(&self) -> Vec<usize> {
        let n = self.weight.len();
        let mut vars: Vec<usize> = (0..n).collect();
        vars.sort_by(|&a, &b| {
            self.cmp(&Monomial::var(n, b, 1), &Monomial::var(n, a, 1))
        });
        vars
    }
}

/// A monomial together with its weight, ordered by the term order it was built with.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Key {
    pub w: i64,
    pub m: Monomial,
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.w.cmp(&other.w).then_with(|| grevlex(&self.m, &other.m))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

use std::fmt;

/// Which family of symbols a variable set names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// Cohomology generators `x_ij`, one per facet.
    X,
    /// Facet parameters `a_ij`.
    A,
    /// The single formal variable `t`.
    T,
}

/// A totally ordered set of variables.
///
/// For `X` and `A` the variables are indexed by ordered pairs `(i, j)` with
/// `i != j`, sorted lexicographically; index 0 is `(1, 2)`. `T` has a single
/// variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet {
    kind: VarKind,
    n: usize,
}

impl VarSet {
    pub fn x(n: usize) -> Self {
        assert!(n >= 2, "variable sets need n >= 2");
        Self { kind: VarKind::X, n }
    }

    pub fn a(n: usize) -> Self {
        assert!(n >= 2, "variable sets need n >= 2");
        Self { kind: VarKind::A, n }
    }

    pub fn t() -> Self {
        Self { kind: VarKind::T, n: 0 }
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    /// Dimension parameter of the underlying matrix (0 for `T`).
    pub fn n(&self) -> usize {
        self.n
    }

    /// The same pair set under another kind (`X` <-> `A`).
    pub fn with_kind(&self, kind: VarKind) -> Self {
        match kind {
            VarKind::T => Self::t(),
            _ => Self { kind, n: self.n },
        }
    }

    pub fn len(&self) -> usize {
        match self.kind {
            VarKind::T => 1,
            _ => self.n * (self.n - 1),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the pair `(i, j)` (0-based, `i != j`).
    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        if self.kind == VarKind::T || i == j || i >= self.n || j >= self.n {
            return None;
        }
        Some(pair_index(self.n, i, j))
    }

    /// The 0-based pair of a variable index.
    pub fn pair(&self, idx: usize) -> (usize, usize) {
        assert!(self.kind != VarKind::T, "`t` has no index pair");
        index_pair(self.n, idx)
    }

    /// Iterator over all `(i, j)` pairs in variable order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).map(move |k| self.pair(k))
    }

    /// Rendered name: `a_12`, `x_31`, `t`. Indices are 1-based; for `n >= 10`
    /// the two indices are separated by an underscore.
    pub fn name(&self, idx: usize) -> String {
        let prefix = match self.kind {
            VarKind::X => "x",
            VarKind::A => "a",
            VarKind::T => return "t".to_string(),
        };
        let (i, j) = self.pair(idx);
        if self.n < 10 {
            format!("{prefix}_{}{}", i + 1, j + 1)
        } else {
            format!("{prefix}_{}_{}", i + 1, j + 1)
        }
    }

    /// Short key used in JSON exponent maps (`"12"`, `"t"`).
    pub fn key(&self, idx: usize) -> String {
        let name = self.name(idx);
        match name.split_once('_') {
            Some((_, rest)) => rest.to_string(),
            None => name,
        }
    }

    /// Inverse of [`VarSet::name`].
    pub fn parse_name(&self, s: &str) -> Option<usize> {
        match self.kind {
            VarKind::T => (s == "t").then_some(0),
            VarKind::X => s.strip_prefix("x_").and_then(|k| self.parse_key(k)),
            VarKind::A => s.strip_prefix("a_").and_then(|k| self.parse_key(k)),
        }
    }

    /// Inverse of [`VarSet::key`].
    pub fn parse_key(&self, k: &str) -> Option<usize> {
        if self.kind == VarKind::T {
            return (k == "t").then_some(0);
        }
        let (i, j) = if let Some((i, j)) = k.split_once('_') {
            (i.parse::<usize>().ok()?, j.parse::<usize>().ok()?)
        } else {
            if k.len() != 2 || self.n >= 10 {
                return None;
            }
            let mut ch = k.chars();
            (
                ch.next()?.to_digit(10)? as usize,
                ch.next()?.to_digit(10)? as usize,
            )
        };
        if i == 0 || j == 0 {
            return None;
        }
        self.index(i - 1, j - 1)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::X => write!(f, "x-variables (n = {})", self.n),
            VarKind::A => write!(f, "a-variables (n = {})", self.n),
            VarKind::T => write!(f, "t"),
        }
    }
}

pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * (n - 1) + if j < i { j } else { j - 1 }
}

pub(crate) fn index_pair(n: usize, idx: usize) -> (usize, usize) {
    let i = idx / (n - 1);
    let r = idx % (n - 1);
    let j = if r < i { r } else { r + 1 };
    (i, j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_order_is_lexicographic() {
        let v = VarSet::x(3);
        let pairs: Vec<_> = v.pairs().collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]);
        for (k, (i, j)) in pairs.into_iter().enumerate() {
            assert_eq!(v.index(i, j), Some(k));
        }
        assert_eq!(v.index(1, 1), None);
    }

    #[test]
    fn names_round_trip() {
        let v = VarSet::a(4);
        for k in 0..v.len() {
            assert_eq!(v.parse_name(&v.name(k)), Some(k));
            assert_eq!(v.parse_key(&v.key(k)), Some(k));
        }
        assert_eq!(v.name(0), "a_12");
        assert_eq!(VarSet::x(12).name(1), "x_1_3");
        assert_eq!(VarSet::t().name(0), "t");
        assert_eq!(v.parse_name("x_12"), None);
    }
}

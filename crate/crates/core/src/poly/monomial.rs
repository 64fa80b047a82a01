use std::cmp::Ordering;

/// A power product over a fixed number of variables.
///
/// Exponents are held densely, one slot per variable; the public accessors
/// only ever report the nonzero ones. The `Ord` impl is graded reverse
/// lexicographic with variable 0 the largest, which is the canonical
/// display order of every polynomial in this crate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn var(nvars: usize, idx: usize, exp: u16) -> Self {
        let mut m = Self::one(nvars);
        m.exps[idx] = exp;
        m
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Self {
            exps: exps.into_boxed_slice(),
        }
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated variables add up.
    pub fn from_pairs(nvars: usize, pairs: &[(usize, u16)]) -> Self {
        let mut m = Self::one(nvars);
        for &(v, e) in pairs {
            m.exps[v] += e;
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponent(&self, idx: usize) -> u16 {
        self.exps[idx]
    }

    /// Dense exponent slice (zeros included).
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    /// Nonzero `(variable, exponent)` pairs in variable order.
    pub fn support(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars(), other.nvars());
        Self {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// True if `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, if exact.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        Some(Self {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Dot product of the exponent vector with a weight vector.
    pub fn weight(&self, w: &[i64]) -> i64 {
        self.exps
            .iter()
            .zip(w.iter())
            .map(|(&e, &c)| e as i64 * c)
            .sum()
    }

    /// Reorders variables: variable `i` of `self` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut exps = vec![0u16; self.exps.len()];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[perm[i]] = e;
        }
        Self::from_exponents(exps)
    }

    /// Multiset of the nonzero exponents, largest first (`a_12^2 a_13` -> `[2, 1]`).
    pub fn exponent_partition(&self) -> Vec<u16> {
        let mut p: Vec<u16> = self.exps.iter().copied().filter(|&e| e > 0).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }
}

/// Graded reverse lexicographic comparison, variable 0 largest.
pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    let da = a.degree();
    let db = b.degree();
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `deg` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u16>, pos: usize, left: u32) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u16;
            out.push(Monomial::from_exponents(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as u16;
            rec(out, cur, pos + 1, left - e);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(&mut out, &mut vec![0; nvars], 0, deg);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_degree_two_in_three_vars() {
        // x1^2 > x1x2 > x2^2 > x1x3 > x2x3 > x3^2
        let mut ms = monomials_of_degree(3, 2);
        ms.sort();
        ms.reverse();
        let got: Vec<Vec<u16>> = ms.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(vec![1, 0, 2]);
        let b = Monomial::from_exponents(vec![1, 1, 3]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a).unwrap().exponents(), &[0, 1, 1]);
        assert_eq!(a.lcm(&Monomial::var(3, 1, 2)).exponents(), &[1, 2, 2]);
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(3, 1, 1).is_coprime(&a));
    }

    #[test]
    fn counts_of_degree() {
        assert_eq!(monomials_of_degree(6, 2).len(), 21);
        assert_eq!(monomials_of_degree(20, 4).len(), 8855);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
    }
}

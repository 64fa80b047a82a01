//! The toric ideal of the root polytope, its initial ideals, the linear
//! ideal of vertex cuts, and minimal primes of squarefree monomial ideals.

use num_integer::binomial;
use num_traits::One;

use super::basis::{buchberger, GroebnerBasis};
use super::order::TermOrder;
use crate::error::{Error, Result};
use crate::poly::{frac, Monomial, QPoly, VarSet};
use crate::tropical::{check_kleene, WeightMatrix};

/// `x_ij x_ji - 1` for `i < j`, then `x_ij x_jk - x_ik` for distinct `i, j, k`.
pub fn toric_ideal_generators(n: usize) -> Vec<QPoly> {
    let x = VarSet::x(n);
    let nv = x.len();
    let var = |i, j| x.index(i, j).unwrap();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = Monomial::from_pairs(nv, &[(var(i, j), 1), (var(j, i), 1)]);
            gens.push(QPoly::from_terms(
                x,
                (),
                [(m, frac(1, 1)), (Monomial::one(nv), frac(-1, 1))],
            ));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let m = Monomial::from_pairs(nv, &[(var(i, j), 1), (var(j, k), 1)]);
                gens.push(QPoly::from_terms(
                    x,
                    (),
                    [(m, frac(1, 1)), (Monomial::var(nv, var(i, k), 1), frac(-1, 1))],
                ));
            }
        }
    }
    gens
}

/// `sum_j x_kj - sum_j x_jk` for each vertex `k`.
pub fn linear_ideal_generators(n: usize) -> Vec<QPoly> {
    let x = VarSet::x(n);
    let nv = x.len();
    (0..n)
        .map(|k| {
            let mut p = QPoly::zero(x, ());
            for j in (0..n).filter(|&j| j != k) {
                p.add_term(Monomial::var(nv, x.index(k, j).unwrap(), 1), frac(1, 1));
                p.add_term(Monomial::var(nv, x.index(j, k).unwrap(), 1), frac(-1, 1));
            }
            p
        })
        .collect()
}

/// A monomial ideal given by its minimal generators, sorted by grevlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    vars: VarSet,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Drops redundant generators.
    pub fn new(vars: VarSet, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort();
        all.dedup();
        let mut kept: Vec<Monomial> = Vec::new();
        for m in all {
            if !kept.iter().any(|g| g.divides(&m)) {
                kept.push(m);
            }
        }
        Self { vars, gens: kept }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Image under the vertex relabelling `perm` of the underlying digraph.
    pub fn permute_vertices(&self, perm: &[usize]) -> Self {
        let var_perm = vertex_to_variable_permutation(self.vars, perm);
        Self::new(self.vars, self.gens.iter().map(|m| m.permute(&var_perm)))
    }

    /// Generators as polynomials.
    pub fn to_polys(&self) -> Vec<QPoly> {
        self.gens
            .iter()
            .map(|m| QPoly::monomial(self.vars, m.clone(), One::one()))
            .collect()
    }

    /// `true` if `face` (a set of variables) contains the support of no generator.
    fn is_face(&self, face: &[bool]) -> bool {
        !self
            .gens
            .iter()
            .any(|g| g.support().all(|(v, _)| face[v]))
    }

    fn require_squarefree(&self) -> Result<()> {
        if !self.is_squarefree() {
            return Err(Error::Consistency(
                "minimal primes requested for a non-squarefree monomial ideal".into(),
            ));
        }
        Ok(())
    }

    /// Renders as `<x_12*x_21, ...>`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|m| crate::poly::render_monomial(self.vars, m))
            .collect();
        format!("<{}>", parts.join(", "))
    }
}

/// `perm[i]` is the image of vertex `i`; the result maps variable `x_ij` to `x_perm(i)perm(j)`.
pub(crate) fn vertex_to_variable_permutation(vars: VarSet, perm: &[usize]) -> Vec<usize> {
    (0..vars.len())
        .map(|k| {
            let (i, j) = vars.pair(k);
            vars.index(perm[i], perm[j]).unwrap()
        })
        .collect()
}

/// The initial ideal `M = in_c(I)` of the toric ideal under a Kleene star's order.
#[derive(Clone, Debug)]
pub struct InitialIdeal {
    pub ideal: MonomialIdeal,
    /// Reduced Gröbner basis of `I` under the refined order.
    pub basis: GroebnerBasis,
    /// Some basis element has a non-leading term of maximal weight, so the
    /// pure weight does not single out a monomial ideal.
    pub tie: bool,
    pub order: TermOrder,
}

impl InitialIdeal {
    /// The initial forms under the pure weight: all maximal-weight terms of each generator.
    pub fn weight_forms(&self) -> Vec<QPoly> {
        let w = self.order.weight();
        self.basis
            .generators()
            .into_iter()
            .map(|g| {
                let top = g.terms().map(|(m, _)| m.weight(w)).max().unwrap_or(0);
                QPoly::from_terms(
                    g.vars(),
                    (),
                    g.terms()
                        .filter(|(m, _)| m.weight(w) == top)
                        .map(|(m, c)| (m.clone(), c.clone())),
                )
            })
            .collect()
    }
}

/// Computes a Gröbner basis of the toric ideal under `>_c` and returns its
/// initial ideal.
pub fn initial_ideal(w: &WeightMatrix) -> Result<InitialIdeal> {
    check_kleene(w)?;
    let order = TermOrder::for_matrix(w);
    let basis = buchberger(&toric_ideal_generators(w.n()), &order)?;
    let tie = basis
        .leading_weight_gaps()
        .iter()
        .any(|&(lead, rest)| rest == Some(lead));
    let ideal = MonomialIdeal::new(VarSet::x(w.n()), basis.leading_monomials());
    Ok(InitialIdeal {
        ideal,
        basis,
        tie,
        order,
    })
}

/// `C(2n-2, n-1)`, the vertex count of a maximal polytrope in `TP^{n-1}`.
pub fn maximal_vertex_count(n: usize) -> usize {
    binomial(2 * n - 2, n - 1)
}

/// True iff the pure weight of `w` already yields a monomial initial ideal.
///
/// With `cross_check`, also asserts that the number of minimal primes of the
/// initial ideal is `C(2n-2, n-1)`; a mismatch is reported as an error.
pub fn is_maximal_type(w: &WeightMatrix, cross_check: bool) -> Result<bool> {
    let init = initial_ideal(w)?;
    if init.tie {
        return Ok(false);
    }
    if cross_check {
        let count = minimal_primes_all(&init.ideal)?.len();
        let expected = maximal_vertex_count(w.n());
        if count != expected {
            return Err(Error::Consistency(format!(
                "tie-free weight but {count} minimal primes, expected {expected}"
            )));
        }
    }
    Ok(true)
}

/// Generators of one minimal prime of a squarefree monomial ideal.
///
/// Grows a facet of the Stanley-Reisner complex greedily, trying variables
/// in the order given by `var_order`, and returns its complement (sorted by
/// index). The complex of a toric initial ideal of the root polytope is pure
/// of dimension `n - 2`; a facet of any other size is an error.
pub fn minimal_prime(m: &MonomialIdeal, var_order: &[usize]) -> Result<Vec<usize>> {
    m.require_squarefree()?;
    let nv = m.vars.len();
    let mut face = vec![false; nv];
    for &v in var_order {
        face[v] = true;
        if !m.is_face(&face) {
            face[v] = false;
        }
    }
    let size = face.iter().filter(|&&b| b).count();
    if m.vars.n() >= 2 && size != m.vars.n() - 1 {
        return Err(Error::Consistency(format!(
            "greedy facet has {size} vertices, expected {}",
            m.vars.n() - 1
        )));
    }
    Ok((0..nv).filter(|&v| !face[v]).collect())
}

/// All minimal primes, as sorted generator index lists in lexicographic order.
pub fn minimal_primes_all(m: &MonomialIdeal) -> Result<Vec<Vec<usize>>> {
    m.require_squarefree()?;
    let nv = m.vars.len();
    let mut out = Vec::new();
    let mut face = vec![false; nv];
    grow_facets(m, &mut face, 0, &mut out);
    let mut primes: Vec<Vec<usize>> = out
        .into_iter()
        .map(|f: Vec<bool>| (0..nv).filter(|&v| !f[v]).collect())
        .collect();
    primes.sort();
    Ok(primes)
}

/// Enumerates faces containing `face` that only add variables `>= from`,
/// recording those that are maximal in the whole complex.
fn grow_facets(m: &MonomialIdeal, face: &mut Vec<bool>, from: usize, out: &mut Vec<Vec<bool>>) {
    for v in from..face.len() {
        if face[v] {
            continue;
        }
        face[v] = true;
        if m.is_face(face) {
            grow_facets(m, face, v + 1, out);
        }
        face[v] = false;
    }
    let maximal = (0..face.len()).all(|v| {
        if face[v] {
            return true;
        }
        face[v] = true;
        let ok = !m.is_face(face);
        face[v] = false;
        ok
    });
    if maximal {
        out.push(face.clone());
    }
}

//! Buchberger's algorithm over the rationals and normal forms against the
//! resulting bases.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::order::{Key, TermOrder};
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, Coefficient, Monomial, MultiPoly, QPoly, VarSet};

/// Polynomial whose terms are sorted by a [`TermOrder`]; the last entry leads.
#[derive(Clone, Debug)]
struct OrderedPoly<C> {
    terms: BTreeMap<Key, C>,
}

impl<C: Coefficient> OrderedPoly<C> {
    fn new() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    fn from_poly(p: &MultiPoly<C>, order: &TermOrder) -> Self {
        let mut out = Self::new();
        for (m, c) in p.terms() {
            out.terms.insert(order.key(m.clone()), c.clone());
        }
        out
    }

    fn add_term(&mut self, k: Key, c: C) {
        if c.is_zero_coef() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero_coef() {
                    e.remove();
                }
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A monic basis element split into leading monomial and tail.
#[derive(Clone, Debug)]
struct Element {
    lm: Monomial,
    lm_weight: i64,
    mask: u64,
    /// Remaining terms, largest first.
    tail: Vec<(Key, BigRational)>,
}

fn support_mask(m: &Monomial) -> u64 {
    m.support().fold(0u64, |acc, (v, _)| acc | (1u64 << (v % 64)))
}

impl Element {
    fn from_monic(p: OrderedPoly<BigRational>) -> Self {
        let mut terms = p.terms;
        let (lead, lc) = terms.pop_last().expect("nonzero polynomial");
        debug_assert!(lc.is_one());
        Self {
            mask: support_mask(&lead.m),
            lm_weight: lead.w,
            lm: lead.m,
            tail: terms.into_iter().rev().collect(),
        }
    }

    fn divides(&self, m: &Monomial, mask: u64) -> bool {
        self.mask & !mask == 0 && self.lm.divides(m)
    }


    fn to_poly(&self, vars: VarSet) -> QPoly {
        let mut p = QPoly::zero(vars, ());
        p.add_term(self.lm.clone(), BigRational::one());
        for (k, c) in &self.tail {
            p.add_term(k.m.clone(), c.clone());
        }
        p
    }
}

fn make_monic(mut p: OrderedPoly<BigRational>) -> OrderedPoly<BigRational> {
    let lc = p.terms.last_key_value().expect("nonzero").1.clone();
    if !lc.is_one() {
        let inv = lc.recip();
        for c in p.terms.values_mut() {
            *c *= &inv;
        }
    }
    p
}

/// Subtracts `c * q * (tail of e)` from `p`; the leading term of `c * q * e`
/// has already been removed from `p` by the caller.
fn subtract_tail<C: Coefficient>(p: &mut OrderedPoly<C>, c: &C, q: &Monomial, qw: i64, e: &Element) {
    for (k, t) in &e.tail {
        let key = Key {
            w: k.w + qw,
            m: k.m.mul(q),
        };
        p.add_term(key, c.scale(t).neg_ref());
    }
}

/// Index of the first element whose leading monomial divides `m`.
fn find_reducer(elems: &[Element], active: &[usize], m: &Monomial, skip: Option<usize>) -> Option<usize> {
    let mask = support_mask(m);
    active
        .iter()
        .copied()
        .find(|&i| Some(i) != skip && elems[i].divides(m, mask))
}

/// Full reduction of `p` modulo the active elements.
fn reduce<C: Coefficient>(
    mut p: OrderedPoly<C>,
    elems: &[Element],
    active: &[usize],
    skip: Option<usize>,
) -> OrderedPoly<C> {
    let mut rem = OrderedPoly::new();
    while let Some((k, c)) = p.terms.pop_last() {
        match find_reducer(elems, active, &k.m, skip) {
            Some(i) => {
                let e = &elems[i];
                let q = k.m.div(&e.lm).expect("reducer divides");
                subtract_tail(&mut p, &c, &q, k.w - e.lm_weight, e);
            }
            None => {
                rem.terms.insert(k, c);
            }
        }
    }
    rem
}

fn s_polynomial(a: &Element, b: &Element, order: &TermOrder) -> OrderedPoly<BigRational> {
    let lcm = a.lm.lcm(&b.lm);
    let qa = lcm.div(&a.lm).unwrap();
    let qb = lcm.div(&b.lm).unwrap();
    let wa = qa.weight(order.weight());
    let wb = qb.weight(order.weight());
    let mut p = OrderedPoly::new();
    let one = BigRational::one();
    for (k, c) in &a.tail {
        p.add_term(
            Key {
                w: k.w + wa,
                m: k.m.mul(&qa),
            },
            c.clone(),
        );
    }
    subtract_tail(&mut p, &one, &qb, wb, b);
    p
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: u32,
    lcm: Key,
    i: usize,
    j: usize,
}

/// A reduced Gröbner basis with rational coefficients.
///
/// When built with a degree bound (see [`buchberger_truncated`]) the basis is
/// only complete up to that degree; normal forms of homogeneous polynomials
/// of degree at most the bound are still exact.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: VarSet,
    order: TermOrder,
    elems: Vec<Element>,
    degree_bound: Option<u32>,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[QPoly], order: &TermOrder) -> Result<GroebnerBasis> {
    buchberger_truncated(gens, order, None)
}

/// Buchberger's algorithm that ignores S-pairs whose lcm has degree above
/// `degree_bound`. For homogeneous input this yields the basis truncated at
/// that degree.
///
/// Pairs are processed by increasing lcm degree, then increasing lcm under
/// the term order; useless pairs are discarded with the Gebauer-Möller
/// criteria. Reducers are chosen first-found in insertion order, and the
/// result is inter-reduced and sorted by leading monomial.
pub fn buchberger_truncated(
    gens: &[QPoly],
    order: &TermOrder,
    degree_bound: Option<u32>,
) -> Result<GroebnerBasis> {
    let vars = gens
        .first()
        .ok_or_else(|| Error::DomainMismatch("empty generator list".into()))?
        .vars();
    if gens.iter().any(|g| g.vars() != vars) {
        return Err(Error::DomainMismatch(
            "generators live over different variable sets".into(),
        ));
    }
    if order.nvars() != vars.len() {
        return Err(Error::DomainMismatch(format!(
            "term order has {} weights but {} has {} variables",
            order.nvars(),
            vars,
            vars.len()
        )));
    }

    let mut state = Builder {
        order,
        elems: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
    };
    for g in gens {
        let r = reduce(OrderedPoly::from_poly(g, order), &state.elems, &state.active, None);
        if !r.is_zero() {
            state.insert(make_monic(r));
        }
    }
    while let Some(pair) = state.pairs.pop_first() {
        if degree_bound.is_some_and(|d| pair.degree > d) {
            break;
        }
        let s = s_polynomial(&state.elems[pair.i], &state.elems[pair.j], order);
        let r = reduce(s, &state.elems, &state.active, None);
        if !r.is_zero() {
            state.insert(make_monic(r));
        }
    }

    // inter-reduce tails; leading monomials are already pairwise non-dividing
    let active = state.active.clone();
    let mut reduced = Vec::with_capacity(active.len());
    for &i in &active {
        let e = &state.elems[i];
        let mut tail = OrderedPoly::new();
        for (k, c) in &e.tail {
            tail.terms.insert(k.clone(), c.clone());
        }
        let tail = reduce(tail, &state.elems, &active, Some(i));
        let mut p = tail;
        p.terms.insert(
            Key {
                w: e.lm_weight,
                m: e.lm.clone(),
            },
            BigRational::one(),
        );
        reduced.push(Element::from_monic(p));
    }
    reduced.sort_by(|a, b| order.cmp(&a.lm, &b.lm));

    Ok(GroebnerBasis {
        vars,
        order: order.clone(),
        elems: reduced,
        degree_bound,
    })
}

struct Builder<'a> {
    order: &'a TermOrder,
    elems: Vec<Element>,
    active: Vec<usize>,
    pairs: BTreeSet<Pair>,
}

impl Builder<'_> {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.elems[i].lm.lcm(&self.elems[j].lm);
        Pair {
            degree: lcm.degree(),
            lcm: self.order.key(lcm),
            i: i.min(j),
            j: i.max(j),
        }
    }

    /// Gebauer-Möller update for a new element.
    fn insert(&mut self, p: OrderedPoly<BigRational>) {
        let h = self.elems.len();
        self.elems.push(Element::from_monic(p));
        let lm_h = self.elems[h].lm.clone();

        // new pairs (h, g)
        let candidates: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lm_g = &self.elems[g].lm;
                (g, lm_h.lcm(lm_g), lm_h.is_coprime(lm_g))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, (g, lcm, coprime)) in candidates.iter().enumerate() {
            let dominated_later = candidates[idx + 1..]
                .iter()
                .any(|(_, other, _)| other.divides(lcm));
            let dominated_kept = kept.iter().any(|(_, other, _)| other.divides(lcm));
            if *coprime || (!dominated_later && !dominated_kept) {
                kept.push((*g, lcm.clone(), *coprime));
            }
        }
        // old pairs made redundant by h
        let elems = &self.elems;
        self.pairs.retain(|pr| {
            let l = &pr.lcm.m;
            !(lm_h.divides(l)
                && elems[pr.i].lm.lcm(&lm_h) != *l
                && elems[pr.j].lm.lcm(&lm_h) != *l)
        });
        for (g, _, coprime) in kept {
            if !coprime {
                let pr = self.pair(g, h);
                self.pairs.insert(pr);
            }
        }
        let elems = &self.elems;
        self.active.retain(|&g| !lm_h.divides(&elems[g].lm));
        self.active.push(h);
    }
}

impl GroebnerBasis {
    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn degree_bound(&self) -> Option<u32> {
        self.degree_bound
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Monic generators, sorted by increasing leading monomial.
    pub fn generators(&self) -> Vec<QPoly> {
        self.elems.iter().map(|e| e.to_poly(self.vars)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|e| e.lm.clone()).collect()
    }

    /// Weights of the leading term and of the heaviest non-leading term of each generator.
    pub(crate) fn leading_weight_gaps(&self) -> Vec<(i64, Option<i64>)> {
        self.elems
            .iter()
            .map(|e| (e.lm_weight, e.tail.iter().map(|(k, _)| k.w).max()))
            .collect()
    }

    fn all_indices(&self) -> Vec<usize> {
        (0..self.elems.len()).collect()
    }

    pub fn contains_unit(&self) -> bool {
        self.elems.iter().any(|e| e.lm.is_one())
    }

    /// True if no leading monomial divides `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        find_reducer(&self.elems, &self.all_indices(), m, None).is_none()
    }

    pub fn standard_monomials_of_degree(&self, deg: u32) -> Vec<Monomial> {
        monomials_of_degree(self.vars.len(), deg)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect()
    }

    fn check_vars<C: Coefficient>(&self, p: &MultiPoly<C>) -> Result<()> {
        if p.vars() != self.vars {
            return Err(Error::DomainMismatch(format!(
                "polynomial over {} reduced against a basis over {}",
                p.vars(),
                self.vars
            )));
        }
        Ok(())
    }

    /// Remainder of `p` on division by the basis.
    ///
    /// Coefficients may come from any [`Coefficient`] domain; the basis is
    /// monic with rational coefficients, so every step only rescales by
    /// rationals and never divides by a coefficient of `p`.
    pub fn normal_form<C: Coefficient>(&self, p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        self.check_vars(p)?;
        let rem = reduce(
            OrderedPoly::from_poly(p, &self.order),
            &self.elems,
            &self.all_indices(),
            None,
        );
        Ok(MultiPoly::from_terms(
            self.vars,
            p.coefficient_ctx().clone(),
            rem.terms.into_iter().map(|(k, c)| (k.m, c)),
        ))
    }

    /// Division with cofactors: `p = sum quotients[i] * generators()[i] + remainder`.
    pub fn division(&self, p: &QPoly) -> Result<(Vec<QPoly>, QPoly)> {
        self.check_vars(p)?;
        let all = self.all_indices();
        let mut quotients = vec![QPoly::zero(self.vars, ()); self.elems.len()];
        let mut work = OrderedPoly::from_poly(p, &self.order);
        let mut rem = QPoly::zero(self.vars, ());
        while let Some((k, c)) = work.terms.pop_last() {
            match find_reducer(&self.elems, &all, &k.m, None) {
                Some(i) => {
                    let e = &self.elems[i];
                    let q = k.m.div(&e.lm).unwrap();
                    quotients[i].add_term(q.clone(), c.clone());
                    subtract_tail(&mut work, &c, &q, k.w - e.lm_weight, e);
                }
                None => rem.add_term(k.m, c),
            }
        }
        Ok((quotients, rem))
    }

    /// Re-checks that every S-polynomial reduces to zero (pairs with coprime
    /// leading monomials are skipped; they always reduce to zero).
    pub fn verify_s_pairs(&self) -> Result<()> {
        let all = self.all_indices();
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let (a, b) = (&self.elems[i], &self.elems[j]);
                if a.lm.is_coprime(&b.lm) {
                    continue;
                }
                if self
                    .degree_bound
                    .is_some_and(|d| a.lm.lcm(&b.lm).degree() > d)
                {
                    continue;
                }
                let r = reduce(s_polynomial(a, b, &self.order), &self.elems, &all, None);
                if !r.is_zero() {
                    return Err(Error::Consistency(format!(
                        "S-polynomial of generators {i} and {j} has nonzero remainder"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks that the basis is reduced: monic, and no leading monomial
    /// divides any term of another generator.
    pub fn verify_reduced(&self) -> Result<()> {
        for (i, a) in self.elems.iter().enumerate() {
            for (j, b) in self.elems.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mask_hit = |m: &Monomial| a.divides(m, support_mask(m));
                if mask_hit(&b.lm) || b.tail.iter().any(|(k, _)| mask_hit(&k.m)) {
                    return Err(Error::Consistency(format!(
                        "leading monomial of generator {i} divides a term of generator {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// A normal-form evaluator that caches the normal form of every monomial it sees.
    pub fn reducer(&self) -> MonomialReducer<'_> {
        MonomialReducer {
            basis: self,
            all: self.all_indices(),
            cache: HashMap::new(),
        }
    }

}

/// Normal forms computed monomial by monomial and memoised.
///
/// Uses linearity of the normal form: `nf(sum c_v x^v) = sum c_v nf(x^v)`.
/// This agrees with [`GroebnerBasis::normal_form`] because the basis is reduced.
pub struct MonomialReducer<'a> {
    basis: &'a GroebnerBasis,
    all: Vec<usize>,
    cache: HashMap<Monomial, Vec<(Monomial, BigRational)>>,
}

impl MonomialReducer<'_> {
    /// Normal form of a single monomial as `(standard monomial, coefficient)` pairs.
    pub fn monomial(&mut self, m: &Monomial) -> &[(Monomial, BigRational)] {
        if !self.cache.contains_key(m) {
            let nf = self.compute(m);
            self.cache.insert(m.clone(), nf);
        }
        &self.cache[m]
    }

    fn compute(&self, m: &Monomial) -> Vec<(Monomial, BigRational)> {
        let order = &self.basis.order;
        let mut work: OrderedPoly<BigRational> = OrderedPoly::new();
        work.terms.insert(order.key(m.clone()), BigRational::one());
        let mut rem: OrderedPoly<BigRational> = OrderedPoly::new();
        while let Some((k, c)) = work.terms.pop_last() {
            if let Some(known) = self.cache.get(&k.m) {
                for (sm, sc) in known {
                    rem.add_term(order.key(sm.clone()), sc * &c);
                }
                continue;
            }
            match find_reducer(&self.basis.elems, &self.all, &k.m, None) {
                Some(i) => {
                    let e = &self.basis.elems[i];
                    let q = k.m.div(&e.lm).unwrap();
                    subtract_tail(&mut work, &c, &q, k.w - e.lm_weight, e);
                }
                None => rem.add_term(k, c),
            }
        }
        rem.terms.into_iter().rev().map(|(k, c)| (k.m, c)).collect()
    }

    /// Normal form of `p`, coefficients in any domain.
    pub fn normal_form<C: Coefficient>(&mut self, p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        self.basis.check_vars(p)?;
        let mut out = MultiPoly::zero(p.vars(), p.coefficient_ctx().clone());
        // smallest monomials first so larger ones hit the cache
        for (m, c) in p.terms().rev() {
            for (sm, sc) in self.monomial(m).to_vec() {
                out.add_term(sm, c.scale(&sc));
            }
        }
        Ok(out)
    }

    /// Coefficient of the standard monomial `target` in `nf(p)`.
    pub fn coefficient_of<C: Coefficient>(&mut self, p: &MultiPoly<C>, target: &Monomial) -> Result<C> {
        self.basis.check_vars(p)?;
        let mut acc = C::zero_in(p.coefficient_ctx());
        for (m, c) in p.terms().rev() {
            let hit = self
                .monomial(m)
                .iter()
                .find(|(sm, _)| sm == target)
                .map(|(_, sc)| sc.clone());
            if let Some(sc) = hit {
                if !sc.is_zero() {
                    acc.add_assign_ref(&c.scale(&sc));
                }
            }
        }
        Ok(acc)
    }
}

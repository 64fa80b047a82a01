use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Coefficient, Monomial, VarKind, VarSet};
use crate::error::{Error, Result};

/// Coefficient context of a polynomial used as a coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCtx<X> {
    pub vars: VarSet,
    pub inner: X,
}

/// Sparse multivariate polynomial over a fixed [`VarSet`].
///
/// Terms live in a map keyed by [`Monomial`]; zero coefficients are never
/// stored. Iteration via [`MultiPoly::terms`] runs in canonical order
/// (total degree descending, then graded reverse lexicographic).
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<C: Coefficient> {
    vars: VarSet,
    ctx: C::Ctx,
    terms: BTreeMap<Monomial, C>,
}

/// Polynomial with rational coefficients.
pub type QPoly = MultiPoly<BigRational>;
/// x-polynomial whose coefficients are rational a-polynomials.
pub type NestedPoly = MultiPoly<QPoly>;

impl<C: Coefficient> MultiPoly<C> {
    pub fn zero(vars: VarSet, ctx: C::Ctx) -> Self {
        Self {
            vars,
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, c: C) -> Self {
        let mut p = Self::zero(vars, c.ctx());
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: VarSet, ctx: C::Ctx) -> Self {
        let c = C::one_in(&ctx);
        Self::constant(vars, c)
    }

    /// The single variable `idx` with unit coefficient.
    pub fn var(vars: VarSet, ctx: C::Ctx, idx: usize) -> Self {
        let one = C::one_in(&ctx);
        Self::monomial(vars, Monomial::var(vars.len(), idx, 1), one)
    }

    pub fn monomial(vars: VarSet, mono: Monomial, c: C) -> Self {
        assert_eq!(mono.nvars(), vars.len(), "monomial arity does not match {vars}");
        let mut p = Self::zero(vars, c.ctx());
        p.add_term(mono, c);
        p
    }

    pub fn from_terms(
        vars: VarSet,
        ctx: C::Ctx,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut p = Self::zero(vars, ctx);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "monomial arity does not match {vars}");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn coefficient_ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order (largest first).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// Coefficient of `m`, zero if absent.
    pub fn coefficient_or_zero(&self, m: &Monomial) -> C {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| C::zero_in(&self.ctx))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero_in(&self.ctx)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero_coef() {
            return;
        }
        match self.terms.entry(m) {
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

    fn check_domain(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::DomainMismatch(format!(
                "{} vs {}",
                self.vars, other.vars
            )));
        }
        if self.ctx != other.ctx {
            return Err(Error::DomainMismatch(format!(
                "coefficient domains differ: {:?} vs {:?}",
                self.ctx, other.ctx
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        let mut terms: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let prod = c1.mul_ref(c2);
                match terms.entry(m1.mul(m2)) {
                    Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&prod),
                }
            }
        }
        terms.retain(|_, c| !c.is_zero_coef());
        Ok(Self {
            vars: self.vars,
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// In-place `self += c * m * other`.
    pub fn add_scaled(&mut self, c: &C, m: &Monomial, other: &Self) {
        for (m2, c2) in &other.terms {
            self.add_term(m.mul(m2), c.mul_ref(c2));
        }
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients_in_place(|c| c.neg_ref())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero(self.vars, self.ctx.clone());
        }
        self.map_coefficients_in_place(|c| c.scale(r))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale_by(&self, c: &C) -> Self {
        let mut out = Self::zero(self.vars, self.ctx.clone());
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d.mul_ref(c));
        }
        out
    }

    fn map_coefficients_in_place(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(self.vars, self.ctx.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Applies `f` to every coefficient, producing a polynomial over another domain.
    pub fn map_coefficients<D: Coefficient>(&self, ctx: D::Ctx, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(self.vars, ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Exact `k`-th power; `p^0 = 1`.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.vars, self.ctx.clone());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Result<Self> {
        if var >= self.vars.len() {
            return Err(Error::UnknownVariable(format!(
                "index {var} in {}",
                self.vars
            )));
        }
        let mut out = Self::zero(self.vars, self.ctx.clone());
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(
                Monomial::from_exponents(exps),
                c.scale(&BigRational::from_integer(e.into())),
            );
        }
        Ok(out)
    }

    /// Partial derivative with respect to a named variable (`"a_12"`).
    pub fn derivative_by_name(&self, name: &str) -> Result<Self> {
        let idx = self
            .vars
            .parse_name(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        self.derivative(idx)
    }

    /// Sum of all terms of total degree exactly `deg`.
    pub fn homogeneous_component(&self, deg: u32) -> Self {
        let mut out = Self::zero(self.vars, self.ctx.clone());
        for (m, c) in &self.terms {
            if m.degree() == deg {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Substitutes polynomials over `target` for variables.
    ///
    /// Variables missing from `assignment` persist, which requires
    /// `target == self.vars()`.
    pub fn substitute(&self, target: VarSet, assignment: &BTreeMap<usize, MultiPoly<C>>) -> Result<Self> {
        for (v, q) in assignment {
            if *v >= self.vars.len() {
                return Err(Error::UnknownVariable(format!("index {v} in {}", self.vars)));
            }
            if q.vars != target || q.ctx != self.ctx {
                return Err(Error::DomainMismatch(format!(
                    "substituted value lives over {}, expected {}",
                    q.vars, target
                )));
            }
        }
        let mut out = MultiPoly::zero(target, self.ctx.clone());
        // powers are cached per variable
        let mut powers: BTreeMap<(usize, u16), MultiPoly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            let mut kept = vec![0u16; target.len()];
            for (v, e) in m.support() {
                match assignment.get(&v) {
                    Some(q) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| q.pow(e as u32));
                        term = &term * &*pw;
                    }
                    None => {
                        if target != self.vars {
                            return Err(Error::DomainMismatch(format!(
                                "variable {} is unassigned but the target is {}",
                                self.vars.name(v),
                                target
                            )));
                        }
                        kept[v] = e;
                    }
                }
            }
            let kept = Monomial::from_exponents(kept);
            for (m2, c2) in term.terms {
                out.add_term(m2.mul(&kept), c2);
            }
        }
        Ok(out)
    }

    /// Evaluates at a rational point (one value per variable).
    pub fn evaluate(&self, point: &[BigRational]) -> Result<C> {
        if point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = C::zero_in(&self.ctx);
        for (m, c) in &self.terms {
            let mut v: BigRational = One::one();
            for (i, e) in m.support() {
                v *= num_traits::pow(point[i].clone(), e as usize);
            }
            acc.add_assign_ref(&c.scale(&v));
        }
        Ok(acc)
    }

    /// Renames variables: variable `i` becomes `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.vars.len());
        let mut out = Self::zero(self.vars, self.ctx.clone());
        for (m, c) in &self.terms {
            out.add_term(m.permute(perm), c.clone());
        }
        out
    }

    /// Reinterprets the polynomial over a variable set of the same size
    /// (e.g. x-variables as a-variables).
    pub fn relabel(&self, vars: VarSet) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::DomainMismatch(format!(
                "cannot relabel {} as {}",
                self.vars, vars
            )));
        }
        Ok(Self {
            vars,
            ctx: self.ctx.clone(),
            terms: self.terms.clone(),
        })
    }
}

impl QPoly {
    /// Univariate polynomial in `t` from coefficients, lowest degree first.
    pub fn univariate(coeffs: &[BigRational]) -> Self {
        let vars = VarSet::t();
        Self::from_terms(
            vars,
            (),
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(1, 0, k as u16), c.clone())),
        )
    }

    /// Rational value at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        self.evaluate(point)
    }

    /// Evaluation at an integer point.
    pub fn eval_integers(&self, point: &[i64]) -> Result<BigRational> {
        let pt: Vec<BigRational> = point.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        self.evaluate(&pt)
    }
}

impl<C: Coefficient> MultiPoly<C> {
    /// Coefficients lowest degree first, for polynomials over `t`.
    pub fn univariate_coefficients(&self) -> Vec<C> {
        assert_eq!(self.vars.kind(), VarKind::T, "not a polynomial in t");
        let deg = self.total_degree().unwrap_or(0) as usize;
        (0..=deg)
            .map(|k| self.coefficient_or_zero(&Monomial::var(1, 0, k as u16)))
            .collect()
    }
}

impl<C: Coefficient> Coefficient for MultiPoly<C> {
    type Ctx = PolyCtx<C::Ctx>;

    fn ctx(&self) -> Self::Ctx {
        PolyCtx {
            vars: self.vars,
            inner: self.ctx.clone(),
        }
    }

    fn zero_in(ctx: &Self::Ctx) -> Self {
        Self::zero(ctx.vars, ctx.inner.clone())
    }

    fn one_in(ctx: &Self::Ctx) -> Self {
        Self::one(ctx.vars, ctx.inner.clone())
    }

    fn from_rational(r: &BigRational, ctx: &Self::Ctx) -> Self {
        Self::constant(ctx.vars, C::from_rational(r, &ctx.inner))
    }

    fn is_zero_coef(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_one_coef(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one_coef())
    }

    fn is_negative(&self) -> bool {
        false
    }

    fn is_atomic(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().is_some_and(Monomial::is_one)
            && self.terms.values().next().is_some_and(|c| c.is_atomic() && !c.is_negative())
    }

    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.neg_ref());
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        self.neg()
    }

    fn scale(&self, r: &BigRational) -> Self {
        MultiPoly::scale(self, r)
    }

    fn to_rational(&self) -> Option<BigRational> {
        self.as_constant().and_then(|c| c.to_rational())
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl<C: Coefficient> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render(self))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Coefficient> $tr<&MultiPoly<C>> for &MultiPoly<C> {
            type Output = MultiPoly<C>;

            /// Panics when the operands live over different domains; use the
            /// `checked_*` methods to get an error instead.
            fn $method(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<C: Coefficient> $tr<MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;

            fn $method(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<C: Coefficient> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;

    fn neg(self) -> MultiPoly<C> {
        MultiPoly::neg(self)
    }
}

impl<C: Coefficient> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;

    fn neg(self) -> MultiPoly<C> {
        MultiPoly::neg(&self)
    }
}

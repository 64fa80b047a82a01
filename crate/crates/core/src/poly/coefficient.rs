use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arithmetic required of a polynomial coefficient domain.
///
/// Implemented by [`BigRational`] and, recursively, by
/// [`MultiPoly`](super::MultiPoly) itself, so that x-polynomials can carry
/// a-polynomial coefficients. `Ctx` is whatever a value needs to know about
/// its domain to build a zero or a one (nothing for rationals, the variable
/// set for polynomials).
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_rational(r: &BigRational, ctx: &Self::Ctx) -> Self;

    fn is_zero_coef(&self) -> bool;
    fn is_one_coef(&self) -> bool;
    /// True for negative rational constants; compound values never report a sign.
    fn is_negative(&self) -> bool;
    /// True when the rendering needs no parentheses as a factor.
    fn is_atomic(&self) -> bool;

    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &BigRational) -> Self;

    /// The value as a rational number, if it is a constant.
    fn to_rational(&self) -> Option<BigRational>;
    fn render(&self) -> String;
}

impl Coefficient for BigRational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero_in(_: &()) -> Self {
        Zero::zero()
    }

    fn one_in(_: &()) -> Self {
        One::one()
    }

    fn from_rational(r: &BigRational, _: &()) -> Self {
        r.clone()
    }

    fn is_zero_coef(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one_coef(&self) -> bool {
        One::is_one(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn is_atomic(&self) -> bool {
        true
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

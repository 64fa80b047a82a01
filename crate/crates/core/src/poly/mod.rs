//! Exact multivariate polynomial algebra over the rationals.

mod coefficient;
mod monomial;
mod multipoly;
mod render;
mod vars;

pub use coefficient::Coefficient;
pub use monomial::{grevlex, monomials_of_degree, Monomial};
pub use multipoly::{MultiPoly, NestedPoly, PolyCtx, QPoly};
pub use render::{parse_qpoly, parse_rational, render_monomial};
pub use vars::{VarKind, VarSet};

use num_rational::BigRational;

/// Shorthand for the integer `v` as a rational.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Shorthand for `num / den`.
pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `q = sum a_ij x_ij`, the class of the polytrope divisor.
pub fn divisor_class(n: usize) -> NestedPoly {
    let x = VarSet::x(n);
    let a = VarSet::a(n);
    let mut q = NestedPoly::zero(x, PolyCtx { vars: a, inner: () });
    for k in 0..x.len() {
        let coef = QPoly::var(a, (), k);
        q.add_term(Monomial::var(x.len(), k, 1), coef);
    }
    q
}

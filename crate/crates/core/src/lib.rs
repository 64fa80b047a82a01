//! Exact multivariate volume, Ehrhart and h*-polynomials of polytropes.
//!
//! A polytrope is cut out by `x_i - x_j <= c_ij`; its combinatorial type is
//! read off the initial ideal of a toric ideal under the weight `c`, and the
//! volume polynomial is an intersection number on the associated toric
//! variety. [`pipeline::polynomial_triple`] runs the whole chain and
//! [`verify::verify`] checks it against lattice-point enumeration.

pub mod cohomology;
pub mod data;
pub mod ehrhart;
pub mod error;
pub mod groebner;
pub mod io;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod subdivision;
pub mod tropical;
pub mod verify;

pub use error::{Error, Result};

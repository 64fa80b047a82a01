//! Gröbner bases for the toric ideal of the root polytope and the
//! Stanley-Reisner ideals of its regular triangulations.

mod basis;
mod ideal;
mod order;

pub use basis::{buchberger, buchberger_truncated, GroebnerBasis, MonomialReducer};
pub use ideal::{
    initial_ideal, is_maximal_type, linear_ideal_generators, maximal_vertex_count,
    minimal_prime, minimal_primes_all, toric_ideal_generators, InitialIdeal, MonomialIdeal,
};
pub use order::TermOrder;

#[cfg(test)]
mod tests;

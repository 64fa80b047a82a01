use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid weight matrix: {0}")]
    InvalidMatrix(String),

    /// The weighted digraph has a directed cycle of negative total weight.
    /// `cycle` lists the vertices (0-based) in traversal order.
    #[error("negative cycle {}", format_cycle(.cycle))]
    NegativeCycle { cycle: Vec<usize> },

    #[error("not a Kleene star: {0}")]
    NotKleene(String),

    #[error("expected a point of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("enumeration box has {points} points, above the cap of {cap}")]
    ResourceCap { points: u128, cap: u64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

fn format_cycle(cycle: &[usize]) -> String {
    let mut parts: Vec<String> = cycle.iter().map(|v| (v + 1).to_string()).collect();
    if let Some(first) = cycle.first() {
        parts.push((first + 1).to_string());
    }
    parts.join(" -> ")
}

pub type Result<T> = std::result::Result<T, Error>;

//! Bundled representative Kleene stars.

use crate::io::parse_records;
use crate::tropical::WeightMatrix;

pub const REPRESENTATIVES_3D: &str = include_str!("../data/representatives_3d.txt");
pub const REPRESENTATIVES_4D: &str = include_str!("../data/representatives_4d.txt");

fn load(text: &str) -> Vec<WeightMatrix> {
    parse_records(text)
        .expect("bundled data parses")
        .iter()
        .map(|r| r.matrix().expect("bundled data is valid"))
        .collect()
}

/// One matrix for each of the six maximal types of 3-dimensional polytropes.
pub fn representatives_3d() -> Vec<WeightMatrix> {
    load(REPRESENTATIVES_3D)
}

/// Maximal 4-dimensional polytropes of pairwise different types.
pub fn representatives_4d() -> Vec<WeightMatrix> {
    load(REPRESENTATIVES_4D)
}

/// The hexagon with `c = (3, 2, 3, 4, 5, 6)`.
pub fn hexagon() -> WeightMatrix {
    WeightMatrix::from_vector(3, &[3, 2, 3, 4, 5, 6]).expect("valid")
}

//! Volume, Ehrhart and h*-polynomials of one polytrope type.

use crate::cohomology::{volume_polynomial, VolumePolynomial};
use crate::ehrhart::{hstar_transform, todd_apply, EhrhartPolynomial, HStarPolynomial};
use crate::error::Result;
use crate::tropical::WeightMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialTriple {
    pub volume: VolumePolynomial,
    pub ehrhart: EhrhartPolynomial,
    pub hstar: HStarPolynomial,
}

impl PolynomialTriple {
    /// Derives the Ehrhart and h*-polynomials from a volume polynomial.
    pub fn from_volume(volume: VolumePolynomial) -> Result<Self> {
        let ehrhart = todd_apply(&volume.euclidean, volume.dimension());
        let hstar = hstar_transform(&ehrhart)?;
        Ok(Self {
            volume,
            ehrhart,
            hstar,
        })
    }
}

pub fn polynomial_triple(w: &WeightMatrix) -> Result<PolynomialTriple> {
    PolynomialTriple::from_volume(volume_polynomial(w)?)
}

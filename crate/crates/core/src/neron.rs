//! Torus rank of the reduction of an abelian surface, and the degeneration
//! type it forces through the monodromy on `H^1` and `H^2 = ∧²H^1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{nilpotency_index, wedge_square, NilpotentOperator};
use crate::sncl::DegenerationType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformizationDatum {
    pub torus_rank: usize,
    pub abelian_rank: usize,
}

impl UniformizationDatum {
    pub fn new(torus_rank: usize) -> Result<Self> {
        if torus_rank > 2 {
            return Err(Error::Invalid(format!("torus rank {torus_rank} exceeds 2")));
        }
        Ok(UniformizationDatum {
            torus_rank,
            abelian_rank: 2 - torus_rank,
        })
    }
}

/// `N` on the 4-dimensional `H^1`: one 2-block per unit of torus rank.
pub fn monodromy_on_h1(d: UniformizationDatum) -> NilpotentOperator {
    let mut blocks = vec![2; d.torus_rank];
    blocks.resize(4 - d.torus_rank, 1);
    NilpotentOperator::jordan(&blocks)
}

/// Index of `∧²N` on `H^2`, read as a degeneration type.
pub fn type_from_rank(d: UniformizationDatum) -> DegenerationType {
    type_from_operator(&monodromy_on_h1(d)).expect("square-zero operator on H^1")
}

/// The type forced by any nilpotent `N` on `H^1` with `N² = 0`.
pub fn type_from_operator(n: &NilpotentOperator) -> Result<DegenerationType> {
    let k = nilpotency_index(&wedge_square(n))?;
    DegenerationType::from_index(k).ok_or_else(|| Error::NotNilpotent(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rank;

    #[test]
    fn ranks_to_types() {
        let want = [DegenerationType::I, DegenerationType::II, DegenerationType::III];
        for r in 0..3 {
            let d = UniformizationDatum::new(r).unwrap();
            assert_eq!(d.torus_rank + d.abelian_rank, 2);
            let n = monodromy_on_h1(d);
            assert_eq!(n.dim(), 4);
            assert_eq!(rank(n.matrix()), r);
            assert!((n.matrix() * n.matrix()).is_zero());
            assert_eq!(type_from_rank(d), want[r]);
        }
        assert!(UniformizationDatum::new(3).is_err());
    }
}

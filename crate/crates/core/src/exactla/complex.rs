use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::matrix::{rank_in_char, Matrix};
use super::scalar::{is_prime, Scalar, ToRational};
use super::snf::invariant_factors;
use crate::error::{Error, Result};

/// A bounded chain complex `... -> C_n --d_n--> C_{n-1} -> ...`.
///
/// `differential(n)` is a `dim C_{n-1} x dim C_n` matrix. Degrees outside
/// `lo..=hi` carry the zero space. Cochain complexes are stored by negating
/// degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<T> {
    lo: i32,
    dims: Vec<usize>,
    differentials: BTreeMap<i32, Matrix<T>>,
}

impl<T: Scalar> ChainComplex<T> {
    /// Builds a complex on degrees `lo..lo+dims.len()`. Missing
    /// differentials are zero; shapes and `d∘d = 0` are verified.
    pub fn new(lo: i32, dims: Vec<usize>, differentials: BTreeMap<i32, Matrix<T>>) -> Result<Self> {
        let c = ChainComplex {
            lo,
            dims,
            differentials,
        };
        c.check()?;
        Ok(c)
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    /// `d_n : C_n -> C_{n-1}`; zero when not stored.
    pub fn differential(&self, n: i32) -> Matrix<T> {
        self.differentials
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(n - 1), self.dim(n)))
    }

    fn check(&self) -> Result<()> {
        for (&n, d) in &self.differentials {
            if d.shape() != (self.dim(n - 1), self.dim(n)) {
                return Err(Error::Structure(format!(
                    "d_{n} has shape {:?}, expected {:?}",
                    d.shape(),
                    (self.dim(n - 1), self.dim(n))
                )));
            }
        }
        for (&n, d) in &self.differentials {
            if let Some(below) = self.differentials.get(&(n - 1)) {
                if !(below * d).is_zero() {
                    return Err(Error::Structure(format!("d_{} ∘ d_{n} is not zero", n - 1)));
                }
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(n) as i64)
            .sum()
    }
}

impl<T: Scalar + ToRational> ChainComplex<T> {
    /// `dim H_n` for every degree, over `Q` (`field_char = 0`) or `F_p`.
    pub fn homology_dims(&self, field_char: u64) -> Result<BTreeMap<i32, usize>> {
        if field_char != 0 && !is_prime(field_char) {
            return Err(Error::FieldChar(field_char));
        }
        let ranks = self.ranks(field_char)?;
        Ok(self
            .degrees()
            .map(|n| {
                let rn = ranks.get(&n).copied().unwrap_or(0);
                let rn1 = ranks.get(&(n + 1)).copied().unwrap_or(0);
                (n, self.dim(n) - rn - rn1)
            })
            .collect())
    }

    fn ranks(&self, field_char: u64) -> Result<BTreeMap<i32, usize>> {
        self.differentials
            .iter()
            .map(|(&n, d)| Ok((n, rank_in_char(&d.to_rational(), field_char)?)))
            .collect()
    }
}

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    /// Torsion coefficients, each > 1, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_z(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl ChainComplex<BigInt> {
    /// Integral homology via Smith normal forms of the differentials.
    pub fn integer_homology(&self) -> BTreeMap<i32, AbelianGroup> {
        let factors: BTreeMap<i32, Vec<BigInt>> = self
            .differentials
            .iter()
            .map(|(&n, d)| (n, invariant_factors(d)))
            .collect();
        self.degrees()
            .map(|n| {
                let rn = factors.get(&n).map_or(0, |f| f.len());
                let above = factors.get(&(n + 1));
                let rn1 = above.map_or(0, |f| f.len());
                let torsion = above
                    .map(|f| f.iter().filter(|x| !x.is_one()).cloned().collect())
                    .unwrap_or_default();
                (
                    n,
                    AbelianGroup {
                        rank: self.dim(n) - rn - rn1,
                        torsion,
                    },
                )
            })
            .collect()
    }
}

/// Converts an integer complex to the rationals.
pub fn rationalize(c: &ChainComplex<BigInt>) -> ChainComplex<BigRational> {
    ChainComplex {
        lo: c.lo,
        dims: c.dims.clone(),
        differentials: c
            .differentials
            .iter()
            .map(|(&n, d)| (n, d.to_rational()))
            .collect(),
    }
}

/// Free helper matching the operation name used throughout the crate.
pub fn homology_dims<T: Scalar + ToRational>(
    c: &ChainComplex<T>,
    field_char: u64,
) -> Result<BTreeMap<i32, usize>> {
    c.homology_dims(field_char)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntMatrix, QMatrix};

    #[test]
    fn single_copy_of_q() {
        let c = ChainComplex::<BigRational>::new(0, vec![1], BTreeMap::new()).unwrap();
        let h = c.homology_dims(0).unwrap();
        assert_eq!(h[&0], 1);
    }

    #[test]
    fn rejects_non_complex() {
        let mut ds = BTreeMap::new();
        ds.insert(1, QMatrix::from_i64_rows(&[vec![1]]));
        ds.insert(2, QMatrix::from_i64_rows(&[vec![1]]));
        let err = ChainComplex::new(0, vec![1, 1, 1], ds).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
    }

    #[test]
    fn rejects_bad_shape() {
        let mut ds = BTreeMap::new();
        ds.insert(1, QMatrix::from_i64_rows(&[vec![1, 1]]));
        assert!(ChainComplex::new(0, vec![1, 1], ds).is_err());
    }

    #[test]
    fn torsion_detected() {
        // C_1 = Z --2--> C_0 = Z : H_0 = Z/2, H_1 = 0
        let mut ds = BTreeMap::new();
        ds.insert(1, IntMatrix::from_i64_rows(&[vec![2]]));
        let c = ChainComplex::new(0, vec![1, 1], ds).unwrap();
        let h = c.integer_homology();
        assert_eq!(h[&0].rank, 0);
        assert_eq!(h[&0].torsion, vec![BigInt::from(2)]);
        assert_eq!(c.homology_dims(2).unwrap()[&0], 1);
        assert_eq!(c.homology_dims(0).unwrap()[&0], 0);
        assert!(matches!(c.homology_dims(4), Err(Error::FieldChar(4))));
    }
}

use num_rational::BigRational;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::QMatrix;

/// A square rational matrix that is expected to be nilpotent.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentOperator {
    matrix: QMatrix,
}

impl NilpotentOperator {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Shape(format!(
                "operator must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(NilpotentOperator { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        NilpotentOperator {
            matrix: Matrix::zeros(dim, dim),
        }
    }

    /// Direct sum of Jordan blocks with eigenvalue 0 of the given sizes.
    pub fn jordan(block_sizes: &[usize]) -> Self {
        let dim = block_sizes.iter().sum();
        let mut m = QMatrix::zeros(dim, dim);
        let mut off = 0;
        for &s in block_sizes {
            for i in 1..s {
                m.set(off + i - 1, off + i, BigRational::from_integer(1.into()));
            }
            off += s;
        }
        NilpotentOperator { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    /// Conjugate `p * N * p^{-1}`; `p` must be invertible.
    pub fn conjugate(&self, p: &QMatrix) -> Result<Self> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Shape("conjugating matrix is singular".into()))?;
        Ok(NilpotentOperator {
            matrix: &(p * &self.matrix) * &inv,
        })
    }
}

/// Smallest `k >= 1` with `N^k = 0`. The zero operator has index 1.
pub fn nilpotency_index(n: &NilpotentOperator) -> Result<usize> {
    let dim = n.dim();
    let mut power = n.matrix.clone();
    for k in 1..=dim.max(1) {
        if power.is_zero() {
            return Ok(k);
        }
        power = &power * &n.matrix;
    }
    Err(Error::NotNilpotent(dim))
}

/// The operator `N∧1 + 1∧N` on the exterior square, in the basis
/// `e_i∧e_j` (`i < j`) ordered lexicographically.
pub fn wedge_square(n: &NilpotentOperator) -> NilpotentOperator {
    let dim = n.dim();
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|i| (i + 1..dim).map(move |j| (i, j)))
        .collect();
    let index = |a: usize, b: usize| -> Option<(usize, bool)> {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Less => pairs.iter().position(|&p| p == (a, b)).map(|i| (i, false)),
            Greater => pairs.iter().position(|&p| p == (b, a)).map(|i| (i, true)),
            Equal => None,
        }
    };
    let mut w = QMatrix::zeros(pairs.len(), pairs.len());
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..dim {
            // N e_i ∧ e_j
            let a = n.matrix.get(k, i);
            if !num_traits::Zero::is_zero(a) {
                if let Some((row, neg)) = index(k, j) {
                    w.add_to(row, col, if neg { -a.clone() } else { a.clone() });
                }
            }
            // e_i ∧ N e_j
            let b = n.matrix.get(k, j);
            if !num_traits::Zero::is_zero(b) {
                if let Some((row, neg)) = index(i, k) {
                    w.add_to(row, col, if neg { -b.clone() } else { b.clone() });
                }
            }
        }
    }
    NilpotentOperator { matrix: w }
}

use super::matrix::Matrix;
use super::scalar::EuclideanRing;

/// Smith normal form `U * m * V = D`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: EuclideanRing> SmithForm<T> {
    /// Nonzero diagonal entries of `D`, in order.
    pub fn invariant_factors(&self) -> Vec<T> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

/// Smith normal form over a Euclidean ring.
///
/// Pivots are chosen by smallest absolute value, then lowest row index,
/// then lowest column index, so the output is deterministic. Diagonal
/// entries are nonnegative and each divides the next.
pub fn smith_normal_form<T: EuclideanRing>(m: &Matrix<T>) -> SmithForm<T> {
    let (d, u, v) = reduce(m, true);
    SmithForm {
        u: u.expect("tracked"),
        d,
        v: v.expect("tracked"),
    }
}

/// Invariant factors only; skips the transform bookkeeping.
pub fn invariant_factors<T: EuclideanRing>(m: &Matrix<T>) -> Vec<T> {
    let (d, _, _) = reduce(m, false);
    let n = d.rows().min(d.cols());
    (0..n)
        .map(|i| d.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect()
}

type Reduced<T> = (Matrix<T>, Option<Matrix<T>>, Option<Matrix<T>>);

fn reduce<T: EuclideanRing>(m: &Matrix<T>, track: bool) -> Reduced<T> {
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut u = track.then(|| Matrix::identity(rows));
    let mut v = track.then(|| Matrix::identity(cols));

    let n = rows.min(cols);
    for t in 0..n {
        loop {
            let Some((pr, pc)) = smallest_pivot(&d, t) else {
                return finish(d, u, v);
            };
            d.swap_rows(t, pr);
            if let Some(u) = u.as_mut() {
                u.swap_rows(t, pr);
            }
            d.swap_cols(t, pc);
            if let Some(v) = v.as_mut() {
                v.swap_cols(t, pc);
            }

            let pivot = d.get(t, t).clone();
            let mut dirty = false;
            for r in t + 1..rows {
                let a = d.get(r, t).clone();
                if a.is_zero() {
                    continue;
                }
                let q = a.div_floor(&pivot);
                d.add_row_multiple(r, t, &-q.clone());
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(r, t, &-q);
                }
                dirty |= !d.get(r, t).is_zero();
            }
            for c in t + 1..cols {
                let a = d.get(t, c).clone();
                if a.is_zero() {
                    continue;
                }
                let q = a.div_floor(&pivot);
                d.add_col_multiple(c, t, &-q.clone());
                if let Some(v) = v.as_mut() {
                    v.add_col_multiple(c, t, &-q);
                }
                dirty |= !d.get(t, c).is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility on the rest.
            let bad = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !d.get(r, c).is_multiple_of(&pivot));
            match bad {
                Some((r, _)) => {
                    d.add_row_multiple(t, r, &T::one());
                    if let Some(u) = u.as_mut() {
                        u.add_row_multiple(t, r, &T::one());
                    }
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
    }
    finish(d, u, v)
}

fn finish<T: EuclideanRing>(
    mut d: Matrix<T>,
    mut u: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
) -> Reduced<T> {
    let n = d.rows().min(d.cols());
    for t in 0..n {
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
    }
    (d, u, v)
}

fn smallest_pivot<T: EuclideanRing>(d: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(T, usize, usize)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let x = d.get(r, c);
            if x.is_zero() {
                continue;
            }
            let a = x.norm();
            // strict comparison keeps the lowest row, then lowest column
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

//! Δ-complexes of dimension at most 3.
//!
//! An `n`-cell stores the ordered list of its `n + 1` faces; face `i` is
//! the face opposite vertex `i`. Unlike abstract simplicial complexes,
//! several cells may share a vertex set, which is what dual complexes of
//! semistable fibres need (two components meeting along several curves).

mod link;
mod manifold;
mod surface;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{AbelianGroup, ChainComplex};
use crate::IntMatrix;

pub use link::is_circle;
pub use manifold::{check_closed_3_manifold, is_homology_3_sphere, HomologySphereReport, ManifoldVerdict};
pub use surface::{classify_surface, SurfaceClass};

pub const MAX_DIM: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaComplex {
    /// `cells[n][k]` lists the faces of the `k`-th `n`-cell; empty for vertices.
    cells: Vec<Vec<Vec<usize>>>,
}

impl DeltaComplex {
    /// Validates face arities, ranges and the simplicial identities.
    /// Trailing empty dimensions are dropped.
    pub fn new(mut cells: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        while cells.last().is_some_and(|c| c.is_empty()) {
            cells.pop();
        }
        if cells.len() > MAX_DIM + 1 {
            return Err(Error::Structure(format!(
                "cells of dimension {} exceed the maximum {MAX_DIM}",
                cells.len() - 1
            )));
        }
        for (n, level) in cells.iter().enumerate() {
            for (k, faces) in level.iter().enumerate() {
                let arity = if n == 0 { 0 } else { n + 1 };
                if faces.len() != arity {
                    return Err(Error::Structure(format!(
                        "{n}-cell {k} has {} faces, expected {arity}",
                        faces.len()
                    )));
                }
                if n > 0 {
                    if let Some(&f) = faces.iter().find(|&&f| f >= cells[n - 1].len()) {
                        return Err(Error::Structure(format!(
                            "{n}-cell {k} refers to missing {}-cell {f}",
                            n - 1
                        )));
                    }
                }
            }
        }
        let g = DeltaComplex { cells };
        g.check_identities()?;
        Ok(g)
    }

    /// Builds the complex generated by the given simplices. Vertex labels
    /// are arbitrary; each simplex is sorted, and its faces are generated.
    pub fn from_simplices(simplices: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); MAX_DIM + 1];
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            if s.is_empty() || s.len() > MAX_DIM + 1 {
                return Err(Error::Structure(format!("bad simplex {s:?}")));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Structure(format!("repeated vertex in {s:?}")));
            }
            let mut stack = vec![s];
            while let Some(t) = stack.pop() {
                let n = t.len() - 1;
                if n > 0 {
                    for i in 0..=n {
                        let mut f = t.clone();
                        f.remove(i);
                        stack.push(f);
                    }
                }
                by_dim[n].insert(t);
            }
        }
        let index: Vec<BTreeMap<Vec<usize>, usize>> = by_dim
            .iter()
            .map(|set| set.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let cells = by_dim
            .iter()
            .enumerate()
            .map(|(n, set)| {
                set.iter()
                    .map(|s| {
                        if n == 0 {
                            return Vec::new();
                        }
                        (0..=n)
                            .map(|i| {
                                let mut f = s.clone();
                                f.remove(i);
                                index[n - 1][&f]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        DeltaComplex::new(cells)
    }

    fn check_identities(&self) -> Result<()> {
        for n in 2..self.cells.len() {
            for (k, faces) in self.cells[n].iter().enumerate() {
                for j in 0..=n {
                    for i in 0..j {
                        let a = self.cells[n - 1][faces[j]][i];
                        let b = self.cells[n - 1][faces[i]][j - 1];
                        if a != b {
                            return Err(Error::Structure(format!(
                                "{n}-cell {k} violates the face identity for (i, j) = ({i}, {j})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn count(&self, n: usize) -> usize {
        self.cells.get(n).map_or(0, |c| c.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    pub fn faces(&self, n: usize, k: usize) -> &[usize] {
        &self.cells[n][k]
    }

    pub fn cells(&self) -> &[Vec<Vec<usize>>] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Vertex `i` of the `n`-cell `k`.
    pub fn vertex(&self, n: usize, k: usize, i: usize) -> usize {
        match n {
            0 => k,
            _ if i < n => self.vertex(n - 1, self.cells[n][k][n], i),
            _ => self.vertex(n - 1, self.cells[n][k][0], i - 1),
        }
    }

    pub fn vertices_of(&self, n: usize, k: usize) -> Vec<usize> {
        (0..=n).map(|i| self.vertex(n, k, i)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }

    /// `∂_n = Σ (-1)^i ∂_i` as a `count(n-1) x count(n)` integer matrix.
    pub fn boundary_matrix(&self, n: usize) -> IntMatrix {
        if n == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        let mut m = IntMatrix::zeros(self.count(n - 1), self.count(n));
        for (k, faces) in self.cells[n].iter().enumerate() {
            for (i, &f) in faces.iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.add_to(f, k, BigInt::from(sign));
            }
        }
        m
    }

    pub fn chain_complex(&self) -> ChainComplex<BigInt> {
        let dims = self.counts();
        let ds: BTreeMap<i32, IntMatrix> = (1..self.cells.len())
            .map(|n| (n as i32, self.boundary_matrix(n)))
            .collect();
        ChainComplex::new(0, dims, ds).expect("boundary of a valid Δ-complex squares to zero")
    }

    /// Betti numbers `b_0..b_dim` over `Q` or `F_p`.
    pub fn homology(&self, field_char: u64) -> Result<Vec<usize>> {
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let h = self.chain_complex().homology_dims(field_char)?;
        Ok(h.into_values().collect())
    }

    pub fn integer_homology(&self) -> Vec<AbelianGroup> {
        if self.is_empty() {
            return Vec::new();
        }
        self.chain_complex().integer_homology().into_values().collect()
    }

    /// Connected components, as lists of vertices.
    pub fn vertex_components(&self) -> Vec<Vec<usize>> {
        let n = self.count(0);
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for faces in self.cells.get(1).into_iter().flatten() {
            let (a, b) = (find(&mut parent, faces[0]), find(&mut parent, faces[1]));
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_components().len() == 1
    }

    /// Number of `(n+1)`-cells having the `n`-cell `k` as a face, with
    /// multiplicity.
    pub fn coface_count(&self, n: usize, k: usize) -> usize {
        self.cells
            .get(n + 1)
            .map_or(0, |up| up.iter().flatten().filter(|&&f| f == k).count())
    }

    /// The link of the `n`-cell `k`.
    pub fn link(&self, n: usize, k: usize) -> DeltaComplex {
        link::link(self, n, k)
    }

    /// Renumbers cells: the old cell `k` in dimension `n` becomes `perms[n][k]`.
    pub fn relabeled(&self, perms: &[Vec<usize>]) -> Result<Self> {
        let mut cells: Vec<Vec<Vec<usize>>> =
            self.cells.iter().map(|c| vec![Vec::new(); c.len()]).collect();
        for (n, level) in self.cells.iter().enumerate() {
            let p = perms
                .get(n)
                .filter(|p| p.len() == level.len())
                .ok_or_else(|| Error::Shape(format!("permutation for dimension {n}")))?;
            for (k, faces) in level.iter().enumerate() {
                cells[n][p[k]] = faces.iter().map(|&f| perms[n - 1][f]).collect();
            }
        }
        DeltaComplex::new(cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tetrahedron_boundary() -> DeltaComplex {
        DeltaComplex::from_simplices(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
            .unwrap()
    }

    #[test]
    fn tetrahedron_counts() {
        let g = tetrahedron_boundary();
        assert_eq!(g.counts(), vec![4, 6, 4]);
        assert_eq!(g.euler_characteristic(), 2);
        assert_eq!(g.homology(0).unwrap(), vec![1, 0, 1]);
        assert!(g.is_connected());
    }

    #[test]
    fn incidence_rank() {
        let g = tetrahedron_boundary();
        let d1 = g.boundary_matrix(1).to_rational();
        assert_eq!(d1.shape(), (4, 6));
        assert_eq!(crate::exactla::rank(&d1), 3);
    }

    #[test]
    fn vertices_of_cells() {
        let g = tetrahedron_boundary();
        for k in 0..4 {
            let vs = g.vertices_of(2, k);
            assert!(vs.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn rejects_bad_identity() {
        // Two vertices, two edges; a triangle whose faces do not close up.
        let cells = vec![
            vec![vec![], vec![]],
            vec![vec![1, 0], vec![1, 0], vec![0, 0]],
            vec![vec![0, 2, 1]],
        ];
        assert!(DeltaComplex::new(cells).is_err());
        assert!(DeltaComplex::new(vec![vec![vec![]], vec![vec![0, 3]]]).is_err());
    }

    #[test]
    fn multi_edges_are_allowed() {
        // Two vertices joined by two edges: a circle.
        let g = DeltaComplex::new(vec![vec![vec![], vec![]], vec![vec![1, 0], vec![1, 0]]]).unwrap();
        assert_eq!(g.homology(0).unwrap(), vec![1, 1]);
        assert_eq!(g.euler_characteristic(), 0);
    }

    #[test]
    fn disconnected_components() {
        let g = DeltaComplex::from_simplices(&[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(g.vertex_components(), vec![vec![0, 1], vec![2, 3]]);
    }
}

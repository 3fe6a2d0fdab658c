use std::collections::BTreeMap;

use super::DeltaComplex;

/// The face of the `m`-cell `sigma` spanned by the vertex positions in
/// `keep` (increasing). Positions are removed from the top down so the
/// lower ones keep their meaning.
pub(super) fn sub_face(g: &DeltaComplex, m: usize, sigma: usize, keep: &[usize]) -> usize {
    let mut cell = sigma;
    let mut dim = m;
    for p in (0..=m).rev() {
        if keep.binary_search(&p).is_err() {
            cell = g.cells[dim][cell][p];
            dim -= 1;
        }
    }
    cell
}

fn subsets(m: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for p in start..=m {
            cur.push(p);
            go(p + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, size, &mut Vec::new(), &mut out);
    out
}

/// Link of the `k`-cell `tau` in `g`.
///
/// A cell of the link is a pair `(sigma, S)` where `sigma` is an
/// `m`-cell with `m > k` and `S` is a set of `k + 1` vertex positions of
/// `sigma` spanning `tau`. Its vertices are the complementary positions,
/// so it has dimension `m - k - 1`.
pub(super) fn link(g: &DeltaComplex, k: usize, tau: usize) -> DeltaComplex {
    let top = g.cells.len();
    let mut index: Vec<BTreeMap<(usize, Vec<usize>), usize>> = Vec::new();
    let mut cells: Vec<Vec<Vec<usize>>> = Vec::new();
    for m in k + 1..top {
        let d = m - k - 1;
        let mut idx = BTreeMap::new();
        let mut level = Vec::new();
        for sigma in 0..g.cells[m].len() {
            for s in subsets(m, k + 1) {
                if sub_face(g, m, sigma, &s) != tau {
                    continue;
                }
                let faces = if d == 0 {
                    Vec::new()
                } else {
                    let below = &index[d - 1];
                    (0..=m)
                        .filter(|c| s.binary_search(c).is_err())
                        .map(|c| {
                            let f = g.cells[m][sigma][c];
                            let s2: Vec<usize> =
                                s.iter().map(|&p| if p > c { p - 1 } else { p }).collect();
                            below[&(f, s2)]
                        })
                        .collect()
                };
                idx.insert((sigma, s), level.len());
                level.push(faces);
            }
        }
        index.push(idx);
        cells.push(level);
    }
    DeltaComplex::new(cells).expect("link of a valid Δ-complex is valid")
}

/// A connected 1-complex in which every vertex meets exactly two edge
/// ends (a loop contributes two).
pub fn is_circle(g: &DeltaComplex) -> bool {
    if g.dim() != Some(1) {
        return false;
    }
    let mut degree = vec![0usize; g.count(0)];
    for faces in &g.cells[1] {
        for &v in faces {
            degree[v] += 1;
        }
    }
    degree.iter().all(|&d| d == 2) && g.is_connected()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_links_of_tetrahedron_are_triangles() {
        let g = DeltaComplex::from_simplices(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
            .unwrap();
        for v in 0..4 {
            let l = g.link(0, v);
            assert_eq!(l.counts(), vec![3, 3]);
            assert!(is_circle(&l));
        }
        for e in 0..6 {
            assert_eq!(g.link(1, e).counts(), vec![2]);
        }
    }

    #[test]
    fn loop_is_a_circle() {
        let g = DeltaComplex::new(vec![vec![vec![]], vec![vec![0, 0]]]).unwrap();
        assert!(is_circle(&g));
        let path = DeltaComplex::from_simplices(&[vec![0, 1], vec![1, 2]]).unwrap();
        assert!(!is_circle(&path));
    }

    #[test]
    fn one_vertex_torus_links() {
        // Standard 1-vertex, 3-edge, 2-triangle torus.
        // Edges a, b, c (all loops); triangles U = (b, c, a), L = (a, c, b).
        let g = DeltaComplex::new(vec![
            vec![vec![]],
            vec![vec![0, 0], vec![0, 0], vec![0, 0]],
            vec![vec![1, 2, 0], vec![0, 2, 1]],
        ])
        .unwrap();
        let l = g.link(0, 0);
        assert_eq!(l.counts(), vec![6, 6]);
        assert!(is_circle(&l));
    }
}

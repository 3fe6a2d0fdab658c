use serde::Serialize;

use super::link::is_circle;
use super::surface::{classify_surface, SurfaceClass};
use super::DeltaComplex;
use crate::error::{Error, Result};
use crate::exactla::AbelianGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ManifoldVerdict {
    Pass,
    Fail {
        /// `(dimension, index)` of the offending cell, if any.
        cell: Option<(usize, usize)>,
        reason: String,
    },
}

impl ManifoldVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ManifoldVerdict::Pass)
    }
}

pub fn check_closed_3_manifold(g: &DeltaComplex) -> ManifoldVerdict {
    let fail = |cell, reason: String| ManifoldVerdict::Fail { cell, reason };
    if g.dim() != Some(3) {
        return fail(None, format!("dimension {:?}, expected 3", g.dim()));
    }
    for t in 0..g.count(2) {
        let c = g.coface_count(2, t);
        if c != 2 {
            return fail(Some((2, t)), format!("triangle lies in {c} tetrahedra"));
        }
    }
    for e in 0..g.count(1) {
        if !is_circle(&g.link(1, e)) {
            return fail(Some((1, e)), "edge link is not a circle".into());
        }
    }
    for v in 0..g.count(0) {
        let class = classify_surface(&g.link(0, v));
        if class != SurfaceClass::Sphere {
            return fail(Some((0, v)), format!("vertex link is {class}"));
        }
    }
    ManifoldVerdict::Pass
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySphereReport {
    pub is_homology_sphere: bool,
    pub homology: Vec<AbelianGroup>,
    pub h1: AbelianGroup,
    /// Only homology is certified; simple connectivity is not checked.
    pub caveat: String,
}

pub const PI1_CAVEAT: &str = "homology sphere only; fundamental group not checked";

/// Integer homology test for `(Z, 0, 0, Z)`. The manifold check must pass.
pub fn is_homology_3_sphere(g: &DeltaComplex) -> Result<HomologySphereReport> {
    if let ManifoldVerdict::Fail { reason, .. } = check_closed_3_manifold(g) {
        return Err(Error::Precondition(format!("not a closed 3-manifold: {reason}")));
    }
    let homology = g.integer_homology();
    let ok = homology[0].is_z() && homology[1].is_trivial() && homology[2].is_trivial() && homology[3].is_z();
    Ok(HomologySphereReport {
        is_homology_sphere: ok,
        h1: homology[1].clone(),
        homology,
        caveat: PI1_CAVEAT.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex_boundary() -> Vec<Vec<usize>> {
        (0..5).map(|i| (0..5).filter(|&j| j != i).collect()).collect()
    }

    #[test]
    fn four_simplex_boundary() {
        let g = DeltaComplex::from_simplices(&simplex_boundary()).unwrap();
        assert_eq!(g.counts(), vec![5, 10, 10, 5]);
        assert_eq!(g.euler_characteristic(), 0);
        assert!(check_closed_3_manifold(&g).passed());
        let r = is_homology_3_sphere(&g).unwrap();
        assert!(r.is_homology_sphere);
        assert!(r.h1.is_trivial());
    }

    #[test]
    fn missing_tetrahedron_fails() {
        let mut s = simplex_boundary();
        s.pop();
        let g = DeltaComplex::from_simplices(&s).unwrap();
        match check_closed_3_manifold(&g) {
            ManifoldVerdict::Fail { cell: Some((2, _)), .. } => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(is_homology_3_sphere(&g), Err(Error::Precondition(_))));
    }

    #[test]
    fn wedge_at_vertex_fails() {
        let mut s = simplex_boundary();
        s.extend((0..5).map(|i| {
            (0..5).filter(|&j| j != i).map(|j| if j == 0 { 0 } else { j + 4 }).collect()
        }));
        let g = DeltaComplex::from_simplices(&s).unwrap();
        match check_closed_3_manifold(&g) {
            ManifoldVerdict::Fail { cell: Some((0, 0)), .. } => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}

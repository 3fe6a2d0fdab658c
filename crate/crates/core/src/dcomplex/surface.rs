use serde::{Deserialize, Serialize};

use super::link::is_circle;
use super::DeltaComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfaceClass {
    Sphere,
    RealProjectivePlane,
    Torus,
    KleinBottle,
    OrientableGenus(u64),
    NonorientableGenus(u64),
    NotAClosedSurface(String),
}

impl SurfaceClass {
    pub fn is_closed_surface(&self) -> bool {
        !matches!(self, SurfaceClass::NotAClosedSurface(_))
    }

    pub fn is_orientable(&self) -> Option<bool> {
        match self {
            SurfaceClass::Sphere | SurfaceClass::Torus | SurfaceClass::OrientableGenus(_) => Some(true),
            SurfaceClass::NotAClosedSurface(_) => None,
            _ => Some(false),
        }
    }

    fn from_invariants(orientable: bool, chi: i64) -> SurfaceClass {
        if orientable {
            match (2 - chi) / 2 {
                0 => SurfaceClass::Sphere,
                1 => SurfaceClass::Torus,
                g => SurfaceClass::OrientableGenus(g as u64),
            }
        } else {
            match 2 - chi {
                1 => SurfaceClass::RealProjectivePlane,
                2 => SurfaceClass::KleinBottle,
                k => SurfaceClass::NonorientableGenus(k as u64),
            }
        }
    }
}

impl std::fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SurfaceClass::OrientableGenus(g) => write!(f, "OrientableGenus({g})"),
            SurfaceClass::NonorientableGenus(k) => write!(f, "NonorientableGenus({k})"),
            SurfaceClass::NotAClosedSurface(why) => write!(f, "NotAClosedSurface({why})"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Checks the closed-surface conditions, then classifies by
/// orientability and Euler characteristic.
pub fn classify_surface(g: &DeltaComplex) -> SurfaceClass {
    let fail = |s: String| SurfaceClass::NotAClosedSurface(s);
    match g.dim() {
        Some(2) => {}
        Some(d) => return fail(format!("dimension {d}, expected 2")),
        None => return fail("empty complex".into()),
    }
    for e in 0..g.count(1) {
        let c = g.coface_count(1, e);
        if c != 2 {
            return fail(format!("edge {e} lies in {c} triangles"));
        }
    }
    for v in 0..g.count(0) {
        if !is_circle(&g.link(0, v)) {
            return fail(format!("link of vertex {v} is not a circle"));
        }
    }
    let comps = g.vertex_components().len();
    if comps != 1 {
        return fail(format!("{comps} connected components"));
    }
    // The top boundary has no torsion cokernel issues: H_2(Z) is free,
    // so its rank is read off over Q.
    let d2 = g.boundary_matrix(2).to_rational();
    let orientable = g.count(2) - crate::exactla::rank(&d2) == 1;
    SurfaceClass::from_invariants(orientable, g.euler_characteristic())
}

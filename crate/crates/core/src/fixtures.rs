//! Generators for standard configurations and covers between them.

use std::collections::{BTreeMap, BTreeSet};

use crate::covers::{ComponentImage, CoverMap, FibreBehavior};
use crate::cy3::{self, Configuration3};
use crate::error::{Error, Result};
use crate::sncl::{
    Component, ComponentKind, ComponentTag, Configuration, CurveRole, DoubleCurve, Incidence, SurfaceType, TriplePoint,
};
use crate::wss::{q, H1Kind, TransferTemplate};
use crate::QMatrix;

/// A named configuration with its transfer templates and, for classes
/// whose monodromy is read off a cover, the cover.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub config: Configuration,
    pub transfers: TransferTemplate,
    pub cover: Option<CoverMap>,
}

/// Surface fixtures; those marked with `N` take a length.
pub const NAMES: &[&str] = &[
    "k3_type1",
    "k3_chain",
    "k3_tetrahedron",
    "k3_icosahedron",
    "enriques_chain",
    "enriques_rp2",
    "abelian_cycle",
    "abelian_csaszar",
    "abelian_grid",
    "bielliptic_chain",
    "bielliptic_cycle",
    "bielliptic_klein",
    "abelian_chain_bad",
];

pub const CY3_NAMES: &[&str] = &["cy3_simplex_boundary", "cy3_three_torus"];

fn incidence(component: &str, role: CurveRole) -> Incidence {
    Incidence {
        component: component.into(),
        role,
    }
}

fn rational(b2: usize) -> ComponentKind {
    ComponentKind::with_b2(ComponentTag::Rational, b2).expect("rational b2 at least 1")
}

fn elliptic_ruled() -> ComponentKind {
    ComponentKind::with_b2(ComponentTag::EllipticRuled, 2).expect("ruled b2 is 2")
}

/// A chain `Y0 - Y1 - ... - Y(n-1)` of elliptic double curves `C{i}`.
/// Rational ends carry their curve as an anticanonical elliptic curve;
/// elliptic ruled ends carry a 2-ruling; inner components are elliptic
/// ruled with two rulings.
fn elliptic_chain(class: SurfaceType, n: usize, rational_ends: [bool; 2]) -> Result<Configuration> {
    if n < 2 {
        return Err(Error::Invalid(format!("a chain needs at least 2 components, got {n}")));
    }
    let is_rational = |i: usize| (i == 0 && rational_ends[0]) || (i == n - 1 && rational_ends[1]);
    let components = (0..n)
        .map(|i| {
            let kind = if is_rational(i) { rational(10) } else { elliptic_ruled() };
            Component::new(format!("Y{i}"), kind)
        })
        .collect();
    let role = |i: usize| {
        if is_rational(i) {
            CurveRole::EllipticOnRational
        } else if i == 0 || i == n - 1 {
            CurveRole::TwoRuling
        } else {
            CurveRole::Ruling
        }
    };
    let curves = (0..n - 1)
        .map(|i| DoubleCurve {
            id: format!("C{i}"),
            genus: 1,
            left: incidence(&format!("Y{i}"), role(i)),
            right: incidence(&format!("Y{}", i + 1), role(i + 1)),
            triple_point_count: 0,
        })
        .collect();
    Configuration::new(class, components, curves, vec![])
}

/// A cycle of `n` elliptic ruled components; `C{i}` joins `Y{i}` and
/// `Y{i+1 mod n}` along rulings.
fn elliptic_cycle(class: SurfaceType, n: usize) -> Result<Configuration> {
    if n < 2 {
        return Err(Error::Invalid(format!("a cycle needs at least 2 components, got {n}")));
    }
    let components = (0..n).map(|i| Component::new(format!("Y{i}"), elliptic_ruled())).collect();
    let curves = (0..n)
        .map(|i| DoubleCurve {
            id: format!("C{i}"),
            genus: 1,
            left: incidence(&format!("Y{i}"), CurveRole::Ruling),
            right: incidence(&format!("Y{}", (i + 1) % n), CurveRole::Ruling),
            triple_point_count: 0,
        })
        .collect();
    Configuration::new(class, components, curves, vec![])
}

pub fn type_one(class: SurfaceType) -> Configuration {
    Configuration::new(class, vec![Component::new("X", ComponentKind::new(class.tag()))], vec![], vec![])
        .expect("single component")
}

pub fn k3_chain(n: usize) -> Result<Configuration> {
    elliptic_chain(SurfaceType::K3, n, [true, true])
}

pub fn enriques_chain(n: usize) -> Result<Configuration> {
    elliptic_chain(SurfaceType::Enriques, n, [true, false])
}

pub fn bielliptic_chain(n: usize) -> Result<Configuration> {
    elliptic_chain(SurfaceType::Bielliptic, n, [false, false])
}

/// Elliptic ruled ends with 2-rulings declared as an abelian degeneration;
/// the shape belongs to the bielliptic class.
pub fn abelian_chain_bad(n: usize) -> Result<Configuration> {
    elliptic_chain(SurfaceType::Abelian, n, [false, false])
}

pub fn abelian_cycle(n: usize) -> Result<Configuration> {
    elliptic_cycle(SurfaceType::Abelian, n)
}

/// A bielliptic cycle: one flag glues with `-1` on `H^1`, which kills the
/// invariant part of the monodromy around the cycle.
pub fn bielliptic_cycle(n: usize) -> Result<(Configuration, TransferTemplate)> {
    let c = elliptic_cycle(SurfaceType::Bielliptic, n)?;
    let minus = |k: usize| QMatrix::identity(k).scale(&q(-1));
    let curve = format!("C{}", n - 1);
    let t = TransferTemplate::new()
        .with_override(H1Kind::Betti, "Y0", &curve, minus(2))
        .with_override(H1Kind::Coherent, "Y0", &curve, minus(1));
    Ok((c, t))
}

fn sorted3(t: [usize; 3]) -> [usize; 3] {
    let mut t = t;
    t.sort_unstable();
    t
}

fn sorted2(a: usize, b: usize) -> [usize; 2] {
    [a.min(b), a.max(b)]
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_")
}

/// Quotient data of a triangulated surface by a free involution `inv`
/// (or the surface itself when `inv` is `None`).
struct Orbits {
    vertex: BTreeMap<usize, usize>,
    edge: BTreeMap<[usize; 2], [usize; 2]>,
    triangle: BTreeMap<[usize; 3], [usize; 3]>,
    degree: BTreeMap<usize, usize>,
}

fn orbits(triangles: &[[usize; 3]], inv: Option<&dyn Fn(usize) -> usize>) -> Result<Orbits> {
    let tri: BTreeSet<[usize; 3]> = triangles.iter().map(|&t| sorted3(t)).collect();
    if tri.len() != triangles.len() || tri.iter().any(|t| t[0] == t[1] || t[1] == t[2]) {
        return Err(Error::Invalid("triangles must be distinct with distinct vertices".into()));
    }
    let mut edges = BTreeSet::new();
    for t in &tri {
        edges.insert([t[0], t[1]]);
        edges.insert([t[0], t[2]]);
        edges.insert([t[1], t[2]]);
    }
    let verts: BTreeSet<usize> = tri.iter().flatten().copied().collect();
    let f = |v: usize| inv.map_or(v, |g| g(v));
    let mut out = Orbits {
        vertex: BTreeMap::new(),
        edge: BTreeMap::new(),
        triangle: BTreeMap::new(),
        degree: BTreeMap::new(),
    };
    for &v in &verts {
        let w = f(v);
        if inv.is_some() && (w == v || f(w) != v || !verts.contains(&w)) {
            return Err(Error::Invalid(format!("not a free involution at vertex {v}")));
        }
        out.vertex.insert(v, v.min(w));
    }
    for &e in &edges {
        let img = sorted2(f(e[0]), f(e[1]));
        if !edges.contains(&img) {
            return Err(Error::Invalid(format!("edge {e:?} is not mapped to an edge")));
        }
        if out.vertex[&e[0]] == out.vertex[&e[1]] {
            return Err(Error::Invalid(format!("edge {e:?} joins a vertex to its image")));
        }
        out.edge.insert(e, e.min(img));
        *out.degree.entry(e[0]).or_default() += 1;
        *out.degree.entry(e[1]).or_default() += 1;
    }
    for &t in &tri {
        let img = sorted3([f(t[0]), f(t[1]), f(t[2])]);
        if !tri.contains(&img) {
            return Err(Error::Invalid(format!("triangle {t:?} is not mapped to a triangle")));
        }
        out.triangle.insert(t, t.min(img));
    }
    Ok(out)
}

/// Configuration of rational components `Y{v}` meeting along rational
/// curves, one per edge orbit, with one triple point per triangle orbit.
/// A component of degree `d` in the dual complex gets `b_2 = 10 - d`.
fn type_three_from_orbits(class: SurfaceType, o: &Orbits) -> Result<Configuration> {
    let comp_name = |v: usize| format!("Y{}", o.vertex[&v]);
    let curve_name = |e: [usize; 2]| format!("C{}", join(&o.edge[&e]));
    let reps: BTreeSet<usize> = o.vertex.values().copied().collect();
    let components = reps
        .iter()
        .map(|&v| {
            let d = o.degree[&v];
            if d >= 10 {
                return Err(Error::Invalid(format!("vertex {v} has degree {d}, too large for b2 = 10 - d")));
            }
            Ok(Component::new(format!("Y{v}"), rational(10 - d)))
        })
        .collect::<Result<Vec<_>>>()?;
    let edge_reps: BTreeSet<[usize; 2]> = o.edge.values().copied().collect();
    let curves = edge_reps
        .iter()
        .map(|&e| DoubleCurve {
            id: curve_name(e),
            genus: 0,
            left: incidence(&comp_name(e[0]), CurveRole::CycleMember),
            right: incidence(&comp_name(e[1]), CurveRole::CycleMember),
            triple_point_count: 2,
        })
        .collect();
    let tri_reps: BTreeSet<[usize; 3]> = o.triangle.values().copied().collect();
    let points = tri_reps
        .iter()
        .map(|&[a, b, c]| TriplePoint {
            id: format!("P{}", join(&[a, b, c])),
            curves: [curve_name([b, c]), curve_name([a, c]), curve_name([a, b])],
            components: [comp_name(a), comp_name(b), comp_name(c)],
        })
        .collect();
    Configuration::new(class, components, curves, points)
}

/// Type III configuration whose dual complex is the given triangulated
/// surface.
pub fn type_three(class: SurfaceType, triangles: &[[usize; 3]]) -> Result<Configuration> {
    type_three_from_orbits(class, &orbits(triangles, None)?)
}

/// The degree-2 cover of Type III configurations induced by a free
/// involution of a triangulated surface.
pub fn type_three_quotient_cover(
    total_class: SurfaceType,
    base_class: SurfaceType,
    triangles: &[[usize; 3]],
    inv: &dyn Fn(usize) -> usize,
) -> Result<CoverMap> {
    let total = type_three(total_class, triangles)?;
    let o = orbits(triangles, Some(inv))?;
    let base = type_three_from_orbits(base_class, &o)?;
    let component_map = o
        .vertex
        .iter()
        .map(|(&v, &r)| {
            (
                format!("Y{v}"),
                ComponentImage {
                    base: format!("Y{r}"),
                    behavior: FibreBehavior::SplitCopies,
                },
            )
        })
        .collect();
    let curve_map = o
        .edge
        .iter()
        .map(|(e, r)| (format!("C{}", join(e)), format!("C{}", join(r))))
        .collect();
    Ok(CoverMap {
        degree: 2,
        total,
        total_transfers: TransferTemplate::new(),
        base,
        component_map,
        curve_map,
    })
}

pub fn tetrahedron_triangles() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
}

/// The 7-vertex torus.
pub fn csaszar_triangles() -> Vec<[usize; 3]> {
    (0..7)
        .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
        .collect()
}

/// Icosahedron on top `0`, upper ring `1..=5`, lower ring `6..=10`,
/// bottom `11`.
pub fn icosahedron_triangles() -> Vec<[usize; 3]> {
    let u = |k: usize| 1 + k % 5;
    let l = |k: usize| 6 + k % 5;
    (0..5)
        .flat_map(|k| {
            [
                [0, u(k), u(k + 1)],
                [u(k), u(k + 1), l(k)],
                [l(k), l(k + 1), u(k + 1)],
                [11, l(k), l(k + 1)],
            ]
        })
        .collect()
}

/// The antipodal map of [`icosahedron_triangles`].
pub fn icosahedron_antipode(v: usize) -> usize {
    match v {
        0 => 11,
        11 => 0,
        1..=5 => 6 + (v - 1 + 2) % 5,
        _ => 1 + (v - 6 + 3) % 5,
    }
}

/// A 4 x 4 grid torus, vertex `(i, j)` numbered `4i + j`. Squares in even
/// rows are cut along the main diagonal, in odd rows along the other.
pub fn grid_torus_triangles() -> Vec<[usize; 3]> {
    let v = |i: usize, j: usize| 4 * (i % 4) + j % 4;
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i % 2 == 0 {
                out.push([v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
                out.push([v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
            } else {
                out.push([v(i, j), v(i + 1, j), v(i, j + 1)]);
                out.push([v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)]);
            }
        }
    }
    out
}

/// `(i, j) -> (-i, j + 2)`, free and orientation reversing.
pub fn grid_involution(v: usize) -> usize {
    let (i, j) = (v / 4, v % 4);
    4 * ((4 - i) % 4) + (j + 2) % 4
}

pub fn k3_tetrahedron() -> Configuration {
    type_three(SurfaceType::K3, &tetrahedron_triangles()).expect("tetrahedron")
}

pub fn k3_icosahedron() -> Configuration {
    type_three(SurfaceType::K3, &icosahedron_triangles()).expect("icosahedron")
}

pub fn abelian_csaszar() -> Configuration {
    type_three(SurfaceType::Abelian, &csaszar_triangles()).expect("7-vertex torus")
}

pub fn abelian_grid() -> Configuration {
    type_three(SurfaceType::Abelian, &grid_torus_triangles()).expect("grid torus")
}

/// The icosahedron over the 6-vertex projective plane.
pub fn enriques_rp2_cover() -> CoverMap {
    type_three_quotient_cover(
        SurfaceType::K3,
        SurfaceType::Enriques,
        &icosahedron_triangles(),
        &icosahedron_antipode,
    )
    .expect("antipodal quotient")
}

pub fn enriques_rp2() -> Configuration {
    enriques_rp2_cover().base
}

/// The grid torus over an 8-vertex Klein bottle (a Δ-complex: the quotient
/// has double edges).
pub fn bielliptic_klein_cover() -> CoverMap {
    type_three_quotient_cover(
        SurfaceType::Abelian,
        SurfaceType::Bielliptic,
        &grid_torus_triangles(),
        &grid_involution,
    )
    .expect("grid quotient")
}

pub fn bielliptic_klein() -> Configuration {
    bielliptic_klein_cover().base
}

fn split(base: usize) -> ComponentImage {
    ComponentImage {
        base: format!("Y{base}"),
        behavior: FibreBehavior::SplitCopies,
    }
}

fn irreducible(base: usize) -> ComponentImage {
    ComponentImage {
        base: format!("Y{base}"),
        behavior: FibreBehavior::IrreducibleCover,
    }
}

/// A K3 chain of length `2n - 1` folded onto an Enriques chain of length
/// `n`; the middle component double covers the 2-ruled end.
pub fn enriques_chain_cover(n: usize) -> Result<CoverMap> {
    let base = enriques_chain(n)?;
    let total = k3_chain(2 * n - 1)?;
    let last = 2 * n - 2;
    let component_map = (0..=last)
        .map(|z| {
            let y = z.min(last - z);
            let img = if y == n - 1 { irreducible(y) } else { split(y) };
            (format!("Y{z}"), img)
        })
        .collect();
    let curve_map = (0..last)
        .map(|d| (format!("C{d}"), format!("C{}", d.min(last - 1 - d))))
        .collect();
    Ok(CoverMap {
        degree: 2,
        total,
        total_transfers: TransferTemplate::new(),
        base,
        component_map,
        curve_map,
    })
}

/// An abelian cycle of length `2n - 2` folded onto a bielliptic chain of
/// length `n`; the two ends are double covered.
pub fn bielliptic_chain_cover(n: usize) -> Result<CoverMap> {
    let base = bielliptic_chain(n)?;
    let m = 2 * n - 2;
    let total = abelian_cycle(m)?;
    let component_map = (0..m)
        .map(|z| {
            let y = z.min(m - z);
            let img = if y == 0 || y == n - 1 { irreducible(y) } else { split(y) };
            (format!("Y{z}"), img)
        })
        .collect();
    let curve_map = (0..m)
        .map(|d| (format!("C{d}"), format!("C{}", d.min(m - 1 - d))))
        .collect();
    Ok(CoverMap {
        degree: 2,
        total,
        total_transfers: TransferTemplate::new(),
        base,
        component_map,
        curve_map,
    })
}

/// An abelian cycle of length `2n` wrapping twice around a bielliptic
/// cycle of length `n`.
pub fn bielliptic_cycle_cover(n: usize) -> Result<CoverMap> {
    let (base, _) = bielliptic_cycle(n)?;
    let total = abelian_cycle(2 * n)?;
    Ok(CoverMap {
        degree: 2,
        total,
        total_transfers: TransferTemplate::new(),
        base,
        component_map: (0..2 * n).map(|z| (format!("Y{z}"), split(z % n))).collect(),
        curve_map: (0..2 * n).map(|d| (format!("C{d}"), format!("C{}", d % n))).collect(),
    })
}

/// Looks up a surface fixture; `n` is the length for chains and cycles
/// (default 3).
pub fn fixture(name: &str, n: Option<usize>) -> Result<Fixture> {
    let n = n.unwrap_or(3);
    let plain = |config: Configuration| Fixture {
        name: name.into(),
        config,
        transfers: TransferTemplate::new(),
        cover: None,
    };
    let with_cover = |cover: CoverMap| Fixture {
        name: name.into(),
        config: cover.base.clone(),
        transfers: TransferTemplate::new(),
        cover: Some(cover),
    };
    Ok(match name {
        "k3_type1" => plain(type_one(SurfaceType::K3)),
        "k3_chain" => plain(k3_chain(n)?),
        "k3_tetrahedron" => plain(k3_tetrahedron()),
        "k3_icosahedron" => plain(k3_icosahedron()),
        "enriques_chain" => with_cover(enriques_chain_cover(n)?),
        "enriques_rp2" => with_cover(enriques_rp2_cover()),
        "abelian_cycle" => plain(abelian_cycle(n)?),
        "abelian_csaszar" => plain(abelian_csaszar()),
        "abelian_grid" => plain(abelian_grid()),
        "bielliptic_chain" => with_cover(bielliptic_chain_cover(n)?),
        "bielliptic_cycle" => {
            let (config, transfers) = bielliptic_cycle(n)?;
            Fixture {
                name: name.into(),
                config,
                transfers,
                cover: Some(bielliptic_cycle_cover(n)?),
            }
        }
        "bielliptic_klein" => with_cover(bielliptic_klein_cover()),
        "abelian_chain_bad" => plain(abelian_chain_bad(n)?),
        other => return Err(Error::Invalid(format!("unknown fixture '{other}'"))),
    })
}

/// The boundary of the 4-simplex: five components, any four meeting in a
/// point.
pub fn cy3_simplex_boundary() -> Configuration3 {
    let tets: Vec<[usize; 4]> = (0..5)
        .map(|i| {
            let v: Vec<usize> = (0..5).filter(|&j| j != i).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect();
    cy3::from_tetrahedra(&tets).expect("simplex boundary")
}

/// The Kuhn triangulation of the 3-torus on the `3 x 3 x 3` grid: every
/// cube is cut into six tetrahedra along its main diagonal.
pub fn three_torus_tetrahedra() -> Vec<[usize; 4]> {
    let idx = |p: [usize; 3]| 9 * (p[0] % 3) + 3 * (p[1] % 3) + p[2] % 3;
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for x in 0..27 {
        let base = [x / 9, (x / 3) % 3, x % 3];
        for p in perms {
            let mut cur = base;
            let mut tet = [idx(cur); 4];
            for (step, &axis) in p.iter().enumerate() {
                cur[axis] += 1;
                tet[step + 1] = idx(cur);
            }
            out.push(tet);
        }
    }
    out
}

pub fn cy3_three_torus() -> Configuration3 {
    cy3::from_tetrahedra(&three_torus_tetrahedra()).expect("3-torus")
}

pub fn cy3_fixture(name: &str) -> Result<Configuration3> {
    match name {
        "cy3_simplex_boundary" => Ok(cy3_simplex_boundary()),
        "cy3_three_torus" => Ok(cy3_three_torus()),
        other => Err(Error::Invalid(format!("unknown fixture '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{check_type_transfer, validate_cover};
    use crate::dcomplex::SurfaceClass;
    use crate::sncl::{classify, dual_graph, validate_local, DegenerationType, Shape};

    fn type_of(c: &Configuration) -> DegenerationType {
        classify(c).unwrap_or_else(|r| panic!("{r}")).kind
    }

    #[test]
    fn surface_fixtures_classify() {
        for name in NAMES.iter().filter(|n| **n != "abelian_chain_bad") {
            let f = fixture(name, None).unwrap();
            assert!(validate_local(&f.config).iter().all(|v| v.passed()), "{name}");
            assert!(classify(&f.config).is_ok(), "{name}");
        }
        assert!(classify(&abelian_chain_bad(3).unwrap()).is_err());
    }

    #[test]
    fn dual_complexes() {
        let cases = [
            (k3_icosahedron(), vec![12, 30, 20], SurfaceClass::Sphere),
            (abelian_csaszar(), vec![7, 21, 14], SurfaceClass::Torus),
            (abelian_grid(), vec![16, 48, 32], SurfaceClass::Torus),
            (enriques_rp2(), vec![6, 15, 10], SurfaceClass::RealProjectivePlane),
            (bielliptic_klein(), vec![8, 24, 16], SurfaceClass::KleinBottle),
        ];
        for (c, counts, class) in cases {
            assert_eq!(dual_graph(&c).unwrap().counts(), counts);
            let v = classify(&c).unwrap();
            assert_eq!(v.kind, DegenerationType::III);
            assert_eq!(v.gamma, class);
        }
    }

    #[test]
    fn involutions_are_free_symmetries() {
        for (tris, inv) in [
            (icosahedron_triangles(), &icosahedron_antipode as &dyn Fn(usize) -> usize),
            (grid_torus_triangles(), &grid_involution),
        ] {
            let set: BTreeSet<[usize; 3]> = tris.iter().map(|&t| sorted3(t)).collect();
            for t in &tris {
                assert!(set.contains(&sorted3([inv(t[0]), inv(t[1]), inv(t[2])])));
            }
            assert!(orbits(&tris, Some(inv)).is_ok());
        }
    }

    #[test]
    fn shapes() {
        for n in 2..6 {
            let v = classify(&k3_chain(n).unwrap()).unwrap();
            assert_eq!((v.kind, v.shape), (DegenerationType::II, Shape::Chain));
            let v = classify(&abelian_cycle(n).unwrap()).unwrap();
            assert_eq!((v.kind, v.shape), (DegenerationType::II, Shape::Cycle));
            assert_eq!(type_of(&enriques_chain(n).unwrap()), DegenerationType::II);
            assert_eq!(type_of(&bielliptic_chain(n).unwrap()), DegenerationType::II);
            assert_eq!(type_of(&bielliptic_cycle(n).unwrap().0), DegenerationType::II);
        }
        assert_eq!(type_of(&type_one(SurfaceType::Bielliptic)), DegenerationType::I);
    }

    #[test]
    fn covers_validate_and_preserve_type() {
        let mut covers = vec![enriques_rp2_cover(), bielliptic_klein_cover()];
        for n in 2..5 {
            covers.push(enriques_chain_cover(n).unwrap());
            covers.push(bielliptic_chain_cover(n).unwrap());
            covers.push(bielliptic_cycle_cover(n).unwrap());
        }
        for m in &covers {
            let v = validate_cover(m);
            assert!(v.passed(), "{:?}", v.violations);
            assert!(check_type_transfer(m).equal);
        }
    }

    #[test]
    fn three_torus_counts() {
        let c = cy3_three_torus();
        assert_eq!(c.dual_complex().counts(), vec![27, 189, 324, 162]);
        assert_eq!(c.dual_complex().homology(0).unwrap(), vec![1, 3, 3, 1]);
        let v = cy3::classify_cy4(&c);
        assert!(v.manifold.passed());
        assert!(!v.type_iv);
        assert_eq!(cy3::e2_30(&c).unwrap(), 1);
    }
}

//! Configurations of simple normal crossings surfaces: components, double
//! curves and triple points, with the local anticanonical case analysis and
//! the Type I/II/III classification.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dcomplex::{classify_surface, DeltaComplex, SurfaceClass};
use crate::error::{Error, Result};

/// The class of the generic fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SurfaceType {
    K3,
    Enriques,
    Abelian,
    Bielliptic,
}

impl SurfaceType {
    pub const ALL: [SurfaceType; 4] = [
        SurfaceType::K3,
        SurfaceType::Enriques,
        SurfaceType::Abelian,
        SurfaceType::Bielliptic,
    ];

    /// The closed surface a Type III dual complex must triangulate.
    pub fn type_three_surface(self) -> SurfaceClass {
        match self {
            SurfaceType::K3 => SurfaceClass::Sphere,
            SurfaceType::Enriques => SurfaceClass::RealProjectivePlane,
            SurfaceType::Abelian => SurfaceClass::Torus,
            SurfaceType::Bielliptic => SurfaceClass::KleinBottle,
        }
    }

    pub fn tag(self) -> ComponentTag {
        match self {
            SurfaceType::K3 => ComponentTag::K3,
            SurfaceType::Enriques => ComponentTag::Enriques,
            SurfaceType::Abelian => ComponentTag::Abelian,
            SurfaceType::Bielliptic => ComponentTag::Bielliptic,
        }
    }

    pub fn betti(self) -> [usize; 5] {
        ComponentKind::new(self.tag()).betti
    }

    pub fn coherent(self) -> [usize; 3] {
        ComponentKind::new(self.tag()).coherent
    }

    /// `χ(O)` of a smooth surface of this class.
    pub fn chi(self) -> i64 {
        let h = self.coherent();
        h[0] as i64 - h[1] as i64 + h[2] as i64
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComponentTag {
    K3,
    Enriques,
    Abelian,
    Bielliptic,
    Rational,
    EllipticRuled,
}

impl ComponentTag {
    pub fn surface_type(self) -> Option<SurfaceType> {
        match self {
            ComponentTag::K3 => Some(SurfaceType::K3),
            ComponentTag::Enriques => Some(SurfaceType::Enriques),
            ComponentTag::Abelian => Some(SurfaceType::Abelian),
            ComponentTag::Bielliptic => Some(SurfaceType::Bielliptic),
            _ => None,
        }
    }

    fn min_b2(self) -> usize {
        match self {
            ComponentTag::Rational => 1,
            ComponentTag::EllipticRuled => 2,
            other => ComponentKind::new(other).betti[2],
        }
    }
}

/// Topological and coherent invariants of a component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentKind {
    pub tag: ComponentTag,
    /// `b_0..b_4`.
    pub betti: [usize; 5],
    /// `h^0, h^1, h^2` of the structure sheaf.
    pub coherent: [usize; 3],
    /// Whether `b_2` was supplied rather than defaulted.
    pub b2_declared: bool,
}

impl ComponentKind {
    pub fn new(tag: ComponentTag) -> Self {
        let (betti, coherent) = match tag {
            ComponentTag::Rational => ([1, 0, 1, 0, 1], [1, 0, 0]),
            ComponentTag::EllipticRuled => ([1, 2, 2, 2, 1], [1, 1, 0]),
            ComponentTag::K3 => ([1, 0, 22, 0, 1], [1, 0, 1]),
            ComponentTag::Abelian => ([1, 4, 6, 4, 1], [1, 2, 1]),
            ComponentTag::Enriques => ([1, 0, 10, 0, 1], [1, 0, 0]),
            ComponentTag::Bielliptic => ([1, 2, 2, 2, 1], [1, 1, 0]),
        };
        ComponentKind {
            tag,
            betti,
            coherent,
            b2_declared: false,
        }
    }

    /// A kind with a declared `b_2`; only rational and elliptic ruled
    /// components have a free `b_2`.
    pub fn with_b2(tag: ComponentTag, b2: usize) -> Result<Self> {
        let mut k = ComponentKind::new(tag);
        let free = matches!(tag, ComponentTag::Rational | ComponentTag::EllipticRuled);
        if (!free && b2 != k.betti[2]) || b2 < tag.min_b2() {
            return Err(Error::Invalid(format!("b2 = {b2} is not allowed for {tag:?}")));
        }
        k.betti[2] = b2;
        k.b2_declared = true;
        Ok(k)
    }

    pub fn b1(&self) -> usize {
        self.betti[1]
    }

    pub fn b2(&self) -> usize {
        self.betti[2]
    }

    pub fn chi(&self) -> i64 {
        self.coherent[0] as i64 - self.coherent[1] as i64 + self.coherent[2] as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: String,
    pub kind: ComponentKind,
}

impl Component {
    pub fn new(id: impl Into<String>, kind: ComponentKind) -> Self {
        Component { id: id.into(), kind }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CurveRole {
    Ruling,
    TwoRuling,
    CycleMember,
    EllipticOnRational,
}

/// One side of a double curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub component: String,
    pub role: CurveRole,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCurve {
    pub id: String,
    pub genus: u32,
    pub left: Incidence,
    pub right: Incidence,
    pub triple_point_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriplePoint {
    pub id: String,
    pub curves: [String; 3],
    pub components: [String; 3],
}

/// The combinatorial data of a special fibre `Y = Y_1 ∪ … ∪ Y_N`.
///
/// Components are numbered by their position in `components`; double
/// curves and triple points likewise. A curve is oriented from its lower
/// to its higher component, and a triple point lists its curves in face
/// order: opposite its lowest, middle and highest component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    surface_class: SurfaceType,
    components: Vec<Component>,
    double_curves: Vec<DoubleCurve>,
    triple_points: Vec<TriplePoint>,
    curve_ends: Vec<(usize, usize)>,
    point_components: Vec<[usize; 3]>,
    point_faces: Vec<[usize; 3]>,
}

fn index_of(ids: &BTreeMap<&str, usize>, id: &str, what: &str) -> Result<usize> {
    ids.get(id)
        .copied()
        .ok_or_else(|| Error::Invalid(format!("unknown {what} '{id}'")))
}

fn unique_ids<'a>(ids: impl Iterator<Item = &'a str>, what: &str) -> Result<BTreeMap<&'a str, usize>> {
    let mut map = BTreeMap::new();
    for (i, id) in ids.enumerate() {
        if map.insert(id, i).is_some() {
            return Err(Error::Invalid(format!("duplicate {what} id '{id}'")));
        }
    }
    Ok(map)
}

impl Configuration {
    /// Checks referential and incidence consistency.
    pub fn new(
        surface_class: SurfaceType,
        components: Vec<Component>,
        double_curves: Vec<DoubleCurve>,
        triple_points: Vec<TriplePoint>,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Invalid("no components".into()));
        }
        let comp_ids = unique_ids(components.iter().map(|c| c.id.as_str()), "component")?;
        let curve_ids = unique_ids(double_curves.iter().map(|c| c.id.as_str()), "curve")?;
        unique_ids(triple_points.iter().map(|p| p.id.as_str()), "triple point")?;

        for c in &components {
            let k = &c.kind;
            if k.b2() < k.tag.min_b2() {
                return Err(Error::Invalid(format!("component '{}' has b2 below the minimum", c.id)));
            }
        }

        let mut curve_ends = Vec::with_capacity(double_curves.len());
        for c in &double_curves {
            let a = index_of(&comp_ids, &c.left.component, "component")?;
            let b = index_of(&comp_ids, &c.right.component, "component")?;
            if a == b {
                return Err(Error::Invalid(format!("curve '{}' has both sides on one component", c.id)));
            }
            if c.genus > 1 {
                return Err(Error::Invalid(format!("curve '{}' has genus {}", c.id, c.genus)));
            }
            for side in [&c.left, &c.right] {
                let tag = components[index_of(&comp_ids, &side.component, "component")?].kind.tag;
                let ok = match side.role {
                    CurveRole::Ruling | CurveRole::TwoRuling => {
                        c.genus == 1 && tag == ComponentTag::EllipticRuled
                    }
                    CurveRole::CycleMember => c.genus == 0,
                    CurveRole::EllipticOnRational => c.genus == 1 && tag == ComponentTag::Rational,
                };
                if !ok {
                    return Err(Error::Invalid(format!(
                        "curve '{}' has role {:?} on '{}' ({tag:?}, genus {})",
                        c.id, side.role, side.component, c.genus
                    )));
                }
            }
            curve_ends.push((a.min(b), a.max(b)));
        }

        let mut point_components = Vec::with_capacity(triple_points.len());
        let mut point_faces = Vec::with_capacity(triple_points.len());
        let mut on_curve = vec![0usize; double_curves.len()];
        for p in &triple_points {
            let mut comps = [0usize; 3];
            for (slot, id) in comps.iter_mut().zip(&p.components) {
                *slot = index_of(&comp_ids, id, "component")?;
            }
            comps.sort_unstable();
            if comps[0] == comps[1] || comps[1] == comps[2] {
                return Err(Error::Invalid(format!("triple point '{}' repeats a component", p.id)));
            }
            let mut faces = [usize::MAX; 3];
            for id in &p.curves {
                let c = index_of(&curve_ids, id, "curve")?;
                let (lo, hi) = curve_ends[c];
                let slot = match (lo, hi) {
                    _ if (lo, hi) == (comps[1], comps[2]) => 0,
                    _ if (lo, hi) == (comps[0], comps[2]) => 1,
                    _ if (lo, hi) == (comps[0], comps[1]) => 2,
                    _ => {
                        return Err(Error::Invalid(format!(
                            "curve '{id}' does not lie on the components of triple point '{}'",
                            p.id
                        )))
                    }
                };
                if faces[slot] != usize::MAX {
                    return Err(Error::Invalid(format!(
                        "triple point '{}' lists two curves on the same pair of components",
                        p.id
                    )));
                }
                faces[slot] = c;
                on_curve[c] += 1;
            }
            point_components.push(comps);
            point_faces.push(faces);
        }
        for (c, curve) in double_curves.iter().enumerate() {
            if curve.triple_point_count != on_curve[c] {
                return Err(Error::Invalid(format!(
                    "curve '{}' declares {} triple points but {} are listed",
                    curve.id, curve.triple_point_count, on_curve[c]
                )));
            }
        }

        Ok(Configuration {
            surface_class,
            components,
            double_curves,
            triple_points,
            curve_ends,
            point_components,
            point_faces,
        })
    }

    pub fn surface_class(&self) -> SurfaceType {
        self.surface_class
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn double_curves(&self) -> &[DoubleCurve] {
        &self.double_curves
    }

    pub fn triple_points(&self) -> &[TriplePoint] {
        &self.triple_points
    }

    pub fn component_index(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    pub fn curve_index(&self, id: &str) -> Option<usize> {
        self.double_curves.iter().position(|c| c.id == id)
    }

    /// `(lower, higher)` component indices of a curve.
    pub fn curve_ends(&self, c: usize) -> (usize, usize) {
        self.curve_ends[c]
    }

    /// Sorted component indices of a triple point.
    pub fn point_components(&self, p: usize) -> [usize; 3] {
        self.point_components[p]
    }

    /// Curves of a triple point in face order.
    pub fn point_faces(&self, p: usize) -> [usize; 3] {
        self.point_faces[p]
    }

    /// Curves on component `a`, with the role on that side.
    pub fn curves_on(&self, a: usize) -> Vec<(usize, CurveRole)> {
        let id = &self.components[a].id;
        self.double_curves
            .iter()
            .enumerate()
            .filter_map(|(c, curve)| {
                if &curve.left.component == id {
                    Some((c, curve.left.role))
                } else if &curve.right.component == id {
                    Some((c, curve.right.role))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Role of curve `c` on component `a`.
    pub fn role(&self, c: usize, a: usize) -> Option<CurveRole> {
        let curve = &self.double_curves[c];
        let id = &self.components[a].id;
        if &curve.left.component == id {
            Some(curve.left.role)
        } else if &curve.right.component == id {
            Some(curve.right.role)
        } else {
            None
        }
    }

    /// Sign of the restriction from component `a` to curve `c`: `+1` on the
    /// lower component, `-1` on the higher.
    pub fn curve_sign(&self, c: usize, a: usize) -> i64 {
        let (lo, hi) = self.curve_ends[c];
        if a == lo {
            1
        } else if a == hi {
            -1
        } else {
            0
        }
    }

    /// Sign of the restriction from curve `c` to triple point `p`:
    /// `-, +, -` in face order.
    pub fn point_sign(&self, p: usize, c: usize) -> i64 {
        match self.point_faces[p].iter().position(|&f| f == c) {
            Some(1) => 1,
            Some(_) => -1,
            None => 0,
        }
    }

    /// Number of triple points shared by two curves on component `a`.
    pub fn shared_points(&self, a: usize, c1: usize, c2: usize) -> usize {
        (0..self.triple_points.len())
            .filter(|&p| {
                let f = self.point_faces[p];
                self.point_components[p].contains(&a) && f.contains(&c1) && f.contains(&c2) && c1 != c2
            })
            .count()
    }

    /// A copy with the generic-fibre class replaced.
    pub fn with_class(&self, class: SurfaceType) -> Configuration {
        let mut c = self.clone();
        c.surface_class = class;
        c
    }

    /// The same configuration with components, curves and points permuted:
    /// old item `i` moves to position `perm[i]`.
    pub fn permuted(&self, comp: &[usize], curves: &[usize], points: &[usize]) -> Result<Configuration> {
        fn apply<T: Clone>(items: &[T], perm: &[usize]) -> Result<Vec<T>> {
            if perm.len() != items.len() {
                return Err(Error::Shape("permutation length".into()));
            }
            let mut out: Vec<Option<T>> = vec![None; items.len()];
            for (i, &p) in perm.iter().enumerate() {
                if p >= items.len() || out[p].is_some() {
                    return Err(Error::Shape("not a permutation".into()));
                }
                out[p] = Some(items[i].clone());
            }
            Ok(out.into_iter().map(|x| x.expect("filled")).collect())
        }
        Configuration::new(
            self.surface_class,
            apply(&self.components, comp)?,
            apply(&self.double_curves, curves)?,
            apply(&self.triple_points, points)?,
        )
    }
}

// ---------------------------------------------------------------------------
// local analysis

/// Which local shape the anticanonical cycle of a component has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalCase {
    /// A single smooth component, no double curves.
    Smooth,
    /// Elliptic ruled, two disjoint elliptic rulings.
    TwoRulings,
    /// Elliptic ruled, one elliptic 2-ruling.
    OneTwoRuling,
    /// Rational with a single elliptic curve.
    RationalElliptic,
    /// Rational with a cycle of rational curves.
    RationalCycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Component or curve id.
    pub at: String,
    pub clause: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalVerdict {
    pub component: String,
    pub case: Option<LocalCase>,
    pub violations: Vec<Violation>,
}

impl LocalVerdict {
    pub fn passed(&self) -> bool {
        self.case.is_some() && self.violations.is_empty()
    }
}

/// The curves on a component form a cycle if each meets the others in two
/// triple points on that component and they are connected; a 2-cycle
/// needs the two curves to meet twice.
fn is_rational_cycle(c: &Configuration, a: usize, curves: &[usize]) -> bool {
    let n = curves.len();
    if n < 2 {
        return false;
    }
    let mut degree = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let m = c.shared_points(a, curves[i], curves[j]);
            if m > 0 {
                degree[i] += m;
                degree[j] += m;
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    if degree.iter().any(|&d| d != 2) {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn local_case(c: &Configuration, a: usize) -> std::result::Result<LocalCase, String> {
    let comp = &c.components[a];
    let on = c.curves_on(a);
    let genus = |i: usize| c.double_curves[i].genus;
    let tag = comp.kind.tag;
    match tag {
        ComponentTag::EllipticRuled => match on.as_slice() {
            [(c1, CurveRole::Ruling), (c2, CurveRole::Ruling)] => {
                if genus(*c1) == 1 && genus(*c2) == 1 && c.shared_points(a, *c1, *c2) == 0 {
                    Ok(LocalCase::TwoRulings)
                } else {
                    Err("two rulings must be disjoint elliptic curves".into())
                }
            }
            [(c1, CurveRole::TwoRuling)] if genus(*c1) == 1 => Ok(LocalCase::OneTwoRuling),
            _ => Err(format!(
                "elliptic ruled boundary must be two disjoint rulings or one 2-ruling, found {:?}",
                on.iter().map(|x| x.1).collect::<Vec<_>>()
            )),
        },
        ComponentTag::Rational => match on.as_slice() {
            [(c1, CurveRole::EllipticOnRational)] if genus(*c1) == 1 => Ok(LocalCase::RationalElliptic),
            _ if !on.is_empty() && on.iter().all(|&(i, r)| r == CurveRole::CycleMember && genus(i) == 0) => {
                let curves: Vec<usize> = on.iter().map(|x| x.0).collect();
                if is_rational_cycle(c, a, &curves) {
                    Ok(LocalCase::RationalCycle)
                } else {
                    Err("rational boundary curves do not form a cycle".into())
                }
            }
            _ => Err("rational boundary must be one elliptic curve or a cycle of rational curves".into()),
        },
        _ => {
            if on.is_empty() && c.components.len() == 1 {
                Ok(LocalCase::Smooth)
            } else {
                Err(format!("{tag:?} component must be the only component"))
            }
        }
    }
}

/// Per-component check of the anticanonical case list, plus the genus
/// formula `2g - 2 = -T_C` on every curve meeting the component.
pub fn validate_local(c: &Configuration) -> Vec<LocalVerdict> {
    (0..c.components.len())
        .map(|a| {
            let mut violations = Vec::new();
            let case = match local_case(c, a) {
                Ok(k) => Some(k),
                Err(detail) => {
                    violations.push(Violation {
                        at: c.components[a].id.clone(),
                        clause: "local-case".into(),
                        detail,
                    });
                    None
                }
            };
            for (i, _) in c.curves_on(a) {
                let curve = &c.double_curves[i];
                let expected = 2 - 2 * curve.genus as i64;
                if curve.triple_point_count as i64 != expected {
                    violations.push(Violation {
                        at: curve.id.clone(),
                        clause: "genus-formula".into(),
                        detail: format!(
                            "genus {} needs {expected} triple points, found {}",
                            curve.genus, curve.triple_point_count
                        ),
                    });
                }
            }
            LocalVerdict {
                component: c.components[a].id.clone(),
                case,
                violations,
            }
        })
        .collect()
}

pub fn local_cases(c: &Configuration) -> Vec<Option<LocalCase>> {
    (0..c.components.len()).map(|a| local_case(c, a).ok()).collect()
}

/// Vertices are components, edges double curves, triangles triple points.
pub fn dual_graph(c: &Configuration) -> Result<DeltaComplex> {
    let verts = vec![Vec::new(); c.components.len()];
    let edges = c.curve_ends.iter().map(|&(lo, hi)| vec![hi, lo]).collect();
    let tris = c.point_faces.iter().map(|f| f.to_vec()).collect();
    let g = DeltaComplex::new(vec![verts, edges, tris])?;
    let comps = g.vertex_components().len();
    if comps != 1 {
        return Err(Error::Disconnected(comps));
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// classification

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DegenerationType {
    I,
    II,
    III,
}

impl DegenerationType {
    pub fn index(self) -> usize {
        match self {
            DegenerationType::I => 1,
            DegenerationType::II => 2,
            DegenerationType::III => 3,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            1 => Some(DegenerationType::I),
            2 => Some(DegenerationType::II),
            3 => Some(DegenerationType::III),
            _ => None,
        }
    }
}

impl fmt::Display for DegenerationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    Point,
    Chain,
    Cycle,
    Surface,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Clause {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Clause {
            name: name.into(),
            ok,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeVerdict {
    pub class: SurfaceType,
    #[serde(rename = "type")]
    pub kind: DegenerationType,
    pub shape: Shape,
    /// Classification of the dual complex.
    pub gamma: SurfaceClass,
    pub diagnostics: Vec<Clause>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub class: SurfaceType,
    pub failures: Vec<Clause>,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a combinatorial {} surface:", self.class)?;
        for c in &self.failures {
            write!(f, " [{}: {}]", c.name, c.detail)?;
        }
        Ok(())
    }
}

fn graph_shape(g: &DeltaComplex) -> Option<Shape> {
    if g.count(2) > 0 {
        return None;
    }
    let n = g.count(0);
    if n == 1 && g.count(1) == 0 {
        return Some(Shape::Point);
    }
    let mut degree = vec![0usize; n];
    for e in g.cells().get(1).into_iter().flatten() {
        degree[e[0]] += 1;
        degree[e[1]] += 1;
    }
    let edges = g.count(1);
    if edges == n && degree.iter().all(|&d| d == 2) {
        Some(Shape::Cycle)
    } else if edges + 1 == n && degree.iter().all(|&d| d <= 2) {
        Some(Shape::Chain)
    } else {
        None
    }
}

/// Matches a configuration against the Type I/II/III case list of its
/// class.
pub fn classify(c: &Configuration) -> std::result::Result<TypeVerdict, Rejection> {
    let class = c.surface_class;
    let reject = |failures| Rejection { class, failures };

    let local = validate_local(c);
    let failures: Vec<Clause> = local
        .iter()
        .flat_map(|v| v.violations.iter())
        .map(|v| Clause::new(&v.clause, false, format!("{}: {}", v.at, v.detail)))
        .collect();
    if !failures.is_empty() {
        return Err(reject(failures));
    }
    let cases: Vec<LocalCase> = local.iter().map(|v| v.case.expect("validated")).collect();
    let g = match dual_graph(c) {
        Ok(g) => g,
        Err(e) => return Err(reject(vec![Clause::new("connected", false, e.to_string())])),
    };
    let gamma = classify_surface(&g);
    let mut diags = vec![Clause::new("connected", true, "dual complex is connected")];
    let tags: Vec<ComponentTag> = c.components.iter().map(|x| x.kind.tag).collect();

    // Type I
    if c.components.len() == 1 {
        let ok = tags[0] == class.tag();
        let clause = Clause::new(
            "type-I",
            ok,
            format!("single component of kind {:?}", tags[0]),
        );
        if !ok {
            return Err(reject(vec![clause]));
        }
        diags.push(clause);
        return Ok(TypeVerdict {
            class,
            kind: DegenerationType::I,
            shape: Shape::Point,
            gamma,
            diagnostics: diags,
        });
    }

    // Type III
    if !c.triple_points.is_empty() || cases.iter().all(|&k| k == LocalCase::RationalCycle) {
        let mut failures = Vec::new();
        let all_rational = cases.iter().all(|&k| k == LocalCase::RationalCycle);
        let clause = Clause::new(
            "type-III-components",
            all_rational,
            "every component rational with a cycle of rational double curves",
        );
        if all_rational {
            diags.push(clause);
        } else {
            failures.push(clause);
        }
        let want = class.type_three_surface();
        let clause = Clause::new(
            "type-III-dual-complex",
            gamma == want,
            format!("dual complex is {gamma}, needs {want}"),
        );
        if gamma == want {
            diags.push(clause);
        } else {
            failures.push(clause);
        }
        if !failures.is_empty() {
            return Err(reject(failures));
        }
        return Ok(TypeVerdict {
            class,
            kind: DegenerationType::III,
            shape: Shape::Surface,
            gamma,
            diagnostics: diags,
        });
    }

    // Type II
    let shape = graph_shape(&g);
    let mut failures = Vec::new();
    let ends: Vec<usize> = (0..tags.len()).filter(|&a| c.curves_on(a).len() == 1).collect();
    let inner_ok = |a: usize| cases[a] == LocalCase::TwoRulings;
    let count = |k: LocalCase| ends.iter().filter(|&&a| cases[a] == k).count();
    let (shape_ok, detail) = match (class, shape) {
        (SurfaceType::K3, Some(Shape::Chain)) => (
            count(LocalCase::RationalElliptic) == 2
                && (0..tags.len()).filter(|a| !ends.contains(a)).all(inner_ok),
            "chain with rational ends and ruled inner components",
        ),
        (SurfaceType::Enriques, Some(Shape::Chain)) => (
            count(LocalCase::RationalElliptic) == 1
                && count(LocalCase::OneTwoRuling) == 1
                && (0..tags.len()).filter(|a| !ends.contains(a)).all(inner_ok),
            "chain with one rational end, one 2-ruling end and ruled inner components",
        ),
        (SurfaceType::Abelian, Some(Shape::Cycle)) => (
            (0..tags.len()).all(inner_ok),
            "cycle of elliptic ruled components meeting in rulings",
        ),
        (SurfaceType::Bielliptic, Some(Shape::Cycle)) => (
            (0..tags.len()).all(inner_ok),
            "cycle of elliptic ruled components meeting in rulings",
        ),
        (SurfaceType::Bielliptic, Some(Shape::Chain)) => (
            count(LocalCase::OneTwoRuling) == 2
                && (0..tags.len()).filter(|a| !ends.contains(a)).all(inner_ok),
            "chain of elliptic ruled components with 2-ruling ends",
        ),
        (_, s) => (false, match s {
            Some(Shape::Chain) => "dual graph is a chain, which this class does not allow",
            Some(Shape::Cycle) => "dual graph is a cycle, which this class does not allow",
            _ => "dual graph is neither a chain nor a cycle",
        }),
    };
    let clause = Clause::new("type-II", shape_ok, detail);
    if shape_ok {
        diags.push(clause);
    } else {
        failures.push(clause);
    }
    if !failures.is_empty() {
        return Err(reject(failures));
    }
    Ok(TypeVerdict {
        class,
        kind: DegenerationType::II,
        shape: shape.expect("checked"),
        gamma,
        diagnostics: diags,
    })
}

// ---------------------------------------------------------------------------
// stratum tables

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumTables {
    /// `(betti, coherent)` per component.
    pub components: Vec<([usize; 5], [usize; 3])>,
    /// `(betti, coherent)` per double curve.
    pub curves: Vec<([usize; 3], [usize; 2])>,
    /// Every triple point has Betti `(1)` and coherent `(1)`.
    pub points: usize,
}

impl StratumTables {
    /// `dim H^q` summed over the stratum `Y^(k)`.
    pub fn betti(&self, k: usize, q: usize) -> usize {
        match k {
            0 => self.components.iter().map(|x| x.0.get(q).copied().unwrap_or(0)).sum(),
            1 => self.curves.iter().map(|x| x.0.get(q).copied().unwrap_or(0)).sum(),
            2 if q == 0 => self.points,
            _ => 0,
        }
    }

    pub fn coherent(&self, k: usize, q: usize) -> usize {
        match k {
            0 => self.components.iter().map(|x| x.1.get(q).copied().unwrap_or(0)).sum(),
            1 => self.curves.iter().map(|x| x.1.get(q).copied().unwrap_or(0)).sum(),
            2 if q == 0 => self.points,
            _ => 0,
        }
    }

    /// `χ(O)` of the stratum `Y^(k)`.
    pub fn chi(&self, k: usize) -> i64 {
        (0..3).map(|q| if q % 2 == 0 { 1 } else { -1 } * self.coherent(k, q) as i64).sum()
    }
}

pub fn stratum_tables(c: &Configuration) -> StratumTables {
    StratumTables {
        components: c.components.iter().map(|x| (x.kind.betti, x.kind.coherent)).collect(),
        curves: c
            .double_curves
            .iter()
            .map(|x| {
                let g = x.genus as usize;
                ([1, 2 * g, 1], [1, g])
            })
            .collect(),
        points: c.triple_points.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn er() -> ComponentKind {
        ComponentKind::new(ComponentTag::EllipticRuled)
    }

    fn rat() -> ComponentKind {
        ComponentKind::new(ComponentTag::Rational)
    }

    fn curve(id: &str, g: u32, l: (&str, CurveRole), r: (&str, CurveRole), t: usize) -> DoubleCurve {
        DoubleCurve {
            id: id.into(),
            genus: g,
            left: Incidence {
                component: l.0.into(),
                role: l.1,
            },
            right: Incidence {
                component: r.0.into(),
                role: r.1,
            },
            triple_point_count: t,
        }
    }

    fn k3_chain3() -> Configuration {
        use CurveRole::*;
        Configuration::new(
            SurfaceType::K3,
            vec![Component::new("Y1", rat()), Component::new("Y2", er()), Component::new("Y3", rat())],
            vec![
                curve("C12", 1, ("Y1", EllipticOnRational), ("Y2", Ruling), 0),
                curve("C23", 1, ("Y2", Ruling), ("Y3", EllipticOnRational), 0),
            ],
            vec![],
        )
        .unwrap()
    }

    fn tetra() -> Configuration {
        let comps: Vec<Component> = (0..4).map(|i| Component::new(format!("Y{i}"), rat())).collect();
        let mut curves = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                curves.push(curve(
                    &format!("C{i}{j}"),
                    0,
                    (&format!("Y{i}"), CurveRole::CycleMember),
                    (&format!("Y{j}"), CurveRole::CycleMember),
                    2,
                ));
            }
        }
        let mut points = Vec::new();
        for (n, t) in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]].iter().enumerate() {
            points.push(TriplePoint {
                id: format!("P{n}"),
                curves: [
                    format!("C{}{}", t[1], t[2]),
                    format!("C{}{}", t[0], t[2]),
                    format!("C{}{}", t[0], t[1]),
                ],
                components: t.map(|i| format!("Y{i}")),
            });
        }
        Configuration::new(SurfaceType::K3, comps, curves, points).unwrap()
    }

    #[test]
    fn chain_middle_is_two_rulings() {
        let c = k3_chain3();
        let v = validate_local(&c);
        assert!(v.iter().all(|x| x.passed()));
        assert_eq!(v[1].case, Some(LocalCase::TwoRulings));
        assert_eq!(v[0].case, Some(LocalCase::RationalElliptic));
        let verdict = classify(&c).unwrap();
        assert_eq!(verdict.kind, DegenerationType::II);
        assert_eq!(verdict.shape, Shape::Chain);
        let g = dual_graph(&c).unwrap();
        assert_eq!(g.counts(), vec![3, 2]);
    }

    #[test]
    fn tetrahedron_is_type_three() {
        let c = tetra();
        let v = validate_local(&c);
        assert!(v.iter().all(|x| x.case == Some(LocalCase::RationalCycle)));
        let verdict = classify(&c).unwrap();
        assert_eq!(verdict.kind, DegenerationType::III);
        assert_eq!(verdict.gamma, SurfaceClass::Sphere);
        assert_eq!(dual_graph(&c).unwrap().counts(), vec![4, 6, 4]);
        let r = classify(&c.with_class(SurfaceType::Abelian)).unwrap_err();
        assert!(r.failures.iter().any(|f| f.name == "type-III-dual-complex"));
    }

    #[test]
    fn genus_formula_violation() {
        use CurveRole::*;
        let c = Configuration::new(
            SurfaceType::K3,
            vec![Component::new("A", rat()), Component::new("B", rat())],
            vec![curve("C", 0, ("A", CycleMember), ("B", CycleMember), 0)],
            vec![],
        )
        .unwrap();
        let v = validate_local(&c);
        assert!(v[0].violations.iter().any(|x| x.clause == "genus-formula"));
        assert!(classify(&c).is_err());
    }

    #[test]
    fn structural_errors() {
        use CurveRole::*;
        let bad_role = Configuration::new(
            SurfaceType::K3,
            vec![Component::new("A", rat()), Component::new("B", rat())],
            vec![curve("C", 1, ("A", Ruling), ("B", EllipticOnRational), 0)],
            vec![],
        );
        assert!(bad_role.is_err());
        let dup = Configuration::new(
            SurfaceType::K3,
            vec![Component::new("A", rat()), Component::new("A", rat())],
            vec![],
            vec![],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn single_component_is_type_one() {
        let c = Configuration::new(
            SurfaceType::K3,
            vec![Component::new("X", ComponentKind::new(ComponentTag::K3))],
            vec![],
            vec![],
        )
        .unwrap();
        assert_eq!(classify(&c).unwrap().kind, DegenerationType::I);
        assert!(classify(&c.with_class(SurfaceType::Abelian)).is_err());
    }

    #[test]
    fn tables() {
        let t = stratum_tables(&k3_chain3());
        assert_eq!(t.components[1].0, [1, 2, 2, 2, 1]);
        assert_eq!(t.curves[0], ([1, 2, 1], [1, 1]));
        assert_eq!(t.betti(0, 1), 2);
        assert_eq!(t.betti(1, 1), 4);
        assert_eq!(t.chi(0), 1 + 0 + 1);
        let t = stratum_tables(&tetra());
        assert_eq!(t.chi(0) - t.chi(1) + t.chi(2), 2);
    }

    #[test]
    fn signs() {
        let c = tetra();
        // curve C01 from Y0 to Y1
        assert_eq!(c.curve_sign(0, 0), 1);
        assert_eq!(c.curve_sign(0, 1), -1);
        // P0 on Y0, Y1, Y2: faces C12, C02, C01
        assert_eq!(c.point_faces(0), [3, 1, 0]);
        assert_eq!(c.point_sign(0, 3), -1);
        assert_eq!(c.point_sign(0, 1), 1);
        assert_eq!(c.point_sign(0, 0), -1);
    }
}

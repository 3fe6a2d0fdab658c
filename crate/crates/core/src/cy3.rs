//! Threefold configurations and the combinatorial Calabi–Yau Type IV test.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dcomplex::{check_closed_3_manifold, is_homology_3_sphere, DeltaComplex, HomologySphereReport, ManifoldVerdict};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component3 {
    pub id: String,
    pub mori_fibre_birational: bool,
    pub base_unirational: bool,
}

/// One connected component of a double surface `V_i ∩ V_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleSurface {
    pub id: String,
    pub components: [String; 2],
    pub rational: bool,
}

/// One connected component of a triple curve `V_i ∩ V_j ∩ V_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCurve {
    pub id: String,
    pub surfaces: [String; 3],
    pub components: [String; 3],
    pub rational: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadruplePoint {
    pub id: String,
    pub curves: [String; 4],
    pub components: [String; 4],
}

/// A threefold special fibre. Cells of each dimension are numbered by
/// list position, and the dual complex is built from the incidences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration3 {
    components: Vec<Component3>,
    double_surfaces: Vec<DoubleSurface>,
    triple_curves: Vec<TripleCurve>,
    quadruple_points: Vec<QuadruplePoint>,
    gamma: DeltaComplex,
}

fn ids<'a>(it: impl Iterator<Item = &'a str>, what: &str) -> Result<BTreeMap<&'a str, usize>> {
    let mut m = BTreeMap::new();
    for (i, id) in it.enumerate() {
        if m.insert(id, i).is_some() {
            return Err(Error::Invalid(format!("duplicate {what} id '{id}'")));
        }
    }
    Ok(m)
}

fn lookup(m: &BTreeMap<&str, usize>, id: &str, what: &str) -> Result<usize> {
    m.get(id).copied().ok_or_else(|| Error::Invalid(format!("unknown {what} '{id}'")))
}

/// Faces of a cell on sorted components: face `i` is the unique listed
/// lower cell whose component set omits component `i`.
fn faces_by_omission(
    own: &[usize],
    lower: &[usize],
    lower_comps: &dyn Fn(usize) -> Vec<usize>,
    id: &str,
) -> Result<Vec<usize>> {
    let mut faces = vec![usize::MAX; own.len()];
    for &l in lower {
        let lc = lower_comps(l);
        let missing: Vec<usize> = (0..own.len()).filter(|&i| !lc.contains(&own[i])).collect();
        if missing.len() != 1 || lc.iter().any(|x| !own.contains(x)) {
            return Err(Error::Invalid(format!("'{id}' lists a face on the wrong components")));
        }
        if faces[missing[0]] != usize::MAX {
            return Err(Error::Invalid(format!("'{id}' lists two faces omitting the same component")));
        }
        faces[missing[0]] = l;
    }
    Ok(faces)
}

impl Configuration3 {
    pub fn new(
        components: Vec<Component3>,
        double_surfaces: Vec<DoubleSurface>,
        triple_curves: Vec<TripleCurve>,
        quadruple_points: Vec<QuadruplePoint>,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Invalid("no components".into()));
        }
        let comp = ids(components.iter().map(|c| c.id.as_str()), "component")?;
        let surf = ids(double_surfaces.iter().map(|c| c.id.as_str()), "double surface")?;
        let curv = ids(triple_curves.iter().map(|c| c.id.as_str()), "triple curve")?;
        ids(quadruple_points.iter().map(|c| c.id.as_str()), "quadruple point")?;

        let sorted = |names: &[String]| -> Result<Vec<usize>> {
            let mut v = names.iter().map(|n| lookup(&comp, n, "component")).collect::<Result<Vec<_>>>()?;
            v.sort_unstable();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!("repeated component in {names:?}")));
            }
            Ok(v)
        };
        let s_comps: Vec<Vec<usize>> = double_surfaces.iter().map(|s| sorted(&s.components)).collect::<Result<_>>()?;
        let c_comps: Vec<Vec<usize>> = triple_curves.iter().map(|c| sorted(&c.components)).collect::<Result<_>>()?;

        let verts = vec![Vec::new(); components.len()];
        let edges: Vec<Vec<usize>> = s_comps.iter().map(|v| vec![v[1], v[0]]).collect();
        let mut tris = Vec::new();
        for (i, c) in triple_curves.iter().enumerate() {
            let lower: Vec<usize> = c.surfaces.iter().map(|s| lookup(&surf, s, "double surface")).collect::<Result<_>>()?;
            tris.push(faces_by_omission(&c_comps[i], &lower, &|l| s_comps[l].clone(), &c.id)?);
        }
        let mut tets = Vec::new();
        for p in &quadruple_points {
            let own = sorted(&p.components)?;
            let lower: Vec<usize> = p.curves.iter().map(|s| lookup(&curv, s, "triple curve")).collect::<Result<_>>()?;
            tets.push(faces_by_omission(&own, &lower, &|l| c_comps[l].clone(), &p.id)?);
        }
        let gamma = DeltaComplex::new(vec![verts, edges, tris, tets])?;
        let n = gamma.vertex_components().len();
        if n != 1 {
            return Err(Error::Disconnected(n));
        }
        Ok(Configuration3 {
            components,
            double_surfaces,
            triple_curves,
            quadruple_points,
            gamma,
        })
    }

    pub fn components(&self) -> &[Component3] {
        &self.components
    }

    pub fn double_surfaces(&self) -> &[DoubleSurface] {
        &self.double_surfaces
    }

    pub fn triple_curves(&self) -> &[TripleCurve] {
        &self.triple_curves
    }

    pub fn quadruple_points(&self) -> &[QuadruplePoint] {
        &self.quadruple_points
    }

    pub fn dual_complex(&self) -> &DeltaComplex {
        &self.gamma
    }

    /// Cells of dimension `n` whose vertex set contains component `v`.
    fn cells_at(&self, n: usize, v: usize) -> Vec<usize> {
        (0..self.gamma.count(n))
            .filter(|&k| self.gamma.vertices_of(n, k).contains(&v))
            .collect()
    }

    /// Whether every cell has distinct vertices and no two cells share a
    /// vertex set.
    pub fn is_simplicial(&self) -> bool {
        let g = &self.gamma;
        (1..=g.dim().unwrap_or(0)).all(|n| {
            let mut seen = BTreeSet::new();
            (0..g.count(n)).all(|k| {
                let mut vs = g.vertices_of(n, k);
                vs.sort_unstable();
                vs.windows(2).all(|w| w[0] != w[1]) && seen.insert(vs)
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalIntersection {
    pub has_quadruple_point: bool,
    pub every_component: bool,
    pub components_without: Vec<String>,
}

pub fn check_maximal_intersection(c: &Configuration3) -> MaximalIntersection {
    let without: Vec<String> = (0..c.components.len())
        .filter(|&v| c.cells_at(3, v).is_empty())
        .map(|v| c.components[v].id.clone())
        .collect();
    MaximalIntersection {
        has_quadruple_point: !c.quadruple_points.is_empty(),
        every_component: without.is_empty(),
        components_without: without,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorVerdict {
    pub component: String,
    /// Double surfaces in each connected piece of the boundary divisor.
    pub pieces: Vec<Vec<String>>,
    pub ok: bool,
}

/// The boundary divisor of each component must be connected, or consist
/// of exactly two irreducible pieces.
pub fn check_anticanonical_connectedness(c: &Configuration3) -> Vec<DivisorVerdict> {
    (0..c.components.len())
        .map(|v| {
            let surfaces = c.cells_at(1, v);
            let mut parent: BTreeMap<usize, usize> = surfaces.iter().map(|&s| (s, s)).collect();
            fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
                let mut r = x;
                while p[&r] != r {
                    r = p[&r];
                }
                r
            }
            for t in c.cells_at(2, v) {
                let on_v: Vec<usize> = c
                    .gamma
                    .faces(2, t)
                    .iter()
                    .copied()
                    .filter(|s| parent.contains_key(s))
                    .collect();
                for w in on_v.windows(2) {
                    let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                    parent.insert(a, b);
                }
            }
            let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
            for &s in &surfaces {
                let r = find(&mut parent, s);
                groups.entry(r).or_default().push(c.double_surfaces[s].id.clone());
            }
            let pieces: Vec<Vec<String>> = groups.into_values().collect();
            let ok = pieces.len() == 1 || (pieces.len() == 2 && pieces.iter().all(|p| p.len() == 1));
            DivisorVerdict {
                component: c.components[v].id.clone(),
                pieces,
                ok,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cy4Verdict {
    pub type_iv: bool,
    pub failures: Vec<String>,
    pub manifold: ManifoldVerdict,
    pub homology: Option<HomologySphereReport>,
    /// `"simplicial"` or `"delta"`: which kind of triangulation the dual
    /// complex is.
    pub triangulation: String,
}

pub fn classify_cy4(c: &Configuration3) -> Cy4Verdict {
    let mut failures = Vec::new();
    for comp in &c.components {
        if !comp.mori_fibre_birational {
            failures.push(format!("component '{}' is not birational to a Mori fibre space", comp.id));
        }
        if !comp.base_unirational {
            failures.push(format!("component '{}' has a base that is not unirational", comp.id));
        }
    }
    for s in c.double_surfaces.iter().filter(|s| !s.rational) {
        failures.push(format!("double surface '{}' is not rational", s.id));
    }
    for t in c.triple_curves.iter().filter(|t| !t.rational) {
        failures.push(format!("triple curve '{}' is not rational", t.id));
    }
    let mi = check_maximal_intersection(c);
    if !mi.has_quadruple_point {
        failures.push("no quadruple point".into());
    }
    let manifold = check_closed_3_manifold(&c.gamma);
    let homology = match &manifold {
        ManifoldVerdict::Pass => {
            let r = is_homology_3_sphere(&c.gamma).expect("manifold check passed");
            if !r.is_homology_sphere {
                failures.push(format!("dual complex is not a homology sphere: H1 = {}", r.h1));
            }
            Some(r)
        }
        ManifoldVerdict::Fail { reason, .. } => {
            failures.push(format!("dual complex is not a closed 3-manifold: {reason}"));
            None
        }
    };
    Cy4Verdict {
        type_iv: failures.is_empty(),
        failures,
        manifold,
        homology,
        triangulation: if c.is_simplicial() { "simplicial" } else { "delta" }.into(),
    }
}

/// `dim E_2^{3,0} = dim H^3(Γ; Q)`; the dual complex must be a closed
/// 3-manifold.
pub fn e2_30(c: &Configuration3) -> Result<usize> {
    if let ManifoldVerdict::Fail { reason, .. } = check_closed_3_manifold(&c.gamma) {
        return Err(Error::Precondition(format!("not a closed 3-manifold: {reason}")));
    }
    Ok(c.gamma.homology(0)?[3])
}

/// Under the weight-monodromy assumption a nonzero `E_2^{3,0}` forces
/// `N^3 ≠ 0`; without it nothing is concluded.
pub fn n3_nonzero(e2_30: usize, wmc_assumed: bool) -> Option<bool> {
    wmc_assumed.then_some(e2_30 != 0)
}

/// For each component, whether its vertex link in the dual complex is
/// the dual complex of its boundary divisor: link vertices are the double
/// surfaces on it, link edges the triple curves, link triangles the
/// quadruple points, with matching incidences.
pub fn cone_structure(c: &Configuration3) -> Vec<bool> {
    let g = &c.gamma;
    (0..c.components.len())
        .map(|v| {
            let link = g.link(0, v);
            let surfaces = c.cells_at(1, v);
            let curves = c.cells_at(2, v);
            let points = c.cells_at(3, v);
            if link.count(0) != surfaces.len() || link.count(1) != curves.len() || link.count(2) != points.len() {
                return false;
            }
            let pos = |list: &[usize], x: usize| list.iter().position(|&y| y == x);
            // a triple curve through v joins the two double surfaces on v
            let edges_ok = curves.iter().enumerate().all(|(k, &t)| {
                let mut want: Vec<Option<usize>> = g
                    .faces(2, t)
                    .iter()
                    .filter(|&&s| g.vertices_of(1, s).contains(&v))
                    .map(|&s| pos(&surfaces, s))
                    .collect();
                let mut have: Vec<Option<usize>> = link.faces(1, k).iter().map(|&x| Some(x)).collect();
                want.sort();
                have.sort();
                want == have
            });
            let tris_ok = points.iter().enumerate().all(|(k, &p)| {
                let mut want: Vec<Option<usize>> = g
                    .faces(3, p)
                    .iter()
                    .filter(|&&t| g.vertices_of(2, t).contains(&v))
                    .map(|&t| pos(&curves, t))
                    .collect();
                let mut have: Vec<Option<usize>> = link.faces(2, k).iter().map(|&x| Some(x)).collect();
                want.sort();
                have.sort();
                want == have
            });
            edges_ok && tris_ok
        })
        .collect()
}

/// Builds a configuration whose dual complex is the simplicial complex
/// generated by `tets` (vertex labels `0..n`), with every flag set.
pub fn from_tetrahedra(tets: &[[usize; 4]]) -> Result<Configuration3> {
    let simplices: Vec<Vec<usize>> = tets.iter().map(|t| t.to_vec()).collect();
    let g = DeltaComplex::from_simplices(&simplices)?;
    let name = |n: usize, k: usize| -> String {
        let vs: Vec<String> = g.vertices_of(n, k).iter().map(|v| v.to_string()).collect();
        match n {
            0 => format!("V{}", vs[0]),
            1 => format!("S{}", vs.join("_")),
            2 => format!("C{}", vs.join("_")),
            _ => format!("P{}", vs.join("_")),
        }
    };
    let comp_names = |n: usize, k: usize| -> Vec<String> {
        g.vertices_of(n, k).iter().map(|&v| name(0, v)).collect()
    };
    let components = (0..g.count(0))
        .map(|k| Component3 {
            id: name(0, k),
            mori_fibre_birational: true,
            base_unirational: true,
        })
        .collect();
    let double_surfaces = (0..g.count(1))
        .map(|k| {
            let cs = comp_names(1, k);
            DoubleSurface {
                id: name(1, k),
                components: [cs[0].clone(), cs[1].clone()],
                rational: true,
            }
        })
        .collect();
    let triple_curves = (0..g.count(2))
        .map(|k| {
            let f = g.faces(2, k);
            let cs = comp_names(2, k);
            TripleCurve {
                id: name(2, k),
                surfaces: [name(1, f[0]), name(1, f[1]), name(1, f[2])],
                components: [cs[0].clone(), cs[1].clone(), cs[2].clone()],
                rational: true,
            }
        })
        .collect();
    let quadruple_points = (0..g.count(3))
        .map(|k| {
            let f = g.faces(3, k);
            let cs = comp_names(3, k);
            QuadruplePoint {
                id: name(3, k),
                curves: [name(2, f[0]), name(2, f[1]), name(2, f[2]), name(2, f[3])],
                components: [cs[0].clone(), cs[1].clone(), cs[2].clone(), cs[3].clone()],
            }
        })
        .collect();
    Configuration3::new(components, double_surfaces, triple_curves, quadruple_points)
}

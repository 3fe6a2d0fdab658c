//! Finite étale covers between configurations, modelled by where each
//! component and double curve goes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::sncl::{classify, ComponentTag, Configuration, DegenerationType, Rejection, SurfaceType, TypeVerdict};
use crate::wss::{build_e1, compute_e2, monodromy_index, TransferTemplate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FibreBehavior {
    /// The preimage is irreducible and covers the base component with
    /// degree greater than one.
    IrreducibleCover,
    /// The preimage is a disjoint union of isomorphic copies.
    SplitCopies,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentImage {
    pub base: String,
    pub behavior: FibreBehavior,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverMap {
    pub degree: usize,
    pub total: Configuration,
    /// Templates for the total space, used when its spectral sequence is
    /// evaluated.
    pub total_transfers: TransferTemplate,
    pub base: Configuration,
    pub component_map: BTreeMap<String, ComponentImage>,
    pub curve_map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverViolation {
    pub rule: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverVerdict {
    pub violations: Vec<CoverViolation>,
}

impl CoverVerdict {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn irreducible_allowed(base: ComponentTag, total: ComponentTag) -> bool {
    use ComponentTag::*;
    matches!(
        (base, total),
        (EllipticRuled, EllipticRuled) | (Enriques, K3) | (Bielliptic, Abelian) | (Abelian, Abelian)
    )
}

pub fn validate_cover(m: &CoverMap) -> CoverVerdict {
    let mut out = Vec::new();
    let mut push = |rule: &str, detail: String| {
        out.push(CoverViolation {
            rule: rule.into(),
            detail,
        })
    };
    let (total, base) = (&m.total, &m.base);

    if m.degree < 2 {
        push("degree", format!("degree {} is below 2", m.degree));
    }

    // component map
    let mut preimages: Vec<Vec<(usize, FibreBehavior)>> = vec![Vec::new(); base.components().len()];
    let mut image = vec![None; total.components().len()];
    for (z, comp) in total.components().iter().enumerate() {
        match m.component_map.get(&comp.id) {
            None => push("component-map", format!("component '{}' has no image", comp.id)),
            Some(img) => match base.component_index(&img.base) {
                None => push("component-map", format!("'{}' maps to unknown '{}'", comp.id, img.base)),
                Some(y) => {
                    preimages[y].push((z, img.behavior));
                    image[z] = Some(y);
                }
            },
        }
    }
    for id in m.component_map.keys() {
        if total.component_index(id).is_none() {
            push("component-map", format!("unknown total component '{id}'"));
        }
    }

    for (y, pre) in preimages.iter().enumerate() {
        let bid = &base.components()[y].id;
        let btag = base.components()[y].kind.tag;
        if pre.is_empty() {
            push("surjective", format!("base component '{bid}' has no preimage"));
            continue;
        }
        let behavior = pre[0].1;
        if pre.iter().any(|p| p.1 != behavior) {
            push("uniform-fibre", format!("mixed behaviours over '{bid}'"));
            continue;
        }
        let local = match behavior {
            FibreBehavior::SplitCopies => 1,
            FibreBehavior::IrreducibleCover => {
                if m.degree % pre.len() != 0 {
                    0
                } else {
                    m.degree / pre.len()
                }
            }
        };
        if pre.len() * local != m.degree || (behavior == FibreBehavior::IrreducibleCover && local < 2) {
            push(
                "fibre-degree",
                format!(
                    "over '{bid}': {} preimage(s) with {behavior:?} do not make degree {}",
                    pre.len(),
                    m.degree
                ),
            );
        }
        if btag == ComponentTag::Rational && behavior != FibreBehavior::SplitCopies {
            push(
                "rational-simply-connected",
                format!("rational component '{bid}' can only be covered by split copies"),
            );
        }
        for &(z, _) in pre {
            let ttag = total.components()[z].kind.tag;
            let ok = match behavior {
                FibreBehavior::SplitCopies => ttag == btag,
                FibreBehavior::IrreducibleCover => irreducible_allowed(btag, ttag),
            };
            if !ok {
                push(
                    "component-kind",
                    format!(
                        "'{}' ({ttag:?}) cannot cover '{bid}' ({btag:?}) by {behavior:?}",
                        total.components()[z].id
                    ),
                );
            }
        }
    }

    // curve map
    let mut curve_pre = vec![0usize; base.double_curves().len()];
    for (d, curve) in total.double_curves().iter().enumerate() {
        let Some(cid) = m.curve_map.get(&curve.id) else {
            push("curve-map", format!("curve '{}' has no image", curve.id));
            continue;
        };
        let Some(c) = base.curve_index(cid) else {
            push("curve-map", format!("'{}' maps to unknown '{cid}'", curve.id));
            continue;
        };
        curve_pre[c] += 1;
        let (z1, z2) = total.curve_ends(d);
        let (y1, y2) = base.curve_ends(c);
        let mut img = [image[z1], image[z2]];
        img.sort();
        if img != [Some(y1), Some(y2)] {
            push(
                "incidence",
                format!("curve '{}' does not lie over the components of '{cid}'", curve.id),
            );
        }
        if curve.genus != base.double_curves()[c].genus {
            push("curve-genus", format!("curve '{}' and '{cid}' differ in genus", curve.id));
        }
    }
    for (c, curve) in base.double_curves().iter().enumerate() {
        let n = curve_pre[c];
        let ok = if curve.genus == 0 {
            n == m.degree
        } else {
            n > 0 && m.degree % n == 0
        };
        if !ok {
            push(
                "curve-preimages",
                format!("base curve '{}' (genus {}) has {n} preimages", curve.id, curve.genus),
            );
        }
    }

    if total.triple_points().len() != m.degree * base.triple_points().len() {
        push(
            "triple-points",
            format!(
                "{} triple points upstairs, expected {} x {}",
                total.triple_points().len(),
                m.degree,
                base.triple_points().len()
            ),
        );
    }

    // Two rational components meeting along an elliptic curve cannot cover
    // anything: the base would need two components, each doubly covered,
    // and rational components are simply connected.
    let t = total.components();
    if t.len() == 2
        && t.iter().all(|x| x.kind.tag == ComponentTag::Rational)
        && total.double_curves().iter().all(|x| x.genus == 1)
    {
        push(
            "two-component-type-ii",
            "two rational components meeting in an elliptic curve admit no étale quotient".into(),
        );
    }

    CoverVerdict { violations: out }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferVerdict {
    pub total: std::result::Result<TypeVerdict, Rejection>,
    pub base: std::result::Result<TypeVerdict, Rejection>,
    pub equal: bool,
}

/// Classifies both sides; the types must agree.
pub fn check_type_transfer(m: &CoverMap) -> TransferVerdict {
    let total = classify(&m.total);
    let base = classify(&m.base);
    let t: Option<DegenerationType> = total.as_ref().ok().map(|v| v.kind);
    let b: Option<DegenerationType> = base.as_ref().ok().map(|v| v.kind);
    TransferVerdict {
        equal: t.is_some() && t == b,
        total,
        base,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub index: Option<usize>,
    /// `"direct"`, `"cover"` or `"unavailable"`.
    pub source: String,
}

/// The monodromy nilpotency index of `c`.
///
/// For Enriques and bielliptic degenerations with more than one component
/// the rational `E_2` page of `c` itself misses the monodromy (it lives on
/// the transcendental part), so the index is read off the total space of
/// the cover when one is given.
pub fn monodromy_index_via_cover(
    c: &Configuration,
    t: &TransferTemplate,
    cover: Option<&CoverMap>,
) -> crate::Result<IndexReport> {
    let needs_cover = matches!(c.surface_class(), SurfaceType::Enriques | SurfaceType::Bielliptic)
        && c.components().len() > 1;
    let (config, templates, source) = match (needs_cover, cover) {
        (false, _) => (c, t, "direct"),
        (true, Some(m)) => (&m.total, &m.total_transfers, "cover"),
        (true, None) => {
            return Ok(IndexReport {
                index: None,
                source: "unavailable".into(),
            })
        }
    };
    let e2 = compute_e2(&build_e1(config, templates)?)?;
    Ok(IndexReport {
        index: Some(monodromy_index(&e2)),
        source: source.into(),
    })
}

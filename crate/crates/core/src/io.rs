//! JSON configuration files.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::covers::{ComponentImage, CoverMap};
use crate::cy3::{Component3, Configuration3, DoubleSurface, QuadruplePoint, TripleCurve};
use crate::error::{Error, Result};
use crate::sncl::{Component, ComponentKind, ComponentTag, Configuration, DoubleCurve, SurfaceType, TriplePoint};
use crate::wss::{H1Kind, TransferTemplate};
use crate::QMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    /// 2 for surfaces, 3 for threefolds.
    #[serde(default = "two")]
    pub dimension: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<SurfaceType>,
    #[serde(default)]
    pub field_char: u64,
    #[serde(default)]
    pub wmc_assumed: bool,
    /// Declared triviality of the canonical sheaf.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_trivial: Option<bool>,
}

fn two() -> u8 {
    2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<ComponentTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mori_fibre_birational: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_unirational: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideEntry {
    pub kind: H1Kind,
    pub component: String,
    pub curve: String,
    /// Rows of entries: integers, or strings such as `"-1/2"`.
    pub matrix: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransfersEntry {
    #[serde(default)]
    pub overrides: Vec<OverrideEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverEntry {
    pub degree: usize,
    pub total: Box<ConfigFile>,
    pub component_map: BTreeMap<String, ComponentImage>,
    pub curve_map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub meta: Meta,
    pub components: Vec<ComponentEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub double_curves: Vec<DoubleCurve>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triple_points: Vec<TriplePoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub double_surfaces: Vec<DoubleSurface>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triple_curves: Vec<TripleCurve>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quadruple_points: Vec<QuadruplePoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transfers: Option<TransfersEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverEntry>,
}

/// A surface file after checking.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceInput {
    pub config: Configuration,
    pub transfers: TransferTemplate,
    pub cover: Option<CoverMap>,
    pub meta: Meta,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreefoldInput {
    pub config: Configuration3,
    pub meta: Meta,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Surface(SurfaceInput),
    Threefold(ThreefoldInput),
}

fn entry_value(x: &BigRational) -> Value {
    if x.is_integer() {
        if let Ok(v) = i64::try_from(x.to_integer()) {
            return Value::from(v);
        }
    }
    Value::from(x.to_string())
}

fn parse_entry(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::Invalid(format!("matrix entry {n} is not an integer"))),
        Value::String(s) => {
            let parsed = match s.split_once('/') {
                Some((p, q)) => p.trim().parse::<BigInt>().ok().zip(q.trim().parse::<BigInt>().ok()),
                None => s.trim().parse::<BigInt>().ok().map(|p| (p, BigInt::one())),
            };
            match parsed {
                Some((_, q)) if q == BigInt::from(0) => Err(Error::Invalid(format!("zero denominator in '{s}'"))),
                Some((p, q)) => Ok(BigRational::new(p, q)),
                None => Err(Error::Invalid(format!("bad matrix entry '{s}'"))),
            }
        }
        other => Err(Error::Invalid(format!("bad matrix entry {other}"))),
    }
}

impl TransfersEntry {
    pub fn from_template(t: &TransferTemplate) -> Option<Self> {
        if t.overrides.is_empty() {
            return None;
        }
        let overrides = t
            .overrides
            .iter()
            .map(|((kind, component, curve), m)| OverrideEntry {
                kind: *kind,
                component: component.clone(),
                curve: curve.clone(),
                matrix: m.to_rows().iter().map(|r| r.iter().map(entry_value).collect()).collect(),
            })
            .collect();
        Some(TransfersEntry { overrides })
    }

    pub fn to_template(&self) -> Result<TransferTemplate> {
        let mut t = TransferTemplate::new();
        for o in &self.overrides {
            let rows = o
                .matrix
                .iter()
                .map(|r| r.iter().map(parse_entry).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let cols = rows.first().map_or(0, |r| r.len());
            let m = QMatrix::from_rows(rows, cols)?;
            t = t.with_override(o.kind, &o.component, &o.curve, m);
        }
        Ok(t)
    }
}

fn meta(dimension: u8, class: Option<SurfaceType>) -> Meta {
    Meta {
        dimension,
        class,
        field_char: 0,
        wmc_assumed: false,
        omega_trivial: None,
    }
}

impl ConfigFile {
    pub fn from_surface(c: &Configuration, t: &TransferTemplate, cover: Option<&CoverMap>) -> Self {
        let components = c
            .components()
            .iter()
            .map(|x| ComponentEntry {
                id: x.id.clone(),
                kind: Some(x.kind.tag),
                b2: x.kind.b2_declared.then_some(x.kind.b2()),
                mori_fibre_birational: None,
                base_unirational: None,
            })
            .collect();
        ConfigFile {
            meta: meta(2, Some(c.surface_class())),
            components,
            double_curves: c.double_curves().to_vec(),
            triple_points: c.triple_points().to_vec(),
            double_surfaces: vec![],
            triple_curves: vec![],
            quadruple_points: vec![],
            transfers: TransfersEntry::from_template(t),
            cover: cover.map(|m| CoverEntry {
                degree: m.degree,
                total: Box::new(ConfigFile::from_surface(&m.total, &m.total_transfers, None)),
                component_map: m.component_map.clone(),
                curve_map: m.curve_map.clone(),
            }),
        }
    }

    pub fn from_threefold(c: &Configuration3) -> Self {
        let components = c
            .components()
            .iter()
            .map(|x| ComponentEntry {
                id: x.id.clone(),
                kind: None,
                b2: None,
                mori_fibre_birational: Some(x.mori_fibre_birational),
                base_unirational: Some(x.base_unirational),
            })
            .collect();
        ConfigFile {
            meta: meta(3, None),
            components,
            double_curves: vec![],
            triple_points: vec![],
            double_surfaces: c.double_surfaces().to_vec(),
            triple_curves: c.triple_curves().to_vec(),
            quadruple_points: c.quadruple_points().to_vec(),
            transfers: None,
            cover: None,
        }
    }

    fn to_configuration(&self) -> Result<(Configuration, TransferTemplate)> {
        let class = self
            .meta
            .class
            .ok_or_else(|| Error::Invalid("surface file without meta.class".into()))?;
        if !(self.double_surfaces.is_empty() && self.triple_curves.is_empty() && self.quadruple_points.is_empty()) {
            return Err(Error::Invalid("threefold sections in a surface file".into()));
        }
        let components = self
            .components
            .iter()
            .map(|e| {
                let tag = e
                    .kind
                    .ok_or_else(|| Error::Invalid(format!("component '{}' has no kind", e.id)))?;
                if e.mori_fibre_birational.is_some() || e.base_unirational.is_some() {
                    return Err(Error::Invalid(format!("component '{}' has threefold fields", e.id)));
                }
                let kind = match e.b2 {
                    Some(b2) => ComponentKind::with_b2(tag, b2)?,
                    None => ComponentKind::new(tag),
                };
                Ok(Component::new(e.id.clone(), kind))
            })
            .collect::<Result<Vec<_>>>()?;
        let c = Configuration::new(class, components, self.double_curves.clone(), self.triple_points.clone())?;
        let t = self.transfers.as_ref().map_or(Ok(TransferTemplate::new()), |t| t.to_template())?;
        Ok((c, t))
    }

    fn to_threefold(&self) -> Result<Configuration3> {
        if !(self.double_curves.is_empty() && self.triple_points.is_empty())
            || self.transfers.is_some()
            || self.cover.is_some()
            || self.meta.class.is_some()
        {
            return Err(Error::Invalid("surface sections in a threefold file".into()));
        }
        let components = self
            .components
            .iter()
            .map(|e| {
                if e.kind.is_some() || e.b2.is_some() {
                    return Err(Error::Invalid(format!("component '{}' has surface fields", e.id)));
                }
                let flag = |v: Option<bool>, name: &str| {
                    v.ok_or_else(|| Error::Invalid(format!("component '{}' lacks {name}", e.id)))
                };
                Ok(Component3 {
                    id: e.id.clone(),
                    mori_fibre_birational: flag(e.mori_fibre_birational, "mori_fibre_birational")?,
                    base_unirational: flag(e.base_unirational, "base_unirational")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Configuration3::new(
            components,
            self.double_surfaces.clone(),
            self.triple_curves.clone(),
            self.quadruple_points.clone(),
        )
    }

    /// Checks the file and builds the configuration it describes.
    pub fn to_input(&self) -> Result<Input> {
        match self.meta.dimension {
            2 => {
                let (config, transfers) = self.to_configuration()?;
                let cover = match &self.cover {
                    None => None,
                    Some(e) => {
                        if e.total.cover.is_some() {
                            return Err(Error::Invalid("nested cover".into()));
                        }
                        let (total, total_transfers) = e.total.to_configuration()?;
                        Some(CoverMap {
                            degree: e.degree,
                            total,
                            total_transfers,
                            base: config.clone(),
                            component_map: e.component_map.clone(),
                            curve_map: e.curve_map.clone(),
                        })
                    }
                };
                Ok(Input::Surface(SurfaceInput {
                    config,
                    transfers,
                    cover,
                    meta: self.meta.clone(),
                }))
            }
            3 => Ok(Input::Threefold(ThreefoldInput {
                config: self.to_threefold()?,
                meta: self.meta.clone(),
            })),
            d => Err(Error::Invalid(format!("meta.dimension must be 2 or 3, got {d}"))),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

/// Parses file text. Syntax and schema errors come back as
/// [`Error::Invalid`].
pub fn parse(text: &str) -> Result<ConfigFile> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("parse error: {e}")))
}

pub fn read_input(text: &str) -> Result<Input> {
    parse(text)?.to_input()
}

//! The coherent spectral sequence `E_1^{s,t} = H^t(Y^{(s)}, O) => H^{s+t}(Y, O)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{is_prime, ChainComplex};
use crate::sncl::{stratum_tables, Configuration, SurfaceType};
use crate::wss::{q, table_as_list, H1Kind, TransferTemplate};
use crate::QMatrix;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoherentPage {
    pub field_char: u64,
    #[serde(serialize_with = "table_as_list")]
    pub e1: BTreeMap<(usize, usize), usize>,
    #[serde(serialize_with = "table_as_list")]
    pub e2: BTreeMap<(usize, usize), usize>,
    /// `(h^0, h^1, h^2)(Y, O_Y)`.
    pub h: [usize; 3],
    #[serde(skip)]
    pub rows: Vec<ChainComplex<BigRational>>,
}

impl CoherentPage {
    pub fn e2(&self, s: usize, t: usize) -> usize {
        self.e2.get(&(s, t)).copied().unwrap_or(0)
    }
}

/// The base field must have characteristic 0 or a prime above 3.
pub fn check_field_char(p: u64) -> Result<()> {
    if p == 0 || (p > 3 && is_prime(p)) {
        Ok(())
    } else {
        Err(Error::FieldChar(p))
    }
}

fn row(dims: [usize; 3], d0: QMatrix, d1: QMatrix) -> Result<ChainComplex<BigRational>> {
    // cochain degree s sits in chain degree -s
    let ds = BTreeMap::from([(0, d0), (-1, d1)]);
    ChainComplex::new(-2, vec![dims[2], dims[1], dims[0]], ds)
}

pub fn coherent_cohomology(c: &Configuration, t: &TransferTemplate, field_char: u64) -> Result<CoherentPage> {
    check_field_char(field_char)?;
    let tables = stratum_tables(c);
    let (nc, nd, np) = (c.components().len(), c.double_curves().len(), c.triple_points().len());

    let mut d0 = QMatrix::zeros(nd, nc);
    for curve in 0..nd {
        let (lo, hi) = c.curve_ends(curve);
        d0.set(curve, lo, q(1));
        d0.set(curve, hi, q(-1));
    }
    let mut d1 = QMatrix::zeros(np, nd);
    for p in 0..np {
        for f in c.point_faces(p) {
            d1.set(p, f, q(c.point_sign(p, f)));
        }
    }
    let row0 = row([nc, nd, np], d0, d1)?;

    let comp_off: Vec<usize> = c
        .components()
        .iter()
        .scan(0, |acc, x| {
            let o = *acc;
            *acc += x.kind.coherent[1];
            Some(o)
        })
        .collect();
    let curve_off: Vec<usize> = c
        .double_curves()
        .iter()
        .scan(0, |acc, x| {
            let o = *acc;
            *acc += x.genus as usize;
            Some(o)
        })
        .collect();
    let (h1_comps, h1_curves) = (tables.coherent(0, 1), tables.coherent(1, 1));
    let mut r1 = QMatrix::zeros(h1_curves, h1_comps);
    for a in 0..nc {
        for (curve, _) in c.curves_on(a) {
            let m = t.h1_map(c, H1Kind::Coherent, a, curve)?;
            let m = m.scale(&q(c.curve_sign(curve, a)));
            r1.set_block(curve_off[curve], comp_off[a], &m);
        }
    }
    let row1 = row([h1_comps, h1_curves, 0], r1, QMatrix::zeros(0, h1_curves))?;
    let h2 = tables.coherent(0, 2);
    let row2 = row([h2, 0, 0], QMatrix::zeros(0, h2), QMatrix::zeros(0, 0))?;

    let mut e1 = BTreeMap::new();
    let mut e2 = BTreeMap::new();
    let mut h = [0usize; 3];
    for (tt, r) in [&row0, &row1, &row2].into_iter().enumerate() {
        for (n, d) in r.homology_dims(field_char)? {
            let s = (-n) as usize;
            if r.dim(n) > 0 {
                e1.insert((s, tt), r.dim(n));
            }
            if d > 0 {
                e2.insert((s, tt), d);
                if s + tt < 3 {
                    h[s + tt] += d;
                }
            }
        }
    }
    Ok(CoherentPage {
        field_char,
        e1,
        e2,
        h,
        rows: vec![row0, row1, row2],
    })
}

/// `h^1(O)` of a logarithmic surface of each class.
pub fn expected_h1(class: SurfaceType) -> usize {
    match class {
        SurfaceType::K3 | SurfaceType::Enriques => 0,
        SurfaceType::Abelian => 2,
        SurfaceType::Bielliptic => 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogClassVerdict {
    pub class: SurfaceType,
    pub h1: usize,
    pub expected_h1: usize,
    pub ok: bool,
    /// Triviality (or torsion) of the canonical sheaf, as declared by the
    /// input; it is never computed.
    pub omega_declared: Option<bool>,
}

pub fn check_logarithmic_class(c: &Configuration, page: &CoherentPage, omega_declared: Option<bool>) -> LogClassVerdict {
    let class = c.surface_class();
    let expected = expected_h1(class);
    LogClassVerdict {
        class,
        h1: page.h[1],
        expected_h1: expected,
        ok: page.h[1] == expected,
        omega_declared,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiVerdict {
    pub strata: [i64; 3],
    pub chi: i64,
    pub expected: i64,
    pub ok: bool,
}

/// `χ(O_Y) = Σ (-1)^s χ(O_{Y^{(s)}})` against the class value.
pub fn check_chi_flatness(c: &Configuration) -> ChiVerdict {
    let tables = stratum_tables(c);
    let strata = [tables.chi(0), tables.chi(1), tables.chi(2)];
    let chi = strata[0] - strata[1] + strata[2];
    let expected = c.surface_class().chi();
    ChiVerdict {
        strata,
        chi,
        expected,
        ok: chi == expected,
    }
}

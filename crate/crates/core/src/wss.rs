//! The weight spectral sequence of a surface configuration.
//!
//! `E_1^{s,t} = ⊕_{j ≥ max(0,-s)} H^{t-2j}(Y^{(s+2j)})(-j)`. Each summand is
//! labelled `(j, k, q)` with `k = s + 2j` the stratum and `q = t - 2j` the
//! cohomological degree. `d_1` has a restriction part
//! `(j, k, q) -> (j, k+1, q)` and a Gysin part `(j, k, q) -> (j-1, k-1, q+2)`.
//!
//! `H^0` and `H^4` pieces are cochains on the dual complex. `H^1` pieces use
//! transfer templates. `H^2` of a component is modelled by a rational lattice
//! holding the classes of its double curves; the Gysin map sends a curve to
//! its class and restriction pairs a class with the curve.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{rank, ChainComplex};
use crate::sncl::{local_cases, stratum_tables, ComponentTag, Configuration, CurveRole, LocalCase, StratumTables};
use crate::QMatrix;

/// Serializes a `(s, t) -> dim` map as a list of `[s, t, dim]`.
pub(crate) fn table_as_list<S, A, B>(m: &BTreeMap<(A, B), usize>, s: S) -> std::result::Result<S::Ok, S::Error>
where
    S: serde::Serializer,
    A: Serialize,
    B: Serialize,
{
    s.collect_seq(m.iter().map(|((a, b), d)| (a, b, d)))
}

pub(crate) fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Which `H^1` a template acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum H1Kind {
    Betti,
    Coherent,
}

/// Restriction maps on `H^1` for each (component, curve) flag.
///
/// Defaults: rulings and 2-rulings restrict isomorphically (identity in the
/// fixed bases), rational components have no `H^1`. Overrides replace the
/// default for a single flag.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TransferTemplate {
    pub overrides: BTreeMap<(H1Kind, String, String), QMatrix>,
}

impl TransferTemplate {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_override(mut self, kind: H1Kind, component: &str, curve: &str, m: QMatrix) -> Self {
        self.overrides.insert((kind, component.into(), curve.into()), m);
        self
    }

    /// Restriction `H^1(Y_a) -> H^1(C)` as a `target x source` matrix.
    pub fn h1_map(&self, c: &Configuration, kind: H1Kind, a: usize, curve: usize) -> Result<QMatrix> {
        let comp = &c.components()[a];
        let dc = &c.double_curves()[curve];
        let (rows, cols) = match kind {
            H1Kind::Betti => (2 * dc.genus as usize, comp.kind.betti[1]),
            H1Kind::Coherent => (dc.genus as usize, comp.kind.coherent[1]),
        };
        let key = (kind, comp.id.clone(), dc.id.clone());
        if let Some(m) = self.overrides.get(&key) {
            if m.shape() != (rows, cols) {
                return Err(Error::Shape(format!(
                    "override for {} -> {} is {:?}, expected {:?}",
                    comp.id,
                    dc.id,
                    m.shape(),
                    (rows, cols)
                )));
            }
            return Ok(m.clone());
        }
        if rows == 0 || cols == 0 {
            return Ok(QMatrix::zeros(rows, cols));
        }
        let role = c.role(curve, a);
        match (comp.kind.tag, role) {
            (ComponentTag::EllipticRuled, Some(CurveRole::Ruling | CurveRole::TwoRuling)) if rows == cols => {
                Ok(QMatrix::identity(rows))
            }
            _ => Err(Error::MissingTemplate(format!(
                "{kind:?} H1 restriction {} -> {}",
                comp.id, dc.id
            ))),
        }
    }

    /// Checks every flag of `c` has a usable template.
    pub fn check(&self, c: &Configuration) -> Result<()> {
        for a in 0..c.components().len() {
            for (curve, _) in c.curves_on(a) {
                self.h1_map(c, H1Kind::Betti, a, curve)?;
                self.h1_map(c, H1Kind::Coherent, a, curve)?;
            }
        }
        Ok(())
    }
}

/// A rational lattice for `H^2` of one component with coordinates of the
/// classes of its double curves.
#[derive(Clone, Debug, PartialEq)]
pub struct H2Model {
    pub form: QMatrix,
    pub classes: BTreeMap<usize, Vec<BigRational>>,
}

impl H2Model {
    /// The intersection pairing.
    pub fn intersection(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..y.len() {
                acc += x[i].clone() * self.form.get(i, j).clone() * y[j].clone();
            }
        }
        acc
    }

    /// `Q * class`, the functional "intersect with the curve".
    fn dual(&self, x: &[BigRational]) -> Vec<BigRational> {
        (0..self.form.rows())
            .map(|i| {
                (0..x.len())
                    .fold(BigRational::zero(), |acc, j| acc + self.form.get(i, j).clone() * x[j].clone())
            })
            .collect()
    }
}

/// Hyperbolic plane on `(s, f)` plus a negative definite rest.
fn ruled_form(b2: usize) -> QMatrix {
    let mut m = QMatrix::zeros(b2, b2);
    m.set(0, 1, q(1));
    m.set(1, 0, q(1));
    for i in 2..b2 {
        m.set(i, i, q(-1));
    }
    m
}

/// The default class model of component `a`, or `None` when `b_2` is too
/// small to hold the curve classes.
///
/// Elliptic boundary curves have square zero and sit on the `s` axis of a
/// hyperbolic plane (a 2-ruling is `2s`). A cycle of rational curves uses
/// its intersection matrix, with each curve of square `-1` on both of its
/// sides so that the squares add up to `-T_C = -2`.
pub fn h2_model(c: &Configuration, a: usize, case: LocalCase) -> Option<H2Model> {
    let b2 = c.components()[a].kind.b2();
    let on = c.curves_on(a);
    match case {
        LocalCase::Smooth => Some(H2Model {
            form: QMatrix::identity(b2),
            classes: BTreeMap::new(),
        }),
        LocalCase::TwoRulings | LocalCase::OneTwoRuling | LocalCase::RationalElliptic => {
            if b2 < 2 {
                return None;
            }
            let classes = on
                .iter()
                .map(|&(curve, role)| {
                    let mut v = vec![q(0); b2];
                    v[0] = if role == CurveRole::TwoRuling { q(2) } else { q(1) };
                    (curve, v)
                })
                .collect();
            Some(H2Model {
                form: ruled_form(b2),
                classes,
            })
        }
        LocalCase::RationalCycle => {
            let n = on.len();
            let mut g = QMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let v = if i == j {
                        -1
                    } else {
                        c.shared_points(a, on[i].0, on[j].0) as i64
                    };
                    g.set(i, j, q(v));
                }
            }
            let (_, pivots) = g.transpose().rref();
            let r = pivots.len();
            if r > b2 {
                return None;
            }
            let mut form = QMatrix::zeros(b2, b2);
            for (x, &li) in pivots.iter().enumerate() {
                for (y, &lj) in pivots.iter().enumerate() {
                    form.set(x, y, g.get(li, lj).clone());
                }
            }
            for i in r..b2 {
                form.set(i, i, q(-1));
            }
            // rows of g over the chosen independent rows
            let mut basis = QMatrix::zeros(n, r);
            for (x, &li) in pivots.iter().enumerate() {
                for col in 0..n {
                    basis.set(col, x, g.get(li, col).clone());
                }
            }
            let mut classes = BTreeMap::new();
            for (i, &(curve, _)) in on.iter().enumerate() {
                let lambda = basis.solve(g.row(i))?;
                let mut v = vec![q(0); b2];
                v[..r].clone_from_slice(&lambda);
                classes.insert(curve, v);
            }
            Some(H2Model { form, classes })
        }
    }
}

/// One `H^q(Y^{(k)})(-j)` summand of an `E_1` term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub j: usize,
    pub k: usize,
    pub q: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralPage {
    pub r: usize,
    /// `dim E_r^{s,t}` for every known nonzero term.
    #[serde(serialize_with = "table_as_list")]
    pub dims: BTreeMap<(i32, i32), usize>,
    /// Rows `t` whose differentials could not be assembled; their `E_2`
    /// terms are unknown.
    pub incomplete_rows: Vec<i32>,
    /// Whether every component's `b_2` was supplied explicitly.
    pub b2_declared: bool,
    #[serde(skip)]
    pub rows: BTreeMap<i32, ChainComplex<BigRational>>,
    #[serde(skip)]
    pub summands: BTreeMap<(i32, i32), Vec<Summand>>,
    pub notes: Vec<String>,
}

pub const TRANSPOSE_NOTE: &str =
    "d1 on twisted summands uses transposed restriction maps (sign convention of the alternating restriction sum)";

impl SpectralPage {
    pub fn dim(&self, s: i32, t: i32) -> usize {
        self.dims.get(&(s, t)).copied().unwrap_or(0)
    }

    pub fn is_known(&self, t: i32) -> bool {
        !self.incomplete_rows.contains(&t)
    }

    /// `d_1 : E^{s,t} -> E^{s+1,t}` (page 1 only).
    pub fn differential(&self, s: i32, t: i32) -> Option<QMatrix> {
        self.rows.get(&t).map(|row| row.differential(-s))
    }

    /// `Σ (-1)^{s+t} dim E^{s,t}` over the known rows.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .filter(|((_, t), _)| self.is_known(*t))
            .map(|(&(s, t), &d)| if (s + t).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Dimensions as a sorted list, for reports.
    pub fn table(&self) -> Vec<(i32, i32, usize)> {
        self.dims.iter().map(|(&(s, t), &d)| (s, t, d)).collect()
    }
}

struct Builder<'a> {
    c: &'a Configuration,
    tables: StratumTables,
    templates: &'a TransferTemplate,
    models: Vec<Option<H2Model>>,
}

enum Block {
    Zero,
    Matrix(QMatrix),
    Unknown,
}

impl Builder<'_> {
    fn cells(&self, k: usize) -> usize {
        match k {
            0 => self.c.components().len(),
            1 => self.c.double_curves().len(),
            2 => self.c.triple_points().len(),
            _ => 0,
        }
    }

    fn cell_dim(&self, k: usize, cell: usize, q: usize) -> usize {
        match k {
            0 => self.tables.components[cell].0.get(q).copied().unwrap_or(0),
            1 => self.tables.curves[cell].0.get(q).copied().unwrap_or(0),
            2 => usize::from(q == 0),
            _ => 0,
        }
    }

    fn offsets(&self, k: usize, q: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells(k) + 1);
        let mut acc = 0;
        out.push(0);
        for cell in 0..self.cells(k) {
            acc += self.cell_dim(k, cell, q);
            out.push(acc);
        }
        out
    }

    fn summands(&self, s: i32, t: i32) -> Vec<Summand> {
        let mut out = Vec::new();
        let j0 = (-s).max(0) as usize;
        for j in j0..=2 {
            let k = s + 2 * j as i32;
            let qq = t - 2 * j as i32;
            if !(0..=2).contains(&k) || qq < 0 {
                continue;
            }
            let (k, qq) = (k as usize, qq as usize);
            let dim = self.tables_dim(k, qq);
            if dim > 0 {
                out.push(Summand { j, k, q: qq, dim });
            }
        }
        out
    }

    fn tables_dim(&self, k: usize, q: usize) -> usize {
        self.tables.betti(k, q)
    }

    /// The `d_1` component between two summands.
    fn block(&self, src: &Summand, dst: &Summand) -> Result<Block> {
        let c = self.c;
        let mut m = QMatrix::zeros(dst.dim, src.dim);
        let so = self.offsets(src.k, src.q);
        let to = self.offsets(dst.k, dst.q);
        let restriction = dst.j == src.j && dst.k == src.k + 1 && dst.q == src.q;
        let gysin = src.j >= 1 && dst.j == src.j - 1 && dst.k + 1 == src.k && dst.q == src.q + 2;
        if !(restriction || gysin) {
            return Ok(Block::Zero);
        }
        match (restriction, src.k, src.q) {
            (true, 0, 0) => {
                for curve in 0..c.double_curves().len() {
                    let (lo, hi) = c.curve_ends(curve);
                    m.add_to(to[curve], so[lo], q(c.curve_sign(curve, lo)));
                    m.add_to(to[curve], so[hi], q(c.curve_sign(curve, hi)));
                }
            }
            (true, 1, 0) => {
                for p in 0..c.triple_points().len() {
                    for curve in c.point_faces(p) {
                        m.add_to(to[p], so[curve], q(c.point_sign(p, curve)));
                    }
                }
            }
            (true, 0, 1) => {
                for curve in 0..c.double_curves().len() {
                    let (lo, hi) = c.curve_ends(curve);
                    for a in [lo, hi] {
                        let t = self.templates.h1_map(c, H1Kind::Betti, a, curve)?;
                        let sign = q(c.curve_sign(curve, a));
                        add_block(&mut m, to[curve], so[a], &t.scale(&sign));
                    }
                }
            }
            (true, 0, 2) => {
                for curve in 0..c.double_curves().len() {
                    let (lo, hi) = c.curve_ends(curve);
                    for a in [lo, hi] {
                        let Some(model) = &self.models[a] else {
                            return Ok(Block::Unknown);
                        };
                        let class = &model.classes[&curve];
                        let sign = q(c.curve_sign(curve, a));
                        for (i, x) in model.dual(class).into_iter().enumerate() {
                            m.add_to(to[curve], so[a] + i, sign.clone() * x);
                        }
                    }
                }
            }
            (true, _, _) => {}
            (false, 1, 0) => {
                // H^0(Y^(1)) -> H^2(Y^(0)): a curve goes to its classes
                for curve in 0..c.double_curves().len() {
                    let (lo, hi) = c.curve_ends(curve);
                    for a in [lo, hi] {
                        let Some(model) = &self.models[a] else {
                            return Ok(Block::Unknown);
                        };
                        let sign = q(c.curve_sign(curve, a));
                        for (i, x) in model.classes[&curve].iter().enumerate() {
                            m.add_to(to[a] + i, so[curve], sign.clone() * x.clone());
                        }
                    }
                }
            }
            (false, 2, 0) => {
                for p in 0..c.triple_points().len() {
                    for curve in c.point_faces(p) {
                        m.add_to(to[curve], so[p], q(c.point_sign(p, curve)));
                    }
                }
            }
            (false, 1, 1) => {
                for curve in 0..c.double_curves().len() {
                    let (lo, hi) = c.curve_ends(curve);
                    for a in [lo, hi] {
                        let t = self.templates.h1_map(c, H1Kind::Betti, a, curve)?;
                        let sign = q(c.curve_sign(curve, a));
                        add_block(&mut m, to[a], so[curve], &t.transpose().scale(&sign));
                    }
                }
            }
            (false, 1, 2) => {
                for curve in 0..c.double_curves().len() {
                    let (lo, hi) = c.curve_ends(curve);
                    for a in [lo, hi] {
                        m.add_to(to[a], so[curve], q(c.curve_sign(curve, a)));
                    }
                }
            }
            (false, _, _) => {}
        }
        Ok(Block::Matrix(m))
    }
}

fn add_block(m: &mut QMatrix, r0: usize, c0: usize, b: &QMatrix) {
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            let v = b.get(i, j);
            if !v.is_zero() {
                m.add_to(r0 + i, c0 + j, v.clone());
            }
        }
    }
}

/// Assembles `E_1` with its `d_1`. Rows whose `H^2` class model is not
/// realizable are marked incomplete rather than failing.
pub fn build_e1(c: &Configuration, t: &TransferTemplate) -> Result<SpectralPage> {
    let cases = local_cases(c);
    if let Some(a) = cases.iter().position(|x| x.is_none()) {
        return Err(Error::Precondition(format!(
            "component '{}' fails the local case analysis",
            c.components()[a].id
        )));
    }
    let models = cases
        .iter()
        .enumerate()
        .map(|(a, case)| h2_model(c, a, case.expect("checked")))
        .collect();
    let b = Builder {
        c,
        tables: stratum_tables(c),
        templates: t,
        models,
    };

    let mut dims = BTreeMap::new();
    let mut summands = BTreeMap::new();
    let mut rows = BTreeMap::new();
    let mut incomplete = Vec::new();
    for row in 0..=4 {
        let lo = -2;
        let hi = 2;
        let terms: Vec<Vec<Summand>> = (lo..=hi).map(|s| b.summands(s, row)).collect();
        let width: Vec<usize> = terms.iter().map(|x| x.iter().map(|y| y.dim).sum()).collect();
        for (i, s) in (lo..=hi).enumerate() {
            if width[i] > 0 {
                dims.insert((s, row), width[i]);
                summands.insert((s, row), terms[i].clone());
            }
        }
        // chain degree n = -s
        let mut diffs = BTreeMap::new();
        let mut known = true;
        for (i, s) in (lo..hi).enumerate() {
            let (src, dst) = (&terms[i], &terms[i + 1]);
            let mut d = QMatrix::zeros(width[i + 1], width[i]);
            let mut so = 0;
            for x in src {
                let mut to = 0;
                for y in dst {
                    match b.block(x, y)? {
                        Block::Zero => {}
                        Block::Matrix(m) => add_block(&mut d, to, so, &m),
                        Block::Unknown => known = false,
                    }
                    to += y.dim;
                }
                so += x.dim;
            }
            diffs.insert(-s, d);
        }
        // degrees -hi..=-lo in chain numbering
        let space: Vec<usize> = (lo..=hi).rev().map(|s| width[(s - lo) as usize]).collect();
        if known {
            rows.insert(row, ChainComplex::new(-hi, space, diffs)?);
        } else {
            incomplete.push(row);
        }
    }

    Ok(SpectralPage {
        r: 1,
        dims,
        incomplete_rows: incomplete,
        b2_declared: c.components().iter().all(|x| x.kind.b2_declared),
        rows,
        summands,
        notes: vec![TRANSPOSE_NOTE.into()],
    })
}

/// `E_2` as the homology of each row of `E_1`. Degeneration at `E_2` is
/// assumed; no higher differentials are computed.
pub fn compute_e2(p: &SpectralPage) -> Result<SpectralPage> {
    if p.r != 1 {
        return Err(Error::Precondition(format!("expected an E1 page, got E{}", p.r)));
    }
    let mut dims = BTreeMap::new();
    for (&t, row) in &p.rows {
        for (n, d) in row.homology_dims(0)? {
            if d > 0 {
                dims.insert((-n, t), d);
            }
        }
    }
    Ok(SpectralPage {
        r: 2,
        dims,
        incomplete_rows: p.incomplete_rows.clone(),
        b2_declared: p.b2_declared,
        rows: BTreeMap::new(),
        summands: BTreeMap::new(),
        notes: p.notes.clone(),
    })
}

/// Nilpotency index read off `E_2`: 3 if `E_2^{2,0} ≠ 0`, else 2 if
/// `E_2^{1,1} ≠ 0`, else 1.
pub fn monodromy_index(e2: &SpectralPage) -> usize {
    if e2.dim(2, 0) != 0 {
        3
    } else if e2.dim(1, 1) != 0 {
        2
    } else {
        1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryPair {
    pub r: i32,
    pub w: i32,
    pub left: (i32, i32, usize),
    pub right: (i32, i32, usize),
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub w: i32,
    pub pairs: Vec<SymmetryPair>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> Vec<(i32, i32)> {
        self.pairs
            .iter()
            .filter(|p| p.status == CheckStatus::Fail)
            .map(|p| (p.r, p.w))
            .collect()
    }
}

/// Compares `dim E_2^{-r,w+r}` with `dim E_2^{r,w-r}` for `r = 1, 2`.
pub fn check_wm_symmetry(e2: &SpectralPage, w: i32) -> SymmetryReport {
    let pairs = (1..=2)
        .map(|r| {
            let left = (-r, w + r, e2.dim(-r, w + r));
            let right = (r, w - r, e2.dim(r, w - r));
            let status = if !e2.is_known(w + r) || !e2.is_known(w - r) {
                CheckStatus::Skipped("row incomplete".into())
            } else if left.2 == right.2 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            SymmetryPair {
                r,
                w,
                left,
                right,
                status,
            }
        })
        .collect();
    SymmetryReport { w, pairs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbutmentLine {
    pub n: i32,
    pub computed: usize,
    pub expected: usize,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbutmentReport {
    pub lines: Vec<AbutmentLine>,
}

impl AbutmentReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.status != CheckStatus::Fail)
    }

    pub fn line(&self, n: i32) -> Option<&AbutmentLine> {
        self.lines.iter().find(|l| l.n == n)
    }
}

/// Compares `Σ_{s+t=n} dim E_2^{s,t}` with `b_n`. Degree 2 depends on the
/// components' `b_2` and is only checked when those were declared or
/// `opt_in` is set.
pub fn check_abutment(e2: &SpectralPage, expected: &[usize; 5], opt_in: bool) -> AbutmentReport {
    let lines = (0..=4)
        .map(|n| {
            let terms: Vec<(i32, i32)> = (-2..=2).map(|s| (s, n - s)).filter(|&(_, t)| (0..=4).contains(&t)).collect();
            let computed = terms.iter().map(|&(s, t)| e2.dim(s, t)).sum();
            let expected = expected[n as usize];
            let status = if terms.iter().any(|&(_, t)| !e2.is_known(t)) {
                CheckStatus::Skipped("row incomplete".into())
            } else if n == 2 && !(e2.b2_declared || opt_in) {
                CheckStatus::Skipped("opt-in: component b2 values are defaults".into())
            } else if computed == expected {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            AbutmentLine {
                n,
                computed,
                expected,
                status,
            }
        })
        .collect();
    AbutmentReport { lines }
}

/// Rank of `d_1 : E^{s,t} -> E^{s+1,t}` on a page 1.
pub fn d1_rank(p: &SpectralPage, s: i32, t: i32) -> Option<usize> {
    p.differential(s, t).map(|m| rank(&m))
}

/// `true` when every stored `d_1` composes to zero with the next one.
pub fn d1_squares_to_zero(p: &SpectralPage) -> bool {
    p.rows.values().all(|row| {
        row.degrees().all(|n| {
            let a = row.differential(n);
            let b = row.differential(n - 1);
            (&b * &a).is_zero()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sncl::{Component, ComponentKind, DoubleCurve, Incidence, SurfaceType};

    fn inc(c: &str, r: CurveRole) -> Incidence {
        Incidence {
            component: c.into(),
            role: r,
        }
    }

    fn k3_chain(n: usize) -> Configuration {
        let mut comps = Vec::new();
        for i in 0..n {
            let tag = if i == 0 || i == n - 1 {
                ComponentTag::Rational
            } else {
                ComponentTag::EllipticRuled
            };
            comps.push(Component::new(format!("Y{i}"), ComponentKind::new(tag)));
        }
        let curves = (0..n - 1)
            .map(|i| {
                let role = |k: usize| {
                    if k == 0 || k == n - 1 {
                        CurveRole::EllipticOnRational
                    } else {
                        CurveRole::Ruling
                    }
                };
                DoubleCurve {
                    id: format!("C{i}"),
                    genus: 1,
                    left: inc(&format!("Y{i}"), role(i)),
                    right: inc(&format!("Y{}", i + 1), role(i + 1)),
                    triple_point_count: 0,
                }
            })
            .collect();
        Configuration::new(SurfaceType::K3, comps, curves, vec![]).unwrap()
    }

    #[test]
    fn k3_chain_page() {
        let c = k3_chain(3);
        let e1 = build_e1(&c, &TransferTemplate::new()).unwrap();
        assert_eq!(e1.dim(0, 1), 2);
        assert_eq!(e1.dim(1, 1), 4);
        assert!(d1_squares_to_zero(&e1));
        let e2 = compute_e2(&e1).unwrap();
        assert_eq!(e2.dim(1, 1), 2);
        assert_eq!(e2.dim(2, 0), 0);
        assert_eq!(monodromy_index(&e2), 2);
        // default b2 = 1 on the rational ends cannot hold an elliptic class
        assert!(e2.incomplete_rows.contains(&2));
        assert_eq!(e1.euler_characteristic(), e2.euler_characteristic());
    }

    #[test]
    fn type_one_page() {
        let c = Configuration::new(
            SurfaceType::K3,
            vec![Component::new("X", ComponentKind::new(ComponentTag::K3))],
            vec![],
            vec![],
        )
        .unwrap();
        let e1 = build_e1(&c, &TransferTemplate::new()).unwrap();
        let e2 = compute_e2(&e1).unwrap();
        assert_eq!(e2.table(), vec![(0, 0, 1), (0, 2, 22), (0, 4, 1)]);
        assert_eq!(monodromy_index(&e2), 1);
        assert!(check_wm_symmetry(&e2, 1).passed());
        assert!(check_abutment(&e2, &SurfaceType::K3.betti(), false).passed());
    }

    #[test]
    fn corrupted_page_fails_symmetry() {
        let mut e2 = SpectralPage {
            r: 2,
            dims: BTreeMap::new(),
            incomplete_rows: vec![],
            b2_declared: true,
            rows: BTreeMap::new(),
            summands: BTreeMap::new(),
            notes: vec![],
        };
        e2.dims.insert((-1, 2), 1);
        let rep = check_wm_symmetry(&e2, 1);
        assert_eq!(rep.failures(), vec![(1, 1)]);
    }

    #[test]
    fn missing_template() {
        let c = k3_chain(3);
        let t = TransferTemplate::new().with_override(H1Kind::Betti, "Y1", "C0", QMatrix::identity(3));
        assert!(matches!(build_e1(&c, &t), Err(Error::Shape(_))));
    }
}

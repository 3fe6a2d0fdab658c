use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use semistable::cohss::{check_chi_flatness, check_logarithmic_class, coherent_cohomology};
use semistable::covers::{check_type_transfer, monodromy_index_via_cover, validate_cover};
use semistable::cy3::{
    check_anticanonical_connectedness, check_maximal_intersection, classify_cy4, cone_structure, e2_30, n3_nonzero,
};
use semistable::exactla::{nilpotency_index, rank, wedge_square};
use semistable::fixtures::{self, CY3_NAMES, NAMES};
use semistable::io::{read_input, ConfigFile, Input, SurfaceInput, ThreefoldInput};
use semistable::neron::{monodromy_on_h1, type_from_rank, UniformizationDatum};
use semistable::sncl::{classify, dual_graph, validate_local};
use semistable::wss::{build_e1, check_abutment, check_wm_symmetry, compute_e2, monodromy_index, SpectralPage};
use semistable::Error;
use serde_json::{json, Value};

use crate::{Cli, Command, Format};

/// A finished check: its verdict, a JSON report and text lines.
struct Outcome {
    ok: bool,
    report: Value,
    text: Vec<String>,
}

/// Failures that prevent a report: unreadable, unparsable or structurally
/// invalid input.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type Run = Result<Outcome, InputError>;

/// Returns the exit code and either the stdout text or an error message.
pub fn run(cli: &Cli) -> (u8, Result<String, String>) {
    if let Command::Examples { name, n, out } = &cli.command {
        return examples(name.as_deref(), *n, out.as_deref());
    }
    let result = match &cli.command {
        Command::Validate { path } => load(path).and_then(|i| validate(&i)),
        Command::Classify { path } => load(path).and_then(|i| classify_cmd(cli, &i)),
        Command::Spectral { path, check_h2 } => load_surface(path).and_then(|s| spectral(&s, *check_h2)),
        Command::Coherent { path } => load_surface(path).and_then(|s| coherent(cli, &s)),
        Command::Cover { path } => load_surface(path).and_then(|s| cover(&s)),
        Command::Neron { rank } => neron(*rank),
        Command::Cy3 { path } => load_threefold(path).and_then(|t| cy3(cli, &t)),
        Command::Examples { .. } => unreachable!(),
    };
    match result {
        Ok(o) => {
            let code = if o.ok { 0 } else { 1 };
            let out = match cli.format {
                Format::Json => {
                    let mut report = o.report;
                    report["ok"] = json!(o.ok);
                    pretty(&report)
                }
                Format::Text => {
                    let mut s = o.text.join("\n");
                    s.push_str(if o.ok { "\nresult: pass\n" } else { "\nresult: fail\n" });
                    s
                }
            };
            (code, Ok(out))
        }
        Err(InputError(msg)) => match cli.format {
            Format::Json => (2, Ok(pretty(&json!({"ok": false, "error": msg})))),
            Format::Text => (2, Err(msg)),
        },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn load(path: &Path) -> Result<Input, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    read_input(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_surface(path: &Path) -> Result<SurfaceInput, InputError> {
    match load(path)? {
        Input::Surface(s) => Ok(s),
        Input::Threefold(_) => Err(InputError(format!("{}: expected a surface file", path.display()))),
    }
}

fn load_threefold(path: &Path) -> Result<ThreefoldInput, InputError> {
    match load(path)? {
        Input::Threefold(t) => Ok(t),
        Input::Surface(_) => Err(InputError(format!("{}: expected a threefold file", path.display()))),
    }
}

fn field_char(cli: &Cli, file: u64) -> u64 {
    cli.field_char.unwrap_or(file)
}

fn validate(input: &Input) -> Run {
    match input {
        Input::Surface(s) => validate_surface(s),
        Input::Threefold(t) => validate_threefold(t),
    }
}

fn validate_surface(s: &SurfaceInput) -> Run {
    let c = &s.config;
    let verdicts = validate_local(c);
    let mut violations: Vec<Value> = verdicts.iter().flat_map(|v| v.violations.iter().map(to_json)).collect();
    if let Err(e) = dual_graph(c) {
        violations.push(json!({"at": "dual-graph", "clause": "connected", "detail": e.to_string()}));
    }
    if let Err(e) = s.transfers.check(c) {
        violations.push(json!({"at": "transfers", "clause": "transfer-template", "detail": e.to_string()}));
    }
    let mut text = vec![format!("class: {}", c.surface_class())];
    for v in &verdicts {
        let case = v.case.map_or("none".to_string(), |k| format!("{k:?}"));
        text.push(format!("{}: {case}", v.component));
    }
    for v in &violations {
        let field = |k: &str| v[k].as_str().unwrap_or_default().to_string();
        text.push(format!("violation [{}] at {}: {}", field("clause"), field("at"), field("detail")));
    }
    Ok(Outcome {
        ok: violations.is_empty(),
        report: json!({
            "class": c.surface_class(),
            "components": to_json(&verdicts),
            "violations": violations,
        }),
        text,
    })
}

fn validate_threefold(t: &ThreefoldInput) -> Run {
    let c = &t.config;
    let mi = check_maximal_intersection(c);
    let divisors = check_anticanonical_connectedness(c);
    let counts = c.dual_complex().counts();
    let mut text = vec![
        format!("cells: {counts:?}"),
        format!("quadruple point: {}", mi.has_quadruple_point),
        format!("every component has one: {}", mi.every_component),
    ];
    for d in divisors.iter().filter(|d| !d.ok) {
        text.push(format!("{}: boundary divisor has pieces {:?}", d.component, d.pieces));
    }
    Ok(Outcome {
        ok: mi.has_quadruple_point && divisors.iter().all(|d| d.ok),
        report: json!({
            "cells": counts,
            "maximal_intersection": to_json(&mi),
            "anticanonical": to_json(&divisors),
        }),
        text,
    })
}

fn classify_cmd(cli: &Cli, input: &Input) -> Run {
    let s = match input {
        Input::Surface(s) => s,
        Input::Threefold(t) => return cy3(cli, t),
    };
    let c = &s.config;
    let verdict = match classify(c) {
        Ok(v) => v,
        Err(r) => {
            let mut text = vec![format!("class: {}", r.class), "type: rejected".into()];
            text.extend(r.failures.iter().map(|f| format!("failed [{}]: {}", f.name, f.detail)));
            return Ok(Outcome {
                ok: false,
                report: json!({"class": r.class, "rejection": to_json(&r)}),
                text,
            });
        }
    };
    let index = monodromy_index_via_cover(c, &s.transfers, s.cover.as_ref())?;
    let page = coherent_cohomology(c, &s.transfers, field_char(cli, s.meta.field_char))?;
    let agreement = index.index.map(|i| i == verdict.kind.index());
    let index_text = match index.index {
        Some(i) => format!("{i} ({})", index.source),
        None => "n/a (needs a cover)".into(),
    };
    let text = vec![
        format!("class: {}", verdict.class),
        format!("type: {}", verdict.kind),
        format!("shape: {:?}", verdict.shape),
        format!("dual complex: {}", verdict.gamma),
        format!("monodromy index: {index_text}"),
        format!("coherent h: {:?}", page.h),
        match agreement {
            Some(true) => "type and index agree".into(),
            Some(false) => "type and index DISAGREE".into(),
            None => "type and index: not compared".into(),
        },
    ];
    Ok(Outcome {
        ok: agreement != Some(false),
        report: json!({
            "class": verdict.class,
            "type": verdict.kind,
            "shape": verdict.shape,
            "gamma": to_json(&verdict.gamma),
            "diagnostics": to_json(&verdict.diagnostics),
            "monodromy_index": index.index,
            "index_source": index.source,
            "coherent_h": page.h,
            "agreement": agreement,
        }),
        text,
    })
}

fn grid(p: &SpectralPage) -> Vec<String> {
    let mut out = Vec::new();
    for t in (0..=4).rev() {
        let mut line = format!("  t={t} |");
        for s in -2..=2 {
            let cell = if p.is_known(t) { p.dim(s, t).to_string() } else { "?".into() };
            let _ = write!(line, "{cell:>5}");
        }
        out.push(line);
    }
    out.push(format!("       +{}", "-".repeat(25)));
    out.push(format!("        {}", (-2..=2).map(|s| format!("{s:>5}")).collect::<String>()));
    out
}

fn spectral(s: &SurfaceInput, check_h2: bool) -> Run {
    let c = &s.config;
    let e1 = match build_e1(c, &s.transfers) {
        Ok(p) => p,
        Err(e @ Error::Precondition(_)) => {
            return Ok(Outcome {
                ok: false,
                report: json!({"error": e.to_string()}),
                text: vec![e.to_string()],
            })
        }
        Err(e) => return Err(e.into()),
    };
    let e2 = compute_e2(&e1)?;
    let symmetry: Vec<_> = (0..=4).map(|w| check_wm_symmetry(&e2, w)).collect();
    let abutment = check_abutment(&e2, &c.surface_class().betti(), check_h2);
    let ok = symmetry.iter().all(|r| r.passed()) && abutment.passed();
    let mut text = vec!["E1:".to_string()];
    text.extend(grid(&e1));
    text.push("E2:".into());
    text.extend(grid(&e2));
    text.push(format!("monodromy index of this page: {}", monodromy_index(&e2)));
    for line in &abutment.lines {
        text.push(format!("H^{}: {} (expected {}) {:?}", line.n, line.computed, line.expected, line.status));
    }
    for r in &symmetry {
        for (rr, w) in r.failures() {
            text.push(format!("symmetry fails: r={rr}, w={w}"));
        }
    }
    text.extend(e2.notes.iter().map(|n| format!("note: {n}")));
    Ok(Outcome {
        ok,
        report: json!({
            "e1": to_json(&e1),
            "e2": to_json(&e2),
            "monodromy_index": monodromy_index(&e2),
            "symmetry": to_json(&symmetry),
            "abutment": to_json(&abutment),
        }),
        text,
    })
}

fn coherent(cli: &Cli, s: &SurfaceInput) -> Run {
    let c = &s.config;
    let page = coherent_cohomology(c, &s.transfers, field_char(cli, s.meta.field_char))?;
    let log = check_logarithmic_class(c, &page, s.meta.omega_trivial);
    let chi = check_chi_flatness(c);
    let text = vec![
        format!("field characteristic: {}", page.field_char),
        format!("h: {:?}", page.h),
        format!("h1 = {} (expected {} for {})", log.h1, log.expected_h1, log.class),
        format!("omega trivial: {}", log.omega_declared.map_or("not declared".into(), |b| b.to_string())),
        format!("chi = {} (expected {}), strata {:?}", chi.chi, chi.expected, chi.strata),
    ];
    Ok(Outcome {
        ok: log.ok && chi.ok,
        report: json!({
            "page": to_json(&page),
            "logarithmic_class": to_json(&log),
            "chi": to_json(&chi),
        }),
        text,
    })
}

fn cover(s: &SurfaceInput) -> Run {
    let m = s
        .cover
        .as_ref()
        .ok_or_else(|| InputError("file has no cover section".into()))?;
    let v = validate_cover(m);
    let t = check_type_transfer(m);
    let kind = |r: &Result<semistable::sncl::TypeVerdict, semistable::sncl::Rejection>| {
        r.as_ref().map_or("rejected".to_string(), |v| v.kind.to_string())
    };
    let mut text = vec![
        format!("degree: {}", m.degree),
        format!("total: {} type {}", m.total.surface_class(), kind(&t.total)),
        format!("base: {} type {}", m.base.surface_class(), kind(&t.base)),
        format!("types equal: {}", t.equal),
    ];
    text.extend(v.violations.iter().map(|x| format!("violation [{}]: {}", x.rule, x.detail)));
    Ok(Outcome {
        ok: v.passed() && t.equal,
        report: json!({
            "degree": m.degree,
            "violations": to_json(&v.violations),
            "transfer": to_json(&t),
        }),
        text,
    })
}

fn neron(r: usize) -> Run {
    let d = UniformizationDatum::new(r)?;
    let n = monodromy_on_h1(d);
    let index = nilpotency_index(&wedge_square(&n))?;
    let kind = type_from_rank(d);
    let rows: Vec<Vec<String>> = n
        .matrix()
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect();
    Ok(Outcome {
        ok: true,
        report: json!({
            "torus_rank": d.torus_rank,
            "abelian_rank": d.abelian_rank,
            "n_on_h1": rows,
            "rank_n": rank(n.matrix()),
            "index_on_h2": index,
            "type": kind,
        }),
        text: vec![
            format!("torus rank {}, abelian rank {}", d.torus_rank, d.abelian_rank),
            format!("rank of N on H^1: {}", rank(n.matrix())),
            format!("nilpotency index on H^2: {index}"),
            format!("type: {kind}"),
        ],
    })
}

fn cy3(cli: &Cli, t: &ThreefoldInput) -> Run {
    let c = &t.config;
    let v = classify_cy4(c);
    let mi = check_maximal_intersection(c);
    let divisors = check_anticanonical_connectedness(c);
    let cone = cone_structure(c);
    let e30 = e2_30(c).ok();
    let wmc = cli.wmc || t.meta.wmc_assumed;
    let n3 = e30.and_then(|d| n3_nonzero(d, wmc));
    let mut text = vec![
        format!("cells: {:?} ({})", c.dual_complex().counts(), v.triangulation),
        format!("type IV: {}", v.type_iv),
    ];
    if let Some(h) = &v.homology {
        text.push(format!("homology sphere: {} (H1 = {})", h.is_homology_sphere, h.h1));
        text.push(format!("caveat: {}", h.caveat));
    }
    text.extend(v.failures.iter().map(|f| format!("failed: {f}")));
    text.push(format!("every component has a quadruple point: {}", mi.every_component));
    text.push(format!("boundary divisors connected: {}", divisors.iter().all(|d| d.ok)));
    text.push(format!("vertex links match boundary divisors: {}", cone.iter().all(|&b| b)));
    text.push(match e30 {
        Some(d) => format!("dim E2^(3,0) = {d}"),
        None => "dim E2^(3,0): not defined".into(),
    });
    text.push(match n3 {
        Some(true) => "N^3 != 0 (assuming weight-monodromy)".into(),
        Some(false) => "N^3 = 0 on E2^(3,0) (assuming weight-monodromy)".into(),
        None => "N^3: no verdict without the weight-monodromy assumption".into(),
    });
    Ok(Outcome {
        ok: v.type_iv,
        report: json!({
            "verdict": to_json(&v),
            "maximal_intersection": to_json(&mi),
            "anticanonical": to_json(&divisors),
            "cone_structure": cone,
            "e2_30": e30,
            "n3_nonzero": n3,
        }),
        text,
    })
}

fn examples(name: Option<&str>, n: Option<usize>, out: Option<&Path>) -> (u8, Result<String, String>) {
    let Some(name) = name else {
        let mut s = String::new();
        for x in NAMES.iter().chain(CY3_NAMES) {
            let _ = writeln!(s, "{x}");
        }
        return (0, Ok(s));
    };
    let file = if CY3_NAMES.contains(&name) {
        fixtures::cy3_fixture(name).map(|c| ConfigFile::from_threefold(&c))
    } else {
        fixtures::fixture(name, n).map(|f| ConfigFile::from_surface(&f.config, &f.transfers, f.cover.as_ref()))
    };
    let text = match file {
        Ok(f) => f.to_json(),
        Err(e) => return (2, Err(e.to_string())),
    };
    match out {
        None => (0, Ok(text)),
        Some(p) => match fs::write(p, text) {
            Ok(()) => (0, Ok(format!("wrote {}\n", p.display()))),
            Err(e) => (2, Err(format!("{}: {e}", p.display()))),
        },
    }
}

//! Parallel exception enumeration and its table/JSON reports.

use std::fmt::Write as _;

use plumbing_core::chern::{candidates, evaluate, merge, EnumerationBounds, EnumerationKind, Exception};
use plumbing_core::families::{describe_reason, hj_expand, RealizabilityTables, RealizabilityVerdict, StarParams};
use plumbing_core::format_rational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::formats::rational_json;
use crate::CliError;

/// Same result as the sequential core enumeration; candidates are split
/// across `jobs` threads (`None`: rayon's default) and merged canonically.
pub fn enumerate_parallel(
    kind: EnumerationKind,
    bounds: EnumerationBounds,
    tables: &RealizabilityTables,
    jobs: Option<usize>,
) -> Result<Vec<Exception>, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| CliError::Input(e.to_string()))?;
    let found = pool
        .install(|| candidates(bounds).par_iter().map(|p| evaluate(kind, p, tables)).collect::<Result<Vec<_>, _>>())?;
    Ok(merge(found.into_iter().flatten()))
}

pub fn kind_name(kind: EnumerationKind) -> &'static str {
    match kind {
        EnumerationKind::ConjugateExceptions => "conjugate-exceptions",
        EnumerationKind::QhdExceptions => "qhd-exceptions",
    }
}

fn params_text(p: &StarParams) -> String {
    let [a, b, c] = p.legs;
    format!("<{}; {},{}; {},{}; {},{}>", p.y, a.0, a.1, b.0, b.1, c.0, c.1)
}

fn verdict_text(v: &RealizabilityVerdict) -> String {
    match v {
        RealizabilityVerdict::Yes(r) => format!("yes ({})", describe_reason(r)),
        RealizabilityVerdict::No(r) => format!("no ({})", describe_reason(r)),
        RealizabilityVerdict::Unknown => "unknown".into(),
    }
}

fn cell(s: i64, marked: bool) -> String {
    if marked {
        format!("[{s}]")
    } else {
        s.to_string()
    }
}

/// The star drawn on one row: second leg reversed, the centre, the
/// third leg, and the first leg hanging below the centre. The marked vertex
/// `v` is bracketed.
pub fn drawing(p: &StarParams, v: usize) -> String {
    let legs: Vec<Vec<i64>> = p.legs.iter().map(|&(n, l)| hj_expand(n, l).expect("valid leg")).collect();
    // Builder order: centre, first leg, second leg, third leg.
    let mut index = 1;
    let mut ids: Vec<Vec<usize>> = Vec::new();
    for leg in &legs {
        ids.push((index..index + leg.len()).collect());
        index += leg.len();
    }
    let mut row: Vec<String> = Vec::new();
    for (k, &s) in legs[1].iter().enumerate().rev() {
        row.push(cell(-s, ids[1][k] == v));
    }
    let centre_at = row.len();
    row.push(cell(-p.y, v == 0));
    for (k, &s) in legs[2].iter().enumerate() {
        row.push(cell(-s, ids[2][k] == v));
    }
    let mut top = String::from("  ");
    let mut offset = 0;
    for (i, c) in row.iter().enumerate() {
        if i > 0 {
            top.push_str(" - ");
        }
        if i == centre_at {
            offset = top.chars().count();
        }
        top.push_str(c);
    }
    let mut out = format!("{top}\n");
    for (k, &s) in legs[0].iter().enumerate() {
        let _ = writeln!(out, "{}{}", " ".repeat(offset), cell(-s, ids[0][k] == v));
    }
    out
}

pub fn table(kind: EnumerationKind, bounds: EnumerationBounds, found: &[Exception]) -> String {
    let realizable = found.iter().filter(|e| e.is_realizable()).count();
    let mut out =
        format!("{} (y <= {}): {} pairs, {} realizable\n", kind_name(kind), bounds.max_y, found.len(), realizable);
    for (i, e) in found.iter().enumerate() {
        let _ = writeln!(
            out,
            "\n{}. T = {}, v = {}, n^T = {}, n^T(v) = {}, realizable: {}",
            i + 1,
            params_text(&e.base),
            e.v,
            format_rational(&e.n_base),
            format_rational(&e.n_claw),
            verdict_text(&e.realizable)
        );
        out.push_str(&drawing(&e.base, e.v));
    }
    out
}

pub fn exception_json(e: &Exception) -> Value {
    let realizable = match &e.realizable {
        RealizabilityVerdict::Yes(_) => "yes",
        RealizabilityVerdict::No(_) => "no",
        RealizabilityVerdict::Unknown => "unknown",
    };
    json!({
        "base": { "y": e.base.y, "legs": e.base.legs.iter().map(|&(n, l)| json!([n, l])).collect::<Vec<_>>() },
        "v": e.v,
        "n_base": rational_json(&e.n_base),
        "n_claw": rational_json(&e.n_claw),
        "realizable": realizable,
        "reason": verdict_text(&e.realizable),
    })
}

pub fn report_json(kind: EnumerationKind, bounds: EnumerationBounds, found: &[Exception]) -> Value {
    json!({
        "command": "enumerate",
        "kind": kind_name(kind),
        "max_y": bounds.max_y,
        "count": found.len(),
        "realizable_count": found.iter().filter(|e| e.is_realizable()).count(),
        "exceptions": found.iter().map(exception_json).collect::<Vec<_>>(),
    })
}

//! Reading graphs and writing them as JSON or DOT.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use plumbing_core::dsl::{parse_graph, ParsedGraph};
use plumbing_core::families::RealizabilityTables;
use plumbing_core::moves::{Move, MoveTrace};
use plumbing_core::{format_rational, parse_rational, AugmentedGraph, PlumbingGraph, Rational};
use serde_json::{json, Value};

use crate::CliError;

/// Reads DSL text from `path`, or from stdin when `path` is `None` or `-`.
pub fn read_source(path: Option<&Path>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

pub fn load_graph(path: Option<&Path>) -> Result<ParsedGraph, CliError> {
    let text = read_source(path)?;
    Ok(parse_graph(&text)?)
}

/// Comma-separated rationals, e.g. `3,2` or `1/2,5`.
pub fn parse_area(csv: &str) -> Result<Vec<Rational>, CliError> {
    csv.split(',')
        .map(|s| parse_rational(s.trim()).ok_or_else(|| CliError::Input(format!("bad rational `{s}` in --area"))))
        .collect()
}

/// The augmented graph from `--area`, falling back to areas in the file.
pub fn with_area(parsed: &ParsedGraph, area: Option<&str>) -> Result<Option<AugmentedGraph>, CliError> {
    match (area, parsed) {
        (Some(csv), _) => Ok(Some(AugmentedGraph::new(parsed.graph().clone(), parse_area(csv)?)?)),
        (None, ParsedGraph::Augmented(ag)) => Ok(Some(ag.clone())),
        (None, ParsedGraph::Plain(_)) => Ok(None),
    }
}

pub fn load_tables(path: Option<&Path>) -> Result<RealizabilityTables, CliError> {
    match path {
        None => Ok(RealizabilityTables::builtin()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Ok(RealizabilityTables::from_json(&text)?)
        }
    }
}

/// `{"num": "3", "den": "2"}`.
pub fn rational_json(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn rational_from_json(v: &Value) -> Option<Rational> {
    let num = v.get("num")?.as_str()?;
    let den = v.get("den")?.as_str()?;
    parse_rational(&format!("{num}/{den}"))
}

pub fn graph_json(g: &PlumbingGraph, area: Option<&[Rational]>) -> Value {
    let vertices: Vec<Value> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut o = json!({ "id": v.id.as_str(), "genus": v.genus, "self_int": v.self_int });
            if let Some(a) = area {
                o["area"] = rational_json(&a[i]);
            }
            o
        })
        .collect();
    let edges: Vec<Value> = g.edges().map(|(a, b)| json!([a.as_str(), b.as_str()])).collect();
    json!({ "vertices": vertices, "edges": edges })
}

pub fn parsed_json(p: &ParsedGraph) -> Value {
    graph_json(p.graph(), p.area())
}

pub fn move_json(mv: &Move) -> Value {
    let weight = |w: &Option<Rational>| w.as_ref().map_or(Value::Null, rational_json);
    match mv {
        Move::BlowUpVertex { v, weight: w } => json!({ "move": mv.name(), "vertex": v.as_str(), "weight": weight(w) }),
        Move::BlowUpEdge { u, w, weight: x } => {
            json!({ "move": mv.name(), "edge": [u.as_str(), w.as_str()], "weight": weight(x) })
        }
        Move::BlowDown { v } | Move::ClawExtend { v } | Move::DualBlowUp { v } => {
            json!({ "move": mv.name(), "vertex": v.as_str() })
        }
    }
}

pub fn trace_json(t: &MoveTrace) -> Value {
    Value::Array(t.steps.iter().map(|s| move_json(&s.mv)).collect())
}

/// One line per move, e.g. `blow-up-edge v1 v2`.
pub fn move_text(mv: &Move) -> String {
    let weight =
        |w: &Option<Rational>| w.as_ref().map(|r| format!(" weight {}", format_rational(r))).unwrap_or_default();
    match mv {
        Move::BlowUpVertex { v, weight: w } => format!("{} {v}{}", mv.name(), weight(w)),
        Move::BlowUpEdge { u, w, weight: x } => format!("{} {u} {w}{}", mv.name(), weight(x)),
        Move::BlowDown { v } | Move::ClawExtend { v } | Move::DualBlowUp { v } => format!("{} {v}", mv.name()),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Undirected DOT graph; nodes are labelled `id: s=<s>, g=<g>[, a=<area>]`.
pub fn to_dot(g: &PlumbingGraph, area: Option<&[Rational]>) -> String {
    let mut out = String::from("graph plumbing {\n");
    for (i, v) in g.vertices().iter().enumerate() {
        let mut label = format!("{}: s={}, g={}", v.id, v.self_int, v.genus);
        if let Some(a) = area {
            let _ = write!(label, ", a={}", format_rational(&a[i]));
        }
        let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", dot_escape(v.id.as_str()), dot_escape(&label));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  \"{}\" -- \"{}\";", dot_escape(a.as_str()), dot_escape(b.as_str()));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use plumbing_core::{rat, ratio};

    #[test]
    fn rationals_round_trip() {
        for r in [rat(3), ratio(-7, 4), rat(0)] {
            assert_eq!(rational_from_json(&rational_json(&r)), Some(r));
        }
        assert_eq!(rational_json(&ratio(6, 4)), json!({"num": "3", "den": "2"}));
    }

    #[test]
    fn dot_labels() {
        let g = PlumbingGraph::chain(&[2, 1]);
        let dot = to_dot(&g, Some(&[rat(3), ratio(1, 2)]));
        assert!(dot.contains("\"c1\" [label=\"c1: s=2, g=0, a=3\"];"));
        assert!(dot.contains("\"c2\" [label=\"c2: s=1, g=0, a=1/2\"];"));
        assert!(dot.contains("\"c1\" -- \"c2\";"));
    }

    #[test]
    fn area_override() {
        assert!(parse_area("3,x").is_err());
        assert_eq!(parse_area("1/2, 4").unwrap(), vec![ratio(1, 2), rat(4)]);
    }
}

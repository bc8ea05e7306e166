//! Text format for graphs.
//!
//! ```text
//! # Example 2-1 with areas
//! v v1 g0 s2 a3
//! v v2 g0 s1 a2
//! e v1 v2
//! ```
//!
//! Statements are separated by newlines or `;`. `v <id> g<genus> s<self-int>
//! [a<num>[/<den>]]` declares a vertex, `e <id> <id>` an edge, and `#` starts
//! a comment. Vertex order is declaration order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::Signed;

use crate::{
    format_rational, parse_rational, AugmentedGraph, Error, ParseErrorKind, PlumbingGraph, Rational, Result, Vertex,
    VertexId,
};

/// Result of parsing: areas are either given for every vertex or for none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedGraph {
    Plain(PlumbingGraph),
    Augmented(AugmentedGraph),
}

impl ParsedGraph {
    pub fn graph(&self) -> &PlumbingGraph {
        match self {
            ParsedGraph::Plain(g) => g,
            ParsedGraph::Augmented(ag) => ag.graph(),
        }
    }

    pub fn into_graph(self) -> PlumbingGraph {
        match self {
            ParsedGraph::Plain(g) => g,
            ParsedGraph::Augmented(ag) => ag.into_parts().0,
        }
    }

    pub fn area(&self) -> Option<&[Rational]> {
        match self {
            ParsedGraph::Plain(_) => None,
            ParsedGraph::Augmented(ag) => Some(ag.area()),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn err(tok: &Token<'_>, kind: ParseErrorKind) -> Error {
    Error::Parse { line: tok.line, column: tok.column, kind }
}

fn syntax(tok: &Token<'_>, msg: impl Into<String>) -> Error {
    err(tok, ParseErrorKind::Syntax(msg.into()))
}

/// Splits the input into statements of whitespace-separated tokens, keeping
/// 1-based positions.
fn statements(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        };
        let mut offset = 0;
        for stmt in line.split(';') {
            let mut toks = Vec::new();
            let mut start = None;
            for (i, ch) in stmt.char_indices().chain(core::iter::once((stmt.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(i),
                    (true, Some(s)) => {
                        toks.push(Token { text: &stmt[s..i], line: line_no + 1, column: offset + s + 1 });
                        start = None;
                    }
                    _ => {}
                }
            }
            if !toks.is_empty() {
                out.push(toks);
            }
            offset += stmt.len() + 1;
        }
    }
    out
}

fn prefixed<'a>(tok: &Token<'a>, prefix: char, what: &str) -> Result<&'a str> {
    tok.text
        .strip_prefix(prefix)
        .filter(|rest| !rest.is_empty())
        .ok_or_else(|| syntax(tok, format!("expected {what} as `{prefix}<value>`, found `{}`", tok.text)))
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut areas: Vec<Option<Rational>> = Vec::new();
    let mut ids: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut first_token: Option<(usize, usize)> = None;

    for stmt in statements(text) {
        let head = &stmt[0];
        first_token.get_or_insert((head.line, head.column));
        match head.text {
            "v" => {
                if stmt.len() < 4 || stmt.len() > 5 {
                    return Err(syntax(head, "expected `v <id> g<genus> s<self-int> [a<area>]`"));
                }
                let id = VertexId::from(stmt[1].text);
                let genus: u32 = prefixed(&stmt[2], 'g', "genus")?
                    .parse()
                    .map_err(|_| syntax(&stmt[2], "genus must be a non-negative integer"))?;
                let self_int: i64 = prefixed(&stmt[3], 's', "self-intersection")?
                    .parse()
                    .map_err(|_| syntax(&stmt[3], "self-intersection must be an integer"))?;
                let area = match stmt.get(4) {
                    Some(tok) => {
                        let a = parse_rational(prefixed(tok, 'a', "area")?)
                            .ok_or_else(|| syntax(tok, "area must be `p` or `p/q`"))?;
                        if !a.is_positive() {
                            return Err(err(tok, ParseErrorKind::NonPositiveArea(id)));
                        }
                        Some(a)
                    }
                    None => None,
                };
                if ids.insert(id.clone(), vertices.len()).is_some() {
                    return Err(err(&stmt[1], ParseErrorKind::DuplicateVertex(id)));
                }
                vertices.push(Vertex { id, genus, self_int });
                areas.push(area);
            }
            "e" => {
                if stmt.len() != 3 {
                    return Err(syntax(head, "expected `e <id> <id>`"));
                }
                let mut ends = [0usize; 2];
                for (k, tok) in stmt[1..].iter().enumerate() {
                    let id = VertexId::from(tok.text);
                    ends[k] = *ids.get(&id).ok_or_else(|| err(tok, ParseErrorKind::UnknownVertex(id.clone())))?;
                }
                if ends[0] == ends[1] {
                    return Err(err(&stmt[1], ParseErrorKind::SelfLoop(VertexId::from(stmt[1].text))));
                }
                edges.push((ends[0], ends[1]));
            }
            other => return Err(syntax(head, format!("unknown statement `{other}`"))),
        }
    }

    let vertex_list: Vec<(VertexId, VertexId)> =
        edges.iter().map(|&(a, b)| (vertices[a].id.clone(), vertices[b].id.clone())).collect();
    let (line, column) = first_token.unwrap_or((1, 1));
    let graph = PlumbingGraph::new(vertices, vertex_list).map_err(|_| Error::Parse {
        line,
        column,
        kind: ParseErrorKind::Disconnected,
    })?;

    let given = areas.iter().filter(|a| a.is_some()).count();
    if given == 0 {
        Ok(ParsedGraph::Plain(graph))
    } else if given == areas.len() {
        let area = areas.into_iter().map(|a| a.expect("checked")).collect();
        Ok(ParsedGraph::Augmented(AugmentedGraph::new(graph, area)?))
    } else {
        Err(Error::Parse { line, column, kind: ParseErrorKind::MixedAreas })
    }
}

fn write_vertices(g: &PlumbingGraph, area: Option<&[Rational]>) -> String {
    let mut out = String::new();
    for (i, v) in g.vertices().iter().enumerate() {
        let _ = write!(out, "v {} g{} s{}", v.id, v.genus, v.self_int);
        if let Some(a) = area {
            let _ = write!(out, " a{}", format_rational(&a[i]));
        }
        out.push('\n');
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "e {a} {b}");
    }
    out
}

pub fn serialize_graph(g: &PlumbingGraph) -> String {
    write_vertices(g, None)
}

pub fn serialize_augmented(ag: &AugmentedGraph) -> String {
    write_vertices(ag.graph(), Some(ag.area()))
}

pub fn serialize(parsed: &ParsedGraph) -> String {
    match parsed {
        ParsedGraph::Plain(g) => serialize_graph(g),
        ParsedGraph::Augmented(ag) => serialize_augmented(ag),
    }
}

/// One-line rendering `(s1)-(s2)-...` used in reports for linear graphs;
/// falls back to the DSL joined by `; ` otherwise.
pub fn compact(g: &PlumbingGraph) -> String {
    if g.is_linear() && !g.is_empty() {
        let mut order = Vec::with_capacity(g.len());
        let start = (0..g.len()).find(|&i| g.degree(i) <= 1).unwrap_or(0);
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            order.push(cur);
            match g.neighbors(cur).into_iter().find(|&n| n != prev) {
                Some(n) => {
                    prev = cur;
                    cur = n;
                }
                None => break,
            }
        }
        order.iter().map(|&i| format!("({})", g.vertex(i).self_int)).collect::<Vec<_>>().join("-")
    } else {
        serialize_graph(g).trim_end().replace('\n', "; ").to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use alloc::vec;

    #[test]
    fn parses_example_2_1_with_areas() {
        let parsed = parse_graph("v v1 g0 s2 a3; v v2 g0 s1 a2; e v1 v2").unwrap();
        let ParsedGraph::Augmented(ag) = parsed else { panic!("expected areas") };
        assert_eq!(ag.graph().self_ints(), vec![2, 1]);
        assert_eq!(ag.area(), &[rat(3), rat(2)]);
        assert_eq!(ag.graph().edge_indices(), &[(0, 1)]);
    }

    #[test]
    fn self_loop_reports_position() {
        let e = parse_graph("v v1 g0 s0 a1; e v1 v1").unwrap_err();
        match e {
            Error::Parse { line, column, kind } => {
                assert_eq!((line, column), (1, 18));
                assert!(matches!(kind, ParseErrorKind::SelfLoop(_)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_positive_area() {
        let e = parse_graph("v v1 g0 s-2 a0").unwrap_err();
        assert!(matches!(e, Error::Parse { kind: ParseErrorKind::NonPositiveArea(_), .. }));
    }

    #[test]
    fn other_errors() {
        assert!(matches!(
            parse_graph("v a g0 s1\nv b g0 s1"),
            Err(Error::Parse { kind: ParseErrorKind::Disconnected, .. })
        ));
        assert!(matches!(
            parse_graph("v a g0 s1 a1\nv b g0 s1\ne a b"),
            Err(Error::Parse { kind: ParseErrorKind::MixedAreas, .. })
        ));
        assert!(matches!(
            parse_graph("v a g0 s1\ne a b"),
            Err(Error::Parse { line: 2, column: 5, kind: ParseErrorKind::UnknownVertex(_) })
        ));
        assert!(matches!(
            parse_graph("v a gx s1"),
            Err(Error::Parse { line: 1, column: 5, kind: ParseErrorKind::Syntax(_) })
        ));
        assert!(matches!(parse_graph("w a g0 s1"), Err(Error::Parse { kind: ParseErrorKind::Syntax(_), .. })));
    }

    #[test]
    fn comments_fractions_and_empty_input() {
        let p = parse_graph("# header\nv a g1 s-3 a5/2 # trailing\n").unwrap();
        assert_eq!(p.area().unwrap(), &[crate::ratio(5, 2)]);
        assert_eq!(p.graph().vertex(0).genus, 1);
        assert_eq!(parse_graph("").unwrap(), ParsedGraph::Plain(PlumbingGraph::empty()));
    }

    #[test]
    fn compact_rendering() {
        assert_eq!(compact(&PlumbingGraph::chain(&[-1, 0, 2])), "(-1)-(0)-(2)");
    }
}

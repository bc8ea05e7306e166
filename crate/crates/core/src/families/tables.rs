//! X/Y marks for the (N3) graphs with centre `−2`: a vertex marked `Y`
//! gives a realizable claw extension, `X` does not.
//!
//! The tetrahedral, octahedral and icosahedral graphs are stored as drawn:
//! a horizontal row containing the centre plus the single vertex hanging
//! below it. The dihedral family is a rule.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{match_n3, StarParams};
use crate::{isomorphism, Error, PlumbingGraph, Result, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mark {
    X,
    Y,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TablesFile {
    version: u32,
    centre: i64,
    families: Vec<FamilyFile>,
    dihedral: DihedralRule,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    name: String,
    graphs: Vec<RowGraph>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowGraph {
    row: Vec<(i64, Mark)>,
    centre: usize,
    below: (i64, Mark),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DihedralRule {
    pub claw_ends: Mark,
    pub centre: Mark,
    pub chain_when_first_at_least_3: Mark,
    pub chain_when_first_is_2: Mark,
    /// `<2; 2,1; 2,1; 2,1>`, where the chain is a single `−2` leaf.
    pub all_leaves_two: Mark,
}

/// One drawn graph with a mark per vertex (in graph vertex order).
#[derive(Debug, Clone)]
pub struct TableGraph {
    pub family: String,
    pub params: StarParams,
    pub graph: PlumbingGraph,
    pub marks: Vec<Mark>,
    drawing: RowGraph,
}

#[derive(Debug, Clone)]
pub struct RealizabilityTables {
    pub version: u32,
    pub graphs: Vec<TableGraph>,
    pub dihedral: DihedralRule,
}

const BUILTIN: &str = include_str!("../../assets/realizability_tables.json");

/// Number of (N3) graphs with centre −2 outside the dihedral family.
const EXPECTED_GRAPHS: usize = 15;

impl RealizabilityTables {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled tables are valid")
    }

    /// Parses and validates a tables file: every graph must be a distinct
    /// non-dihedral (N3) graph with centre −2, and all of them must appear.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TablesFile = serde_json::from_str(text).map_err(|e| Error::Tables(e.to_string()))?;
        if file.version != 1 {
            return Err(Error::Tables(format!("unsupported version {}", file.version)));
        }
        if file.centre != -2 {
            return Err(Error::Tables("tables describe graphs with centre -2".into()));
        }
        let mut graphs: Vec<TableGraph> = Vec::new();
        for fam in file.families {
            for drawing in fam.graphs {
                let tg = table_graph(&fam.name, drawing)?;
                if graphs.iter().any(|o| o.params == tg.params) {
                    return Err(Error::Tables(format!("graph listed twice in {}", fam.name)));
                }
                graphs.push(tg);
            }
        }
        if graphs.len() != EXPECTED_GRAPHS {
            return Err(Error::Tables(format!("expected {EXPECTED_GRAPHS} graphs, found {}", graphs.len())));
        }
        Ok(RealizabilityTables { version: file.version, graphs, dihedral: file.dihedral })
    }

    /// Mark of vertex `v` of the (N3) graph `base`, when its centre is −2.
    pub fn mark(&self, base: &PlumbingGraph, v: usize) -> Option<Mark> {
        let (params, map) = match_n3(base)?;
        if params.y != 2 {
            return None;
        }
        if params.is_dihedral() {
            let pos = map.iter().position(|&i| i == v)?;
            let rule = &self.dihedral;
            return Some(match pos {
                0 => rule.centre,
                1 | 2 if params.legs[2] == (2, 1) => rule.all_leaves_two,
                1 | 2 => rule.claw_ends,
                _ if params.legs[2] == (2, 1) => rule.all_leaves_two,
                _ if base.vertex(map[3]).self_int <= -3 => rule.chain_when_first_at_least_3,
                _ => rule.chain_when_first_is_2,
            });
        }
        self.graphs.iter().find(|t| t.params == params).and_then(|t| isomorphism(base, &t.graph).map(|m| t.marks[m[v]]))
    }

    /// The graphs drawn back as text, one block per family.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut family = "";
        for t in &self.graphs {
            if t.family != family {
                family = &t.family;
                out.push_str(family);
                out.push('\n');
            }
            out.push_str(&render_drawing(&t.drawing));
        }
        out
    }
}

fn cell(s: i64, m: Mark) -> String {
    format!("{s}{m:?}")
}

fn render_drawing(d: &RowGraph) -> String {
    let mut top = String::from("  ");
    let mut offset = 0;
    for (i, &(s, m)) in d.row.iter().enumerate() {
        if i > 0 {
            top.push_str(" - ");
        }
        if i == d.centre {
            offset = top.chars().count();
        }
        top.push_str(&cell(s, m));
    }
    let mut below: String = " ".repeat(offset);
    below.push_str(&cell(d.below.0, d.below.1));
    format!("{top}\n{below}\n")
}

fn table_graph(family: &str, drawing: RowGraph) -> Result<TableGraph> {
    let n = drawing.row.len();
    if drawing.centre >= n {
        return Err(Error::Tables(format!("centre index {} outside the row", drawing.centre)));
    }
    let mut vertices: Vec<Vertex> =
        drawing.row.iter().enumerate().map(|(i, &(s, _))| Vertex::sphere(format!("r{}", i + 1), s)).collect();
    vertices.push(Vertex::sphere("b", drawing.below.0));
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((drawing.centre, n));
    let graph = PlumbingGraph::from_parts(vertices, edges);
    let (params, _) =
        match_n3(&graph).ok_or_else(|| Error::Tables(format!("{family}: drawing is not an (N3) graph")))?;
    if params.y != 2 || params.is_dihedral() {
        return Err(Error::Tables(format!("{family}: expected a non-dihedral graph with centre -2")));
    }
    let mut marks: Vec<Mark> = drawing.row.iter().map(|&(_, m)| m).collect();
    marks.push(drawing.below.1);
    Ok(TableGraph { family: family.into(), params, graph, marks, drawing })
}

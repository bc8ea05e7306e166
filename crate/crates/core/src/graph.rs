use alloc::borrow::ToOwned;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::linalg::IntMatrix;
use crate::{Error, Rational, Result};

/// Opaque, stable vertex identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        VertexId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

/// One embedded surface of the divisor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: VertexId,
    pub genus: u32,
    pub self_int: i64,
}

impl Vertex {
    pub fn new(id: impl Into<VertexId>, genus: u32, self_int: i64) -> Self {
        Vertex { id: id.into(), genus, self_int }
    }

    /// Genus-zero vertex, the common case.
    pub fn sphere(id: impl Into<VertexId>, self_int: i64) -> Self {
        Vertex::new(id, 0, self_int)
    }
}

/// Weighted multigraph of a divisor germ.
///
/// Vertex order is declaration order and fixes the row order of the
/// intersection matrix. Edges are stored as index pairs `(i, j)` with `i < j`,
/// one entry per intersection point, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
}

impl PlumbingGraph {
    /// The empty graph (type (N1)).
    pub fn empty() -> Self {
        PlumbingGraph::default()
    }

    pub fn new(vertices: Vec<Vertex>, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.id.clone()) {
                return Err(Error::InvalidGraph(format!("vertex `{}` declared twice", v.id)));
            }
        }
        let mut g = PlumbingGraph { vertices, edges: Vec::new() };
        let mut edge_idx = Vec::with_capacity(edges.len());
        for (a, b) in &edges {
            let i = g.index_of(a).ok_or_else(|| Error::VertexNotFound(a.clone()))?;
            let j = g.index_of(b).ok_or_else(|| Error::VertexNotFound(b.clone()))?;
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at `{a}`")));
            }
            edge_idx.push((i.min(j), i.max(j)));
        }
        g.edges = edge_idx;
        g.edges.sort_unstable();
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    /// Builds from index pairs; used by rewriting code that keeps the
    /// invariants by construction.
    pub(crate) fn from_parts(vertices: Vec<Vertex>, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            debug_assert!(e.0 != e.1);
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        let g = PlumbingGraph { vertices, edges };
        debug_assert!(g.is_connected());
        g
    }

    /// Linear chain of genus-zero vertices `c1 - c2 - ...` with the given
    /// self-intersections and ids `c1..ck`.
    pub fn chain(self_ints: &[i64]) -> Self {
        let vertices = self_ints.iter().enumerate().map(|(i, &s)| Vertex::sphere(format!("c{}", i + 1), s)).collect();
        let edges = (1..self_ints.len()).map(|i| (i - 1, i)).collect();
        PlumbingGraph::from_parts(vertices, edges)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub(crate) fn vertex_mut(&mut self, i: usize) -> &mut Vertex {
        &mut self.vertices[i]
    }

    /// Edge list as index pairs, one entry per intersection point.
    pub fn edge_indices(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = (&VertexId, &VertexId)> + '_ {
        self.edges.iter().map(move |&(i, j)| (&self.vertices[i].id, &self.vertices[j].id))
    }

    pub fn index_of(&self, id: &VertexId) -> Option<usize> {
        self.vertices.iter().position(|v| &v.id == id)
    }

    pub(crate) fn require(&self, id: &VertexId) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::VertexNotFound(id.clone()))
    }

    pub fn self_ints(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.self_int).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == i || b == i).count()
    }

    /// Neighbours of `i`, repeated once per edge.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn edge_multiplicity(&self, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        self.component_of(0, None).len() == self.vertices.len()
    }

    /// Vertices reachable from `start` without passing through `removed`.
    fn component_of(&self, start: usize, removed: Option<usize>) -> Vec<usize> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        if let Some(r) = removed {
            seen[r] = true;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `Q_Γ`: self-intersections on the diagonal, intersection counts off it.
    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        let n = self.len();
        let mut m = IntMatrix::zeros(n);
        for (i, v) in self.vertices.iter().enumerate() {
            m.set(i, i, v.self_int);
        }
        for &(a, b) in &self.edges {
            m.set(a, b, m.get(a, b) + 1);
            m.set(b, a, m.get(b, a) + 1);
        }
        IntersectionMatrix { matrix: m, vertex_order: self.vertices.iter().map(|v| v.id.clone()).collect() }
    }

    /// Tree in the simple-graph sense: `|E| = |V| - 1`, no multi-edges.
    /// The empty graph counts as a tree.
    pub fn is_tree(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        self.edges.len() + 1 == self.vertices.len() && self.edges.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_linear(&self) -> bool {
        self.is_tree() && (0..self.len()).all(|i| self.degree(i) <= 2)
    }

    pub fn all_genus_zero(&self) -> bool {
        self.vertices.iter().all(|v| v.genus == 0)
    }

    /// Errors unless the graph is a tree of spheres.
    pub fn require_sphere_tree(&self) -> Result<()> {
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        if let Some(v) = self.vertices.iter().find(|v| v.genus != 0) {
            return Err(Error::NonzeroGenus(v.id.clone()));
        }
        Ok(())
    }

    pub(crate) fn branch_point_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degree(i) >= 3).collect()
    }

    /// Vertices with at least three branches.
    pub fn branch_points(&self) -> Vec<VertexId> {
        self.branch_point_indices().into_iter().map(|i| self.vertices[i].id.clone()).collect()
    }

    /// Connected components of the graph with `v` deleted, each in vertex
    /// order, ordered by their first vertex.
    pub fn branches_at(&self, v: &VertexId) -> Result<Vec<PlumbingGraph>> {
        let r = self.require(v)?;
        Ok(self.branch_index_sets(r).iter().map(|comp| self.induced(comp)).collect())
    }

    pub(crate) fn branch_index_sets(&self, r: usize) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.len()];
        assigned[r] = true;
        let mut out = Vec::new();
        for s in 0..self.len() {
            if assigned[s] {
                continue;
            }
            let comp = self.component_of(s, Some(r));
            for &c in &comp {
                assigned[c] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on the given (sorted) vertex indices.
    pub(crate) fn induced(&self, keep: &[usize]) -> PlumbingGraph {
        let mut map = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let vertices = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| map[a] != usize::MAX && map[b] != usize::MAX)
            .map(|&(a, b)| (map[a], map[b]))
            .collect();
        PlumbingGraph::from_parts(vertices, edges)
    }

    /// A vertex can be blown down when it is a genus-zero `-1` sphere of
    /// degree at most two whose neighbours are distinct.
    pub fn is_blow_downable(&self, i: usize) -> bool {
        let v = &self.vertices[i];
        if v.genus != 0 || v.self_int != -1 {
            return false;
        }
        let nb = self.neighbors(i);
        match nb.len() {
            0 | 1 => true,
            2 => nb[0] != nb[1],
            _ => false,
        }
    }

    /// No blow-down can be performed.
    pub fn is_minimal(&self) -> bool {
        !(0..self.len()).any(|i| self.is_blow_downable(i))
    }

    /// First id of the form `{prefix}{n}` not already used.
    pub(crate) fn fresh_id(&self, prefix: &str) -> VertexId {
        (1..)
            .map(|n| VertexId(format!("{prefix}{n}")))
            .find(|id| self.index_of(id).is_none())
            .expect("unbounded id supply")
    }

    pub(crate) fn push_vertex(&mut self, v: Vertex) -> usize {
        self.vertices.push(v);
        self.vertices.len() - 1
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        let e = (a.min(b), a.max(b));
        let pos = self.edges.partition_point(|x| *x < e);
        self.edges.insert(pos, e);
    }

    pub(crate) fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        let e = (a.min(b), a.max(b));
        match self.edges.iter().position(|x| *x == e) {
            Some(p) => {
                self.edges.remove(p);
                true
            }
            None => false,
        }
    }

    /// Removes vertex `i` and every edge at it, shifting later indices down.
    pub(crate) fn remove_vertex(&mut self, i: usize) -> Vertex {
        let v = self.vertices.remove(i);
        self.edges.retain(|&(a, b)| a != i && b != i);
        for e in self.edges.iter_mut() {
            if e.0 > i {
                e.0 -= 1;
            }
            if e.1 > i {
                e.1 -= 1;
            }
        }
        self.edges.sort_unstable();
        v
    }

    /// Same graph with vertices renamed `prefix1, prefix2, ...` in order.
    pub fn relabeled(&self, prefix: &str) -> PlumbingGraph {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| Vertex { id: VertexId(format!("{prefix}{}", i + 1)), ..v.clone() })
            .collect();
        PlumbingGraph { vertices, edges: self.edges.clone() }
    }
}

/// A plumbing graph together with a strictly positive area per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AugmentedGraph {
    graph: PlumbingGraph,
    area: Vec<Rational>,
}

impl AugmentedGraph {
    /// `area` follows the graph's vertex order.
    pub fn new(graph: PlumbingGraph, area: Vec<Rational>) -> Result<Self> {
        if area.len() != graph.len() {
            return Err(Error::DimensionMismatch { expected: graph.len(), found: area.len() });
        }
        if let Some(i) = area.iter().position(|a| !a.is_positive()) {
            return Err(Error::NonPositiveArea(graph.vertex(i).id.clone()));
        }
        Ok(AugmentedGraph { graph, area })
    }

    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    pub fn area(&self) -> &[Rational] {
        &self.area
    }

    pub fn area_of(&self, id: &VertexId) -> Option<&Rational> {
        self.graph.index_of(id).map(|i| &self.area[i])
    }

    pub fn into_parts(self) -> (PlumbingGraph, Vec<Rational>) {
        (self.graph, self.area)
    }

    pub(crate) fn from_parts_unchecked(graph: PlumbingGraph, area: Vec<Rational>) -> Self {
        debug_assert_eq!(graph.len(), area.len());
        debug_assert!(area.iter().all(|a| a.is_positive()));
        AugmentedGraph { graph, area }
    }
}

/// `Q_Γ` with the vertex order that fixes its rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub matrix: IntMatrix,
    pub vertex_order: Vec<VertexId>,
}

impl IntersectionMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

impl core::ops::Deref for IntersectionMatrix {
    type Target = IntMatrix;

    fn deref(&self) -> &IntMatrix {
        &self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_star;

    fn example_2_1() -> PlumbingGraph {
        PlumbingGraph::new(vec![Vertex::sphere("v1", 2), Vertex::sphere("v2", 1)], vec![("v1".into(), "v2".into())])
            .unwrap()
    }

    #[test]
    fn intersection_matrix_of_example_2_1() {
        let q = example_2_1().intersection_matrix();
        assert_eq!(q.matrix.rows(), vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(q.vertex_order, vec![VertexId::from("v1"), VertexId::from("v2")]);
    }

    #[test]
    fn single_vertex_matrix() {
        let g = PlumbingGraph::chain(&[0]);
        assert_eq!(g.intersection_matrix().matrix.rows(), vec![vec![0]]);
    }

    #[test]
    fn rejects_self_loops_and_disconnected_graphs() {
        let loop_err = PlumbingGraph::new(vec![Vertex::sphere("a", 0)], vec![("a".into(), "a".into())]);
        assert!(matches!(loop_err, Err(Error::InvalidGraph(_))));
        let split = PlumbingGraph::new(vec![Vertex::sphere("a", 0), Vertex::sphere("b", 0)], vec![]);
        assert!(matches!(split, Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn double_edges_are_not_trees() {
        let g = PlumbingGraph::new(
            vec![Vertex::sphere("a", 1), Vertex::sphere("b", 1)],
            vec![("a".into(), "b".into()), ("b".into(), "a".into())],
        )
        .unwrap();
        assert!(!g.is_tree());
        assert_eq!(g.intersection_matrix().matrix.get(0, 1), 2);
    }

    #[test]
    fn structural_queries() {
        assert!(example_2_1().is_linear());
        let star = build_star(2, (2, 1), (3, 1), (3, 1)).unwrap();
        assert_eq!(star.branch_points(), vec![star.vertex(0).id.clone()]);

        let e8 = build_star(2, (2, 1), (3, 2), (5, 4)).unwrap();
        assert_eq!(e8.branch_point_indices().len(), 1);
        let centre = e8.vertex(0).id.clone();
        let mut sizes: Vec<usize> = e8.branches_at(&centre).unwrap().iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 4]);
        assert!(matches!(e8.branches_at(&VertexId::from("nope")), Err(Error::VertexNotFound(_))));
    }

    #[test]
    fn minimality() {
        let e8 = build_star(2, (2, 1), (3, 2), (5, 4)).unwrap();
        assert!(e8.is_minimal());
        assert!(!PlumbingGraph::chain(&[-1, -1, -1]).is_minimal());
        assert!(!PlumbingGraph::chain(&[-1]).is_minimal());
    }

    #[test]
    fn augmented_rejects_bad_areas() {
        use crate::rat;
        let g = example_2_1();
        assert!(matches!(AugmentedGraph::new(g.clone(), vec![rat(1)]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(AugmentedGraph::new(g, vec![rat(1), rat(0)]), Err(Error::NonPositiveArea(_))));
    }
}

//! Blow-up, blow-down, claw extension and dual blow-up, plus minimal models
//! and a bounded equivalence search.
//!
//! Every move returns a new graph. Vertices created by a move are appended
//! after the existing ones, so earlier indices stay valid except for
//! blow-downs, which remove one vertex.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::linalg::{determinant, inertia, smith_normal_form};
use crate::{
    graph_hash, isomorphism, tree_canonical_form, AugmentedGraph, Error, PlumbingGraph, Rational, Result, Vertex,
    VertexId,
};

/// A single rewriting step. Weights are the area `a₀` given to the new
/// vertex and are only meaningful on augmented graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    BlowUpVertex { v: VertexId, weight: Option<Rational> },
    BlowUpEdge { u: VertexId, w: VertexId, weight: Option<Rational> },
    BlowDown { v: VertexId },
    ClawExtend { v: VertexId },
    DualBlowUp { v: VertexId },
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::BlowUpVertex { .. } => "blow-up-vertex",
            Move::BlowUpEdge { .. } => "blow-up-edge",
            Move::BlowDown { .. } => "blow-down",
            Move::ClawExtend { .. } => "claw-extend",
            Move::DualBlowUp { .. } => "dual-blow-up",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub mv: Move,
    pub before: u64,
    pub after: u64,
}

/// Moves in application order with fingerprints of the graphs around them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveTrace {
    pub steps: Vec<TraceStep>,
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn record(&mut self, mv: Move, before: &PlumbingGraph, after: &PlumbingGraph) {
        self.steps.push(TraceStep { mv, before: graph_hash(before), after: graph_hash(after) });
    }

    /// Applies the moves to `g`, checking the recorded fingerprints.
    pub fn replay(&self, g: &PlumbingGraph) -> Result<PlumbingGraph> {
        let mut cur = g.clone();
        for step in &self.steps {
            if graph_hash(&cur) != step.before {
                return Err(Error::InvalidGraph("trace does not start from this graph".into()));
            }
            cur = apply(&cur, &step.mv)?;
            if graph_hash(&cur) != step.after {
                return Err(Error::InvalidGraph("trace replay diverged".into()));
            }
        }
        Ok(cur)
    }
}

/// Decrements `v` and attaches a new `-1` sphere to it.
pub fn blow_up_vertex(g: &PlumbingGraph, v: &VertexId) -> Result<PlumbingGraph> {
    let i = g.require(v)?;
    let mut out = g.clone();
    out.vertex_mut(i).self_int -= 1;
    let x = out.push_vertex(Vertex::sphere(g.fresh_id("x"), -1));
    out.add_edge(i, x);
    Ok(out)
}

/// Replaces the edge `u—w` by a new `-1` sphere adjacent to both, which each
/// drop by one.
pub fn blow_up_edge(g: &PlumbingGraph, u: &VertexId, w: &VertexId) -> Result<PlumbingGraph> {
    let (i, j) = (g.require(u)?, g.require(w)?);
    let mut out = g.clone();
    if !out.remove_edge(i, j) {
        return Err(Error::EdgeNotFound(u.clone(), w.clone()));
    }
    out.vertex_mut(i).self_int -= 1;
    out.vertex_mut(j).self_int -= 1;
    let x = out.push_vertex(Vertex::sphere(g.fresh_id("x"), -1));
    out.add_edge(i, x);
    out.add_edge(j, x);
    Ok(out)
}

/// Removes an admissible `-1` sphere, raising its neighbours by one and
/// joining them if there are two.
pub fn blow_down(g: &PlumbingGraph, v: &VertexId) -> Result<PlumbingGraph> {
    let i = g.require(v)?;
    if !g.is_blow_downable(i) {
        return Err(Error::NotBlowDownable(v.clone()));
    }
    let nb = g.neighbors(i);
    let mut out = g.clone();
    for &n in &nb {
        out.vertex_mut(n).self_int += 1;
    }
    out.remove_vertex(i);
    if let [a, b] = nb[..] {
        let shift = |k: usize| if k > i { k - 1 } else { k };
        out.add_edge(shift(a), shift(b));
    }
    Ok(out)
}

/// Appends a chain `v—x₀—x₋₁` of two `0` spheres.
pub fn claw_extend(g: &PlumbingGraph, v: &VertexId) -> Result<PlumbingGraph> {
    let i = g.require(v)?;
    let mut out = g.clone();
    let a = out.push_vertex(Vertex::sphere(out.fresh_id("z"), 0));
    let b = out.push_vertex(Vertex::sphere(out.fresh_id("z"), 0));
    out.add_edge(i, a);
    out.add_edge(a, b);
    Ok(out)
}

/// Raises `v` by one and attaches a new `+1` sphere.
pub fn dual_blow_up(g: &PlumbingGraph, v: &VertexId) -> Result<PlumbingGraph> {
    let i = g.require(v)?;
    let mut out = g.clone();
    out.vertex_mut(i).self_int += 1;
    let p = out.push_vertex(Vertex::sphere(g.fresh_id("p"), 1));
    out.add_edge(i, p);
    Ok(out)
}

/// Applies a move, ignoring any weight.
pub fn apply(g: &PlumbingGraph, mv: &Move) -> Result<PlumbingGraph> {
    match mv {
        Move::BlowUpVertex { v, .. } => blow_up_vertex(g, v),
        Move::BlowUpEdge { u, w, .. } => blow_up_edge(g, u, w),
        Move::BlowDown { v } => blow_down(g, v),
        Move::ClawExtend { v } => claw_extend(g, v),
        Move::DualBlowUp { v } => dual_blow_up(g, v),
    }
}

fn check_weight(a0: &Rational, bound: &Rational) -> Result<()> {
    if a0.is_positive() && a0 < bound {
        Ok(())
    } else {
        Err(Error::WeightOutOfRange)
    }
}

/// Vertex blow-up with weight `0 < a₀ < area(v)`: `v` keeps `area(v) − a₀`,
/// the new vertex gets `a₀`.
pub fn blow_up_vertex_augmented(ag: &AugmentedGraph, v: &VertexId, a0: &Rational) -> Result<AugmentedGraph> {
    let i = ag.graph().require(v)?;
    check_weight(a0, &ag.area()[i])?;
    let g = blow_up_vertex(ag.graph(), v)?;
    let mut area = ag.area().to_vec();
    area[i] -= a0;
    area.push(a0.clone());
    Ok(AugmentedGraph::from_parts_unchecked(g, area))
}

/// Edge blow-up with weight `0 < a₀ < min(area(u), area(w))`.
pub fn blow_up_edge_augmented(
    ag: &AugmentedGraph,
    u: &VertexId,
    w: &VertexId,
    a0: &Rational,
) -> Result<AugmentedGraph> {
    let (i, j) = (ag.graph().require(u)?, ag.graph().require(w)?);
    check_weight(a0, core::cmp::min(&ag.area()[i], &ag.area()[j]))?;
    let g = blow_up_edge(ag.graph(), u, w)?;
    let mut area = ag.area().to_vec();
    area[i] -= a0;
    area[j] -= a0;
    area.push(a0.clone());
    Ok(AugmentedGraph::from_parts_unchecked(g, area))
}

/// Blow-down restoring areas: each neighbour gains the removed area.
pub fn blow_down_augmented(ag: &AugmentedGraph, v: &VertexId) -> Result<AugmentedGraph> {
    let i = ag.graph().require(v)?;
    let g = blow_down(ag.graph(), v)?;
    let mut area = ag.area().to_vec();
    let removed = area.remove(i);
    for n in ag.graph().neighbors(i) {
        let k = if n > i { n - 1 } else { n };
        area[k] += &removed;
    }
    Ok(AugmentedGraph::from_parts_unchecked(g, area))
}

/// Applies a move to an augmented graph. Blow-ups need a weight; claw
/// extension and dual blow-up are graph-level only.
pub fn apply_augmented(ag: &AugmentedGraph, mv: &Move) -> Result<AugmentedGraph> {
    let missing = || Error::InvalidParameters("blow-up on an augmented graph needs a weight".into());
    match mv {
        Move::BlowUpVertex { v, weight } => blow_up_vertex_augmented(ag, v, weight.as_ref().ok_or_else(missing)?),
        Move::BlowUpEdge { u, w, weight } => blow_up_edge_augmented(ag, u, w, weight.as_ref().ok_or_else(missing)?),
        Move::BlowDown { v } => blow_down_augmented(ag, v),
        Move::ClawExtend { .. } | Move::DualBlowUp { .. } => {
            Err(Error::InvalidParameters("claw extension and dual blow-up act on plain graphs".into()))
        }
    }
}

/// Blows down admissible vertices, smallest id first, until none is left.
pub fn minimal_model(g: &PlumbingGraph) -> Result<(PlumbingGraph, MoveTrace)> {
    g.require_sphere_tree()?;
    let mut cur = g.clone();
    let mut trace = MoveTrace::default();
    while let Some(i) =
        (0..cur.len()).filter(|&i| cur.is_blow_downable(i)).min_by(|&a, &b| cur.vertex(a).id.cmp(&cur.vertex(b).id))
    {
        let mv = Move::BlowDown { v: cur.vertex(i).id.clone() };
        let next = apply(&cur, &mv)?;
        trace.record(mv, &cur, &next);
        cur = next;
    }
    Ok((cur, trace))
}

/// Limits for [`equivalent_graphs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Vertices allowed beyond the larger of the two inputs.
    pub extra_vertices: usize,
    /// Total number of moves across both search directions.
    pub depth: usize,
    /// Distinct graphs visited before giving up.
    pub max_nodes: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { extra_vertices: 4, depth: 12, max_nodes: 200_000 }
    }
}

impl SearchBudget {
    /// Budget with `extra` vertices and the default depth.
    pub fn with_extra(extra: usize) -> Self {
        SearchBudget { extra_vertices: extra, ..Self::default() }
    }
}

/// Which invariant tells two graphs apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separator {
    Determinant,
    Inertia,
    SmithForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    /// Replaying `trace` on the first graph gives a graph isomorphic to the
    /// second via `isomorphism` (indices of the result → indices of `g₂`).
    Proof {
        trace: MoveTrace,
        isomorphism: Vec<usize>,
    },
    NotEquivalent(Separator),
    Unknown,
}

/// Invariants of the blow-up calculus: `|det|`, `b⁺`, `b⁰` and the
/// invariant factors other than one.
fn invariants(g: &PlumbingGraph) -> (BigInt, usize, usize, Vec<BigInt>) {
    let q = g.intersection_matrix();
    let i = inertia(&q);
    let snf = smith_normal_form(&q).into_iter().filter(|d| !d.is_one()).collect();
    (determinant(&q).abs(), i.n_plus, i.n_zero, snf)
}

/// Invariant separating the two graphs, if any.
pub fn separating_invariant(g1: &PlumbingGraph, g2: &PlumbingGraph) -> Option<Separator> {
    let (d1, p1, z1, s1) = invariants(g1);
    let (d2, p2, z2, s2) = invariants(g2);
    if d1 != d2 {
        Some(Separator::Determinant)
    } else if (p1, z1) != (p2, z2) {
        Some(Separator::Inertia)
    } else if s1 != s2 {
        Some(Separator::SmithForm)
    } else {
        None
    }
}

struct Node {
    graph: PlumbingGraph,
    /// Canonical form of the parent and the move from the parent's graph.
    parent: Option<(alloc::string::String, Move)>,
}

/// Moves from `g` staying inside trees with at most `cap` vertices.
fn neighbours(g: &PlumbingGraph, cap: usize, allow_empty: bool) -> Vec<(Move, PlumbingGraph)> {
    let mut out = Vec::new();
    for i in 0..g.len() {
        if g.is_blow_downable(i) && (allow_empty || g.len() > 1) {
            let mv = Move::BlowDown { v: g.vertex(i).id.clone() };
            if let Ok(h) = apply(g, &mv) {
                if h.is_tree() {
                    out.push((mv, h));
                }
            }
        }
    }
    if g.len() < cap {
        for v in g.vertices() {
            let mv = Move::BlowUpVertex { v: v.id.clone(), weight: None };
            out.push((mv.clone(), apply(g, &mv).expect("vertex exists")));
        }
        for (u, w) in g.edges() {
            let mv = Move::BlowUpEdge { u: u.clone(), w: w.clone(), weight: None };
            out.push((mv.clone(), apply(g, &mv).expect("edge exists")));
        }
    }
    out
}

fn path_to(nodes: &BTreeMap<alloc::string::String, Node>, key: &str) -> Vec<(PlumbingGraph, Move, PlumbingGraph)> {
    let mut steps = Vec::new();
    let mut cur = key;
    while let Some((pkey, mv)) = &nodes[cur].parent {
        steps.push((nodes[pkey.as_str()].graph.clone(), mv.clone(), nodes[cur].graph.clone()));
        cur = pkey;
    }
    steps.reverse();
    steps
}

/// Searches for a sequence of blow-ups and blow-downs turning `g1` into a
/// graph isomorphic to `g2`.
///
/// Both inputs must be trees of spheres. `NotEquivalent` is only returned
/// when an invariant separates the graphs; an exhausted budget gives
/// `Unknown`.
pub fn equivalent_graphs(g1: &PlumbingGraph, g2: &PlumbingGraph, budget: SearchBudget) -> Result<Equivalence> {
    g1.require_sphere_tree()?;
    g2.require_sphere_tree()?;
    if let Some(sep) = separating_invariant(g1, g2) {
        return Ok(Equivalence::NotEquivalent(sep));
    }
    let cap = g1.len().max(g2.len()) + budget.extra_vertices;
    let key = |g: &PlumbingGraph| tree_canonical_form(g).expect("search stays in trees");

    let mut sides: [BTreeMap<alloc::string::String, Node>; 2] = [BTreeMap::new(), BTreeMap::new()];
    let mut frontiers: [VecDeque<alloc::string::String>; 2] = [VecDeque::new(), VecDeque::new()];
    for (s, g) in [g1, g2].into_iter().enumerate() {
        let k = key(g);
        frontiers[s].push_back(k.clone());
        sides[s].insert(k, Node { graph: g.clone(), parent: None });
    }
    let mut meet = {
        let k = key(g1);
        sides[1].contains_key(&k).then_some(k)
    };
    let mut depth_used = 0;
    while meet.is_none() && depth_used < budget.depth {
        let s = if frontiers[0].len() <= frontiers[1].len() { 0 } else { 1 };
        if frontiers[s].is_empty() {
            break;
        }
        depth_used += 1;
        let layer: Vec<_> = frontiers[s].drain(..).collect();
        'layer: for k in layer {
            let g = sides[s][&k].graph.clone();
            for (mv, h) in neighbours(&g, cap, s == 0) {
                let hk = key(&h);
                if sides[s].contains_key(&hk) {
                    continue;
                }
                sides[s].insert(hk.clone(), Node { graph: h, parent: Some((k.clone(), mv)) });
                if sides[1 - s].contains_key(&hk) {
                    meet = Some(hk);
                    break 'layer;
                }
                frontiers[s].push_back(hk);
            }
            if sides[0].len() + sides[1].len() > budget.max_nodes {
                return Ok(Equivalence::Unknown);
            }
        }
    }
    let Some(meet) = meet else {
        return Ok(Equivalence::Unknown);
    };

    // Forward half as recorded.
    let mut trace = MoveTrace::default();
    for (before, mv, after) in path_to(&sides[0], &meet) {
        trace.record(mv, &before, &after);
    }
    let mut cur = sides[0][&meet].graph.clone();
    let backward = path_to(&sides[1], &meet);
    let target = sides[1][&meet].graph.clone();
    let mut phi = isomorphism(&cur, &target).expect("same canonical form");

    // Backward half undone step by step, translating ids through `phi`.
    for (prev, mv, next) in backward.into_iter().rev() {
        let inv_phi = |phi: &[usize], j: usize| phi.iter().position(|&x| x == j).expect("bijection");
        let (undo, new_phi) = match &mv {
            Move::BlowUpVertex { .. } | Move::BlowUpEdge { .. } => {
                // The created vertex is the last one of `next`.
                let c = inv_phi(&phi, next.len() - 1);
                let mut p = phi.clone();
                p.remove(c);
                (Move::BlowDown { v: cur.vertex(c).id.clone() }, p)
            }
            Move::BlowDown { v } => {
                let pos = prev.index_of(v).expect("vertex of parent");
                let to_next = |k: usize| if k > pos { k - 1 } else { k };
                let nb: Vec<usize> = prev.neighbors(pos).into_iter().map(|k| inv_phi(&phi, to_next(k))).collect();
                let undo = match nb[..] {
                    [a] => Move::BlowUpVertex { v: cur.vertex(a).id.clone(), weight: None },
                    [a, b] => {
                        Move::BlowUpEdge { u: cur.vertex(a).id.clone(), w: cur.vertex(b).id.clone(), weight: None }
                    }
                    _ => unreachable!("backward search never removes isolated vertices"),
                };
                let mut p: Vec<usize> = phi.iter().map(|&k| if k >= pos { k + 1 } else { k }).collect();
                p.push(pos);
                (undo, p)
            }
            _ => unreachable!("search only uses blow-ups and blow-downs"),
        };
        let nxt = apply(&cur, &undo)?;
        trace.record(undo, &cur, &nxt);
        cur = nxt;
        phi = new_phi;
    }
    debug_assert!((0..cur.len()).all(|i| cur.vertex(i).self_int == g2.vertex(phi[i]).self_int));
    debug_assert!(cur.edge_indices().iter().all(|&(a, b)| g2.edge_multiplicity(phi[a], phi[b]) == 1));
    Ok(Equivalence::Proof { trace, isomorphism: phi })
}

/// Outcome of [`explore_class`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exploration<T> {
    /// `trace` turns the start graph into `graph`, on which the visitor
    /// returned `value`.
    Found { value: T, trace: MoveTrace, graph: PlumbingGraph },
    /// Every graph within the vertex cap and depth was visited.
    Exhausted,
    /// `max_nodes` was reached first.
    OutOfBudget,
}

/// Breadth-first walk through the blow-up class of `g` (trees of spheres,
/// at most `g.len() + extra_vertices` vertices, at most `depth` moves),
/// stopping at the first graph on which `visit` returns a value.
pub fn explore_class<T>(
    g: &PlumbingGraph,
    budget: SearchBudget,
    mut visit: impl FnMut(&PlumbingGraph) -> Option<T>,
) -> Result<Exploration<T>> {
    g.require_sphere_tree()?;
    let cap = g.len() + budget.extra_vertices;
    let key = |g: &PlumbingGraph| tree_canonical_form(g).expect("search stays in trees");
    let found = |nodes: &BTreeMap<alloc::string::String, Node>, k: &str, value: T| {
        let mut trace = MoveTrace::default();
        for (before, mv, after) in path_to(nodes, k) {
            trace.record(mv, &before, &after);
        }
        Exploration::Found { value, trace, graph: nodes[k].graph.clone() }
    };
    let mut nodes = BTreeMap::new();
    let k0 = key(g);
    nodes.insert(k0.clone(), Node { graph: g.clone(), parent: None });
    if let Some(value) = visit(g) {
        return Ok(found(&nodes, &k0, value));
    }
    let mut frontier = vec![k0];
    for _ in 0..budget.depth {
        let mut next = Vec::new();
        for k in frontier {
            let cur = nodes[&k].graph.clone();
            for (mv, h) in neighbours(&cur, cap, true) {
                let hk = key(&h);
                if nodes.contains_key(&hk) {
                    continue;
                }
                let value = visit(&h);
                nodes.insert(hk.clone(), Node { graph: h, parent: Some((k.clone(), mv)) });
                if let Some(value) = value {
                    return Ok(found(&nodes, &hk, value));
                }
                if nodes.len() >= budget.max_nodes {
                    return Ok(Exploration::OutOfBudget);
                }
                next.push(hk);
            }
        }
        if next.is_empty() {
            return Ok(Exploration::Exhausted);
        }
        frontier = next;
    }
    Ok(Exploration::OutOfBudget)
}

/// Canonical forms of the distinct minimal graphs reachable from `g` by
/// blow-downs in any order, for confluence checks.
pub fn minimal_results(g: &PlumbingGraph) -> Vec<alloc::string::String> {
    let mut seen = BTreeMap::new();
    let mut stack = vec![g.clone()];
    let mut results = Vec::new();
    while let Some(cur) = stack.pop() {
        let Some(k) = tree_canonical_form(&cur) else { continue };
        if seen.insert(k.clone(), ()).is_some() {
            continue;
        }
        let downs: Vec<usize> = (0..cur.len()).filter(|&i| cur.is_blow_downable(i)).collect();
        if downs.is_empty() {
            results.push(k);
        }
        for i in downs {
            if let Ok(h) = blow_down(&cur, &cur.vertex(i).id) {
                stack.push(h);
            }
        }
    }
    results.sort();
    results
}

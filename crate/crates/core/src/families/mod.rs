//! Hirzebruch–Jung continued fractions, the linear and star-shaped builders,
//! recognizers for the types (N1)–(N3) and (P1)–(P5), conjugates, the
//! dihedral presentations and realizability.
//!
//! Vertex positions inside a type tag are *builder indices*: for a chain
//! `<n, λ>` they run `0..k` along the continued fraction, for a star they
//! are the centre (0) followed by the three legs outward, in parameter
//! order.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::group::{is_finite_pi1, FinitenessVerdict};
use crate::gs::positive_gs;
use crate::linalg::{inertia, is_negative_definite};
use crate::moves::{claw_extend, dual_blow_up, explore_class, minimal_model, Exploration, MoveTrace, SearchBudget};
use crate::{is_isomorphic, AugmentedGraph, Error, PlumbingGraph, Result, Vertex, VertexId};

mod tables;

pub use tables::{Mark, RealizabilityTables, TableGraph};

/// `n/λ = [d₁, …, d_k]` with every `dᵢ ≥ 2`.
pub fn hj_expand(n: i64, lambda: i64) -> Result<Vec<i64>> {
    if !(0 < lambda && lambda < n) || n.gcd(&lambda) != 1 {
        return Err(Error::InvalidFraction { n, lambda });
    }
    let (mut p, mut q) = (i128::from(n), i128::from(lambda));
    let mut out = Vec::new();
    while q != 0 {
        let d = Integer::div_ceil(&p, &q);
        out.push(d as i64);
        (p, q) = (q, d * q - p);
    }
    Ok(out)
}

/// Inverse of [`hj_expand`].
pub fn hj_eval(cf: &[i64]) -> Result<(i64, i64)> {
    if cf.is_empty() || cf.iter().any(|&d| d < 2) {
        return Err(Error::InvalidParameters(format!("continued fraction {cf:?} needs entries ≥ 2")));
    }
    let (mut p, mut q) = (1i128, 0i128);
    for &d in cf.iter().rev() {
        (p, q) = (i128::from(d) * p - q, p);
    }
    let n = i64::try_from(p).map_err(|_| Error::InvalidParameters("fraction overflows".into()))?;
    Ok((n, q as i64))
}

/// The chain `(−d₁)−…−(−d_k)` for `n/λ = [d₁, …, d_k]`.
pub fn build_linear(n: i64, lambda: i64) -> Result<PlumbingGraph> {
    let cf = hj_expand(n, lambda)?;
    Ok(PlumbingGraph::chain(&cf.iter().map(|d| -d).collect::<Vec<_>>()))
}

/// Star with centre `c` of self-intersection `centre` and legs `a…`, `b…`,
/// `d…` (self-intersections listed outward).
fn star_from_legs(centre: i64, legs: [&[i64]; 3]) -> PlumbingGraph {
    let mut vertices = vec![Vertex::sphere("c", centre)];
    let mut edges = Vec::new();
    for (prefix, leg) in ["a", "b", "d"].iter().zip(legs) {
        let mut prev = 0;
        for (i, &s) in leg.iter().enumerate() {
            vertices.push(Vertex::sphere(format!("{prefix}{}", i + 1), s));
            edges.push((prev, vertices.len() - 1));
            prev = vertices.len() - 1;
        }
    }
    PlumbingGraph::from_parts(vertices, edges)
}

/// `<y; n₁,λ₁; n₂,λ₂; n₃,λ₃>`: centre `−y` at index 0, then the three
/// Hirzebruch–Jung legs outward.
pub fn build_star(y: i64, l1: (i64, i64), l2: (i64, i64), l3: (i64, i64)) -> Result<PlumbingGraph> {
    let legs: Vec<Vec<i64>> =
        [l1, l2, l3].iter().map(|&(n, l)| Ok(hj_expand(n, l)?.iter().map(|d| -d).collect())).collect::<Result<_>>()?;
    Ok(star_from_legs(-y, [&legs[0], &legs[1], &legs[2]]))
}

/// Parameters `<y; 2,1; n₂,λ₂; n₃,λ₃>` of an (N3) graph, with the legs
/// sorted so the first is `(2, 1)` and the other two ascend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StarParams {
    pub y: i64,
    pub legs: [(i64, i64); 3],
}

impl StarParams {
    /// Validates and sorts; `y ≥ 2` and the leg denominators must be one of
    /// `(2,2,n)`, `(2,3,3)`, `(2,3,4)`, `(2,3,5)`.
    pub fn new(y: i64, l2: (i64, i64), l3: (i64, i64)) -> Result<Self> {
        Self::from_legs(y, [(2, 1), l2, l3])
            .ok_or_else(|| Error::InvalidParameters(format!("<{y}; 2,1; {l2:?}; {l3:?}> is not of type (N3)")))
    }

    fn from_legs(y: i64, mut legs: [(i64, i64); 3]) -> Option<Self> {
        if y < 2 {
            return None;
        }
        for &(n, l) in &legs {
            hj_expand(n, l).ok()?;
        }
        legs.sort_unstable();
        if legs[0] != (2, 1) {
            return None;
        }
        let ok = legs[1].0 == 2 || (legs[1].0 == 3 && (3..=5).contains(&legs[2].0));
        ok.then_some(StarParams { y, legs })
    }

    pub fn graph(&self) -> PlumbingGraph {
        let [a, b, c] = self.legs;
        build_star(self.y, a, b, c).expect("validated parameters")
    }

    /// The conjugate (P3) graph `<3−y; 2,1; n₂,n₂−λ₂; n₃,n₃−λ₃>`.
    pub fn conjugate_graph(&self) -> PlumbingGraph {
        let [a, b, c] = self.legs.map(|(n, l)| (n, n - l));
        build_star(3 - self.y, a, b, c).expect("validated parameters")
    }

    pub fn is_dihedral(&self) -> bool {
        self.legs[1] == (2, 1)
    }
}

/// Whether a (P2), (P4) or (P5) graph is presented with the `+1` vertex of
/// a dual blow-up or with the `0 − 0` tail of a claw extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Presentation {
    Dual,
    Claw,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeTag {
    N1,
    N2 {
        n: i64,
        lambda: i64,
    },
    N3(StarParams),
    P1,
    /// Dual blow-up at the left end of `<n, n−λ>`.
    P2 {
        n: i64,
        lambda: i64,
        form: Presentation,
    },
    /// The conjugate of the (N3) graph with these parameters.
    P3(StarParams),
    /// Dual blow-up of `<n, λ>` at the inner vertex `v`.
    P4 {
        n: i64,
        lambda: i64,
        v: usize,
        form: Presentation,
    },
    P5 {
        base: StarParams,
        v: usize,
        form: Presentation,
    },
}

impl TypeTag {
    pub fn name(&self) -> &'static str {
        match self {
            TypeTag::N1 => "N1",
            TypeTag::N2 { .. } => "N2",
            TypeTag::N3(_) => "N3",
            TypeTag::P1 => "P1",
            TypeTag::P2 { .. } => "P2",
            TypeTag::P3(_) => "P3",
            TypeTag::P4 { .. } => "P4",
            TypeTag::P5 { .. } => "P5",
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, TypeTag::N1 | TypeTag::N2 { .. } | TypeTag::N3(_))
    }

    /// Whether graphs of this type have cyclic boundary fundamental group.
    pub fn has_cyclic_pi1(&self) -> bool {
        !matches!(self, TypeTag::N3(_) | TypeTag::P3(_) | TypeTag::P5 { .. })
    }

    /// Rebuilds the graph the tag describes.
    pub fn graph(&self) -> Result<PlumbingGraph> {
        let attach = |base: PlumbingGraph, v: usize, form: Presentation| {
            let id = base.vertex(v).id.clone();
            match form {
                Presentation::Dual => dual_blow_up(&base, &id),
                Presentation::Claw => claw_extend(&base, &id),
            }
        };
        match *self {
            TypeTag::N1 => Ok(PlumbingGraph::empty()),
            TypeTag::N2 { n, lambda } => build_linear(n, lambda),
            TypeTag::N3(p) => Ok(p.graph()),
            TypeTag::P1 => Ok(PlumbingGraph::chain(&[0, 0])),
            TypeTag::P2 { n, lambda, form } => {
                if !(0 < lambda && lambda < n) {
                    return Err(Error::InvalidFraction { n, lambda });
                }
                attach(build_linear(n, n - lambda)?, 0, form)
            }
            TypeTag::P3(p) => Ok(p.conjugate_graph()),
            TypeTag::P4 { n, lambda, v, form } => {
                let base = build_linear(n, lambda)?;
                if v == 0 || v + 1 >= base.len() {
                    return Err(Error::InvalidParameters(format!("P4 needs an inner vertex, got {v}")));
                }
                attach(base, v, form)
            }
            TypeTag::P5 { base, v, form } => {
                let g = base.graph();
                if v >= g.len() {
                    return Err(Error::InvalidParameters(format!("no vertex {v} in the base")));
                }
                attach(g, v, form)
            }
        }
    }
}

impl core::fmt::Display for TypeTag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let star = |p: &StarParams| {
            let [a, b, c] = p.legs;
            format!("{}; {},{}; {},{}; {},{}", p.y, a.0, a.1, b.0, b.1, c.0, c.1)
        };
        let form = |p: &Presentation| match p {
            Presentation::Dual => "",
            Presentation::Claw => ", claw form",
        };
        match self {
            TypeTag::N1 | TypeTag::P1 => f.write_str(self.name()),
            TypeTag::N2 { n, lambda } => write!(f, "N2 <{n},{lambda}>"),
            TypeTag::N3(p) => write!(f, "N3 <{}>", star(p)),
            TypeTag::P2 { n, lambda, form: p } => write!(f, "P2 <{n},{lambda}>{}", form(p)),
            TypeTag::P3(p) => write!(f, "P3 (conjugate of <{}>)", star(p)),
            TypeTag::P4 { n, lambda, v, form: p } => write!(f, "P4 <{n},{lambda}> at {v}{}", form(p)),
            TypeTag::P5 { base, v, form: p } => write!(f, "P5 <{}> at {v}{}", star(base), form(p)),
        }
    }
}

// ---------------------------------------------------------------------------
// Structural matching

/// Vertex order along a linear graph starting from `start`, which must be
/// an end.
fn walk_chain(g: &PlumbingGraph, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).into_iter().find(|&w| w != prev);
        match next {
            Some(w) => {
                order.push(w);
                prev = cur;
                cur = w;
            }
            None => return order,
        }
    }
}

/// Leg self-intersections as a fraction `(n, λ)`, if they are all ≤ −2.
fn leg_fraction(g: &PlumbingGraph, leg: &[usize]) -> Option<(i64, i64)> {
    let ds: Vec<i64> = leg.iter().map(|&i| -g.vertex(i).self_int).collect();
    hj_eval(&ds).ok()
}

/// Canonical `<n, λ>` of an (N2) chain and the builder → graph index map.
fn match_n2(g: &PlumbingGraph) -> Option<(i64, i64, Vec<usize>)> {
    if g.is_empty() || !g.is_linear() || !g.all_genus_zero() {
        return None;
    }
    let start = (0..g.len()).find(|&i| g.degree(i) <= 1)?;
    let fwd = walk_chain(g, start);
    let (n, lf) = leg_fraction(g, &fwd)?;
    let mut rev = fwd.clone();
    rev.reverse();
    let (_, lr) = leg_fraction(g, &rev)?;
    Some(if lr < lf { (n, lr, rev) } else { (n, lf, fwd) })
}

/// The unique vertex of degree three with three linear legs, listed outward.
fn star_legs(g: &PlumbingGraph) -> Option<(usize, [Vec<usize>; 3])> {
    if !g.is_tree() || !g.all_genus_zero() {
        return None;
    }
    let branch = g.branch_point_indices();
    let [r] = branch[..] else { return None };
    let nb = g.neighbors(r);
    if nb.len() != 3 {
        return None;
    }
    let leg = |first: usize| {
        let mut out = vec![first];
        let (mut prev, mut cur) = (r, first);
        while let Some(w) = g.neighbors(cur).into_iter().find(|&w| w != prev) {
            out.push(w);
            prev = cur;
            cur = w;
        }
        out
    };
    Some((r, [leg(nb[0]), leg(nb[1]), leg(nb[2])]))
}

/// Sorted leg fractions with the builder → graph index map.
fn sort_legs(r: usize, legs: [Vec<usize>; 3], fracs: [(i64, i64); 3]) -> ([(i64, i64); 3], Vec<usize>) {
    let mut order = [0, 1, 2];
    order.sort_by_key(|&i| (fracs[i], legs[i].clone()));
    let mut map = vec![r];
    for &i in &order {
        map.extend_from_slice(&legs[i]);
    }
    (order.map(|i| fracs[i]), map)
}

fn match_n3(g: &PlumbingGraph) -> Option<(StarParams, Vec<usize>)> {
    let (r, legs) = star_legs(g)?;
    let y = -g.vertex(r).self_int;
    let mut fracs = [(0, 0); 3];
    for k in 0..3 {
        fracs[k] = leg_fraction(g, &legs[k])?;
    }
    let (sorted, map) = sort_legs(r, legs, fracs);
    let params = StarParams::from_legs(y, sorted)?;
    Some((params, map))
}

fn match_p3(g: &PlumbingGraph) -> Option<StarParams> {
    let (r, legs) = star_legs(g)?;
    let y = 3 + g.vertex(r).self_int;
    let mut fracs = [(0, 0); 3];
    for k in 0..3 {
        let (n, mu) = leg_fraction(g, &legs[k])?;
        fracs[k] = (n, n - mu);
    }
    StarParams::from_legs(y, fracs)
}

/// A graph with a dual blow-up or claw tail removed: the base, the vertex
/// the tail hung from (as a base index) and how it was attached.
struct Split {
    base: PlumbingGraph,
    u: usize,
    form: Presentation,
}

fn splits(g: &PlumbingGraph) -> Vec<Split> {
    let mut out = Vec::new();
    if !g.is_tree() || !g.all_genus_zero() || g.len() < 2 {
        return out;
    }
    let keep_without = |drop: &[usize]| -> Vec<usize> { (0..g.len()).filter(|i| !drop.contains(i)).collect() };
    let base_index = |keep: &[usize], u: usize| keep.iter().position(|&k| k == u).expect("kept");
    for p in 0..g.len() {
        if g.vertex(p).self_int == 1 && g.degree(p) == 1 {
            let u = g.neighbors(p)[0];
            let keep = keep_without(&[p]);
            let mut base = g.induced(&keep);
            let bu = base_index(&keep, u);
            base.vertex_mut(bu).self_int -= 1;
            out.push(Split { base, u: bu, form: Presentation::Dual });
        }
        if g.vertex(p).self_int == 0 && g.degree(p) == 1 {
            let z0 = g.neighbors(p)[0];
            if g.vertex(z0).self_int != 0 || g.degree(z0) != 2 {
                continue;
            }
            let u = g.neighbors(z0).into_iter().find(|&w| w != p).expect("degree two");
            let keep = keep_without(&[p, z0]);
            let base = g.induced(&keep);
            let bu = base_index(&keep, u);
            out.push(Split { base, u: bu, form: Presentation::Claw });
        }
    }
    out
}

/// Smallest builder index `j` such that attaching at `j` gives the same
/// graph as attaching at `v` (canonical choice under automorphisms).
pub(crate) fn canonical_attachment(base: &PlumbingGraph, v: usize) -> usize {
    let at = |j: usize| dual_blow_up(base, &base.vertex(j).id).expect("vertex exists");
    let target = at(v);
    (0..v).find(|&j| is_isomorphic(&at(j), &target)).unwrap_or(v)
}

fn match_split(s: &Split) -> Option<TypeTag> {
    let form = s.form;
    if let Some((n, _, map)) = match_n2(&s.base) {
        let k = map.len();
        // Read the chain from `u` when it is an end: that is the P2 base.
        if s.base.degree(s.u) <= 1 {
            let from_u = walk_chain(&s.base, s.u);
            let (n, mu) = leg_fraction(&s.base, &from_u)?;
            return Some(TypeTag::P2 { n, lambda: n - mu, form });
        }
        let pos = map.iter().position(|&i| i == s.u)?;
        let mut rev = map.clone();
        rev.reverse();
        let (_, lr) = leg_fraction(&s.base, &rev)?;
        let (_, lf) = leg_fraction(&s.base, &map)?;
        let (lambda, v) = core::cmp::min((lf, pos), (lr, k - 1 - pos));
        return Some(TypeTag::P4 { n, lambda, v, form });
    }
    let (base, map) = match_n3(&s.base)?;
    let pos = map.iter().position(|&i| i == s.u)?;
    let v = canonical_attachment(&base.graph(), pos);
    Some(TypeTag::P5 { base, v, form })
}

/// Structural type of `g` itself (no moves), checked in the order
/// P1, P2, P4, P3, P5, N1, N2, N3.
pub fn recognize_type(g: &PlumbingGraph) -> Option<TypeTag> {
    if !g.is_tree() || !g.all_genus_zero() {
        return None;
    }
    if g.len() == 2 && g.self_ints() == [0, 0] {
        return Some(TypeTag::P1);
    }
    let tagged: Vec<TypeTag> = splits(g).iter().filter_map(match_split).collect();
    let rank = |t: &TypeTag| match t {
        TypeTag::P2 { .. } => 0,
        TypeTag::P4 { .. } => 1,
        _ => 2,
    };
    if let Some(t) = tagged.iter().filter(|t| rank(t) < 2).min_by_key(|t| rank(t)) {
        return Some(t.clone());
    }
    if let Some(p) = match_p3(g) {
        return Some(TypeTag::P3(p));
    }
    if let Some(t) = tagged.into_iter().next() {
        return Some(t);
    }
    if g.is_empty() {
        return Some(TypeTag::N1);
    }
    if let Some((n, lambda, _)) = match_n2(g) {
        return Some(TypeTag::N2 { n, lambda });
    }
    match_n3(g).map(|(p, _)| TypeTag::N3(p))
}

/// A type found somewhere in the blow-up class of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMatch {
    pub tag: TypeTag,
    /// The representative that matched.
    pub graph: PlumbingGraph,
    /// Moves from the input to `graph`.
    pub trace: MoveTrace,
}

/// Budget used by the type search inside finiteness and realizability.
pub const TYPE_SEARCH_BUDGET: SearchBudget = SearchBudget { extra_vertices: 2, depth: 4, max_nodes: 20_000 };

/// Looks for a type on `g`, then on its minimal model, then in a bounded
/// neighbourhood of the minimal model. `Ok(None)` means nothing was found
/// within the budget.
pub fn find_type_in_class(g: &PlumbingGraph, budget: SearchBudget) -> Result<Option<ClassMatch>> {
    g.require_sphere_tree()?;
    if let Some(tag) = recognize_type(g) {
        return Ok(Some(ClassMatch { tag, graph: g.clone(), trace: MoveTrace::default() }));
    }
    let (m, mut trace) = minimal_model(g)?;
    match explore_class(&m, budget, recognize_type)? {
        Exploration::Found { value, trace: rest, graph } => {
            trace.steps.extend(rest.steps);
            Ok(Some(ClassMatch { tag: value, graph, trace }))
        }
        Exploration::Exhausted | Exploration::OutOfBudget => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// Conjugates and the dihedral presentations

/// (N1) ↔ (P1), (N2) ↔ (P2) and (N3) ↔ (P3).
pub fn conjugate_of(tag: &TypeTag) -> Result<TypeTag> {
    match *tag {
        TypeTag::N1 => Ok(TypeTag::P1),
        TypeTag::P1 => Ok(TypeTag::N1),
        TypeTag::N2 { n, lambda } => Ok(TypeTag::P2 { n, lambda, form: Presentation::Dual }),
        TypeTag::P2 { n, lambda, .. } => Ok(TypeTag::N2 { n, lambda }),
        TypeTag::N3(p) => Ok(TypeTag::P3(p)),
        TypeTag::P3(p) => Ok(TypeTag::N3(p)),
        TypeTag::P4 { .. } | TypeTag::P5 { .. } => Err(Error::NoConjugateDefined),
    }
}

/// Converts between a dihedral star `<y; 2,1; 2,1; n,λ>` with `y ≤ 0` and
/// the chain presentation `(c, c₁, …, c_k)`: centre `−1` with two `−2`
/// leaves and the leg `−c+1, −c₁, …, −c_k`. When `c ≥ 3` the chain
/// presentation already is the star with `y = 1` and is returned unchanged.
pub fn dihedral_form_convert(g: &PlumbingGraph) -> Result<PlumbingGraph> {
    let (r, legs) = star_legs(g).ok_or(Error::NotInFamily)?;
    let single_two = |leg: &Vec<usize>| leg.len() == 1 && g.vertex(leg[0]).self_int == -2;
    let mut order = [0, 1, 2];
    order.sort_by_key(|&k| (!single_two(&legs[k]), k));
    if !single_two(&legs[order[0]]) || !single_two(&legs[order[1]]) {
        return Err(Error::NotInFamily);
    }
    let third: Vec<i64> = legs[order[2]].iter().map(|&i| -g.vertex(i).self_int).collect();
    let centre = g.vertex(r).self_int;
    if centre == -1 && third[0] == 1 {
        // (c, c₁, …) with c = 2: strip the leading twos.
        let mut s = vec![2];
        s.extend_from_slice(&third[1..]);
        if s.iter().any(|&d| d < 2) {
            return Err(Error::NotInFamily);
        }
        let m = s.iter().take_while(|&&d| d == 2).count();
        if m == s.len() {
            return Err(Error::NotInFamily);
        }
        let mut leg = vec![-(s[m] - 1)];
        leg.extend(s[m + 1..].iter().map(|d| -d));
        return Ok(star_from_legs(m as i64 - 1, [&[-2], &[-2], &leg]));
    }
    if third.iter().any(|&d| d < 2) {
        return Err(Error::NotInFamily);
    }
    if centre == -1 {
        return Ok(g.clone());
    }
    if centre < 0 {
        return Err(Error::NotInFamily);
    }
    // Star with y = −centre ≤ 0.
    let mut leg = vec![-1];
    leg.extend(core::iter::repeat_n(-2, centre as usize));
    leg.push(-(third[0] + 1));
    leg.extend(third[1..].iter().map(|d| -d));
    Ok(star_from_legs(-1, [&[-2], &[-2], &leg]))
}

/// A pair of spheres forcing `b⁺ ≥ 2`: adjacent with `s₁ > s₂ ≥ 1`, or
/// non-adjacent with `s₁ ≥ 1` and `s₂ ≥ 0`.
pub fn capping_obstruction_spheres(g: &PlumbingGraph) -> Option<(VertexId, VertexId)> {
    let n = g.len();
    let s = |i: usize| g.vertex(i).self_int;
    let sphere = |i: usize| g.vertex(i).genus == 0;
    let id = |i: usize| g.vertex(i).id.clone();
    for i in (0..n).filter(|&i| sphere(i)) {
        for j in g.neighbors(i) {
            if sphere(j) && s(i) > s(j) && s(j) >= 1 {
                return Some((id(i), id(j)));
            }
        }
    }
    for i in (0..n).filter(|&i| sphere(i) && s(i) >= 1) {
        for j in (0..n).filter(|&j| j != i && sphere(j) && s(j) >= 0) {
            if g.edge_multiplicity(i, j) == 0 {
                return Some((id(i), id(j)));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Realizability

/// Why a graph is or is not realizable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RealizabilityReason {
    /// Equivalent to a graph of type (P1)–(P4).
    Type(TypeTag),
    /// Equivalent to a (P5) graph whose centre is not `−2`.
    CentreNotTwo(TypeTag),
    /// Equivalent to a (P5) graph whose attaching vertex is marked `Y`.
    MarkedY(TypeTag),
    /// Equivalent to a (P5) graph whose attaching vertex is marked `X`.
    MarkedX(TypeTag),
    /// `b⁺ ≠ 1`.
    PositiveInertia(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RealizabilityVerdict {
    Yes(RealizabilityReason),
    No(RealizabilityReason),
    Unknown,
}

/// Realizability of the (P5) graph obtained from the (N3) graph `base` at
/// vertex `v` (an index of `base`).
pub fn p5_realizable(base: &PlumbingGraph, v: usize, tables: &RealizabilityTables) -> Result<RealizabilityVerdict> {
    let (params, map) = match_n3(base).ok_or(Error::NotN3)?;
    if v >= base.len() {
        return Err(Error::InvalidParameters(format!("no vertex {v}")));
    }
    let pos = map.iter().position(|&i| i == v).expect("map covers the base");
    let tag = TypeTag::P5 { base: params, v: canonical_attachment(&params.graph(), pos), form: Presentation::Claw };
    if params.y != 2 {
        return Ok(RealizabilityVerdict::Yes(RealizabilityReason::CentreNotTwo(tag)));
    }
    Ok(match tables.mark(base, v) {
        Some(Mark::Y) => RealizabilityVerdict::Yes(RealizabilityReason::MarkedY(tag)),
        Some(Mark::X) => RealizabilityVerdict::No(RealizabilityReason::MarkedX(tag)),
        None => RealizabilityVerdict::Unknown,
    })
}

/// Whether some closed symplectic manifold contains a divisor with graph
/// `g`. The graph must have finite boundary fundamental group and an
/// intersection form that is not negative definite.
pub fn realizable(
    g: &PlumbingGraph,
    budget: SearchBudget,
    tables: &RealizabilityTables,
) -> Result<RealizabilityVerdict> {
    g.require_sphere_tree()?;
    if let FinitenessVerdict::Infinite { .. } = is_finite_pi1(g, budget)? {
        return Err(Error::InfinitePi1);
    }
    let q = g.intersection_matrix();
    if is_negative_definite(&q) {
        return Err(Error::NegativeDefinite);
    }
    let b_plus = inertia(&q).n_plus;
    if b_plus != 1 {
        return Ok(RealizabilityVerdict::No(RealizabilityReason::PositiveInertia(b_plus)));
    }
    let Some(found) = find_type_in_class(g, budget)? else {
        return Ok(RealizabilityVerdict::Unknown);
    };
    match found.tag {
        TypeTag::P5 { base, v, .. } => p5_realizable(&base.graph(), v, tables),
        tag @ (TypeTag::P1 | TypeTag::P2 { .. } | TypeTag::P3(_) | TypeTag::P4 { .. }) => {
            Ok(RealizabilityVerdict::Yes(RealizabilityReason::Type(tag)))
        }
        // Negative types are negative definite, excluded above.
        _ => Ok(RealizabilityVerdict::Unknown),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompactifyingVerdict {
    CappingDivisor,
    FillingDivisor,
    Neither,
    Unknown,
}

/// Whether an augmented divisor caps or fills.
pub fn compactifying_verdict(
    ag: &AugmentedGraph,
    budget: SearchBudget,
    tables: &RealizabilityTables,
) -> Result<CompactifyingVerdict> {
    let g = ag.graph();
    match is_finite_pi1(g, budget)? {
        FinitenessVerdict::Infinite { .. } => return Err(Error::InfinitePi1),
        FinitenessVerdict::Unknown => return Ok(CompactifyingVerdict::Unknown),
        FinitenessVerdict::Finite { .. } => {}
    }
    if is_negative_definite(&g.intersection_matrix()) {
        return Ok(CompactifyingVerdict::FillingDivisor);
    }
    if positive_gs(ag).is_none() {
        return Ok(CompactifyingVerdict::Neither);
    }
    Ok(match realizable(g, budget, tables)? {
        RealizabilityVerdict::Yes(_) => CompactifyingVerdict::CappingDivisor,
        RealizabilityVerdict::No(_) => CompactifyingVerdict::Neither,
        RealizabilityVerdict::Unknown => CompactifyingVerdict::Unknown,
    })
}

/// Short human label for a verdict.
pub fn describe_reason(r: &RealizabilityReason) -> String {
    match r {
        RealizabilityReason::Type(t) => format!("equivalent to {t}"),
        RealizabilityReason::CentreNotTwo(t) => format!("equivalent to {t}, centre not -2"),
        RealizabilityReason::MarkedY(t) => format!("equivalent to {t}, vertex marked Y"),
        RealizabilityReason::MarkedX(t) => format!("equivalent to {t}, vertex marked X"),
        RealizabilityReason::PositiveInertia(b) => format!("b+ = {b}, not 1"),
    }
}

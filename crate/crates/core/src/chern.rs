//! First Chern class coefficients and characterizing numbers, the two
//! obstructions built on them, and the searches for (P5) graphs those
//! obstructions cannot rule out.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::families::{canonical_attachment, p5_realizable, RealizabilityTables, RealizabilityVerdict, StarParams};
use crate::linalg::{solve, SolutionSet};
use crate::moves::{claw_extend, dual_blow_up};
use crate::{rat, tree_canonical_form, Error, PlumbingGraph, Rational, Result};

/// `Q w = b` with `bᵢ = sᵢ + 2`, `c₁² = wᵀb` and `n = c₁² + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    pub w: Vec<Rational>,
    pub c1_square: Rational,
    pub characterizing_number: Rational,
}

pub fn chern_data(g: &PlumbingGraph) -> Result<ChernData> {
    g.require_sphere_tree()?;
    let q = g.intersection_matrix();
    let b: Vec<Rational> = g.self_ints().iter().map(|&s| rat(s + 2)).collect();
    let SolutionSet::Unique(w) = solve(&q, &b) else {
        return Err(Error::DegenerateIntersectionForm);
    };
    let c1_square = w.iter().zip(&b).fold(Rational::zero(), |acc, (x, y)| acc + x * y);
    let characterizing_number = &c1_square + rat(g.len() as i64);
    Ok(ChernData { w, c1_square, characterizing_number })
}

/// `n^T + n^{cap}`; a conjugate pair needs this to be 10.
pub fn conjugate_sum_check(t: &PlumbingGraph, cap: &PlumbingGraph) -> Result<Rational> {
    Ok(chern_data(t)?.characterizing_number + chern_data(cap)?.characterizing_number)
}

/// Whether `n = 10`, which a divisor compactifying a rational homology disk
/// must satisfy.
pub fn qhd_obstruction(g: &PlumbingGraph) -> Result<bool> {
    Ok(chern_data(g)?.characterizing_number == rat(10))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBounds {
    /// Largest `y` (centre `−y`) of the (N3) graph.
    pub max_y: i64,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds { max_y: 20 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnumerationKind {
    /// `n^T + n^{T^(v)} = 10`.
    ConjugateExceptions,
    /// `n^{T^(v)} = 10`.
    QhdExceptions,
}

/// A pair `(T, v)`: the (N3) graph `T` and the vertex `v` whose claw
/// extension survives the obstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exception {
    pub base: StarParams,
    /// Builder index, smallest among vertices related by an automorphism.
    pub v: usize,
    pub n_base: Rational,
    pub n_claw: Rational,
    pub realizable: RealizabilityVerdict,
}

impl Exception {
    pub fn base_graph(&self) -> PlumbingGraph {
        self.base.graph()
    }

    /// `T^(v)`.
    pub fn claw_graph(&self) -> PlumbingGraph {
        let t = self.base.graph();
        claw_extend(&t, &t.vertex(self.v).id).expect("vertex exists")
    }

    pub fn is_realizable(&self) -> bool {
        matches!(self.realizable, RealizabilityVerdict::Yes(_))
    }
}

/// Non-dihedral (N3) parameters with `2 ≤ y ≤ max_y`, sorted.
pub fn candidates(bounds: EnumerationBounds) -> Vec<StarParams> {
    let coprime = |n: i64| (1..n).filter(move |&l| num_integer::gcd(n, l) == 1);
    let mut out = BTreeSet::new();
    for y in 2..=bounds.max_y {
        for n3 in 3..=5 {
            for l2 in coprime(3) {
                for l3 in coprime(n3) {
                    out.insert(StarParams::new(y, (3, l2), (n3, l3)).expect("valid parameters"));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// All vertices of `T` passing the test of `kind`.
pub fn evaluate(kind: EnumerationKind, base: &StarParams, tables: &RealizabilityTables) -> Result<Vec<Exception>> {
    let t = base.graph();
    let n_base = chern_data(&t)?.characterizing_number;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for v in 0..t.len() {
        let cv = canonical_attachment(&t, v);
        if !seen.insert(cv) {
            continue;
        }
        let claw = claw_extend(&t, &t.vertex(v).id)?;
        let n_claw = chern_data(&claw)?.characterizing_number;
        let hit = match kind {
            EnumerationKind::ConjugateExceptions => &n_base + &n_claw == rat(10),
            EnumerationKind::QhdExceptions => n_claw == rat(10),
        };
        if hit {
            out.push(Exception {
                base: *base,
                v: cv,
                n_base: n_base.clone(),
                n_claw,
                realizable: p5_realizable(&t, v, tables)?,
            });
        }
    }
    Ok(out)
}

/// Removes pairs giving isomorphic marked graphs and sorts by parameters.
pub fn merge(found: impl IntoIterator<Item = Exception>) -> Vec<Exception> {
    let mut by_key: BTreeMap<String, Exception> = BTreeMap::new();
    for e in found {
        let t = e.base.graph();
        let marked = dual_blow_up(&t, &t.vertex(e.v).id).expect("vertex exists");
        let key = tree_canonical_form(&marked).expect("tree");
        match by_key.get(&key) {
            Some(old) if (old.base, old.v) <= (e.base, e.v) => {}
            _ => {
                by_key.insert(key, e);
            }
        }
    }
    let mut out: Vec<Exception> = by_key.into_values().collect();
    out.sort_by_key(|e| (e.base, e.v));
    out
}

pub fn enumerate(
    kind: EnumerationKind,
    bounds: EnumerationBounds,
    tables: &RealizabilityTables,
) -> Result<Vec<Exception>> {
    let mut found = Vec::new();
    for p in candidates(bounds) {
        found.extend(evaluate(kind, &p, tables)?);
    }
    Ok(merge(found))
}

/// (P5) graphs not arising from dihedral graphs with `n^T + n^{T^(v)} = 10`.
pub fn enumerate_conjugate_exceptions(
    bounds: EnumerationBounds,
    tables: &RealizabilityTables,
) -> Result<Vec<Exception>> {
    enumerate(EnumerationKind::ConjugateExceptions, bounds, tables)
}

/// (P5) graphs not arising from dihedral graphs with `n^{T^(v)} = 10`.
pub fn enumerate_qhd_exceptions(bounds: EnumerationBounds, tables: &RealizabilityTables) -> Result<Vec<Exception>> {
    enumerate(EnumerationKind::QhdExceptions, bounds, tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_star;
    use alloc::vec;

    #[test]
    fn e8_and_its_cap() {
        let e8 = build_star(2, (2, 1), (3, 2), (5, 4)).unwrap();
        let d = chern_data(&e8).unwrap();
        assert!(d.w.iter().all(Zero::is_zero));
        assert_eq!(d.characterizing_number, rat(8));
        let cap = build_star(1, (2, 1), (3, 1), (5, 1)).unwrap();
        let d = chern_data(&cap).unwrap();
        assert_eq!(d.w, vec![rat(2), rat(1), rat(1), rat(1)]);
        assert_eq!(d.c1_square, rat(-2));
        assert_eq!(conjugate_sum_check(&e8, &cap).unwrap(), rat(10));
        assert_eq!(conjugate_sum_check(&e8, &e8).unwrap(), rat(16));
        assert!(!qhd_obstruction(&e8).unwrap());
    }

    #[test]
    fn degenerate_and_trivial() {
        assert_eq!(chern_data(&PlumbingGraph::chain(&[0])), Err(Error::DegenerateIntersectionForm));
        let d = chern_data(&PlumbingGraph::chain(&[-2])).unwrap();
        assert_eq!(d.w, vec![rat(0)]);
        assert_eq!(d.characterizing_number, rat(1));
    }

    #[test]
    fn candidate_space() {
        // 3 + 4 + 8 parameter sets per y.
        assert_eq!(candidates(EnumerationBounds { max_y: 2 }).len(), 15);
        assert!(candidates(EnumerationBounds::default()).iter().all(|p| !p.is_dihedral()));
    }
}

//! The boundary fundamental group of a tree of spheres: its standard
//! presentation, the order of its abelianization, and a pattern-based
//! finiteness decision.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::families::{find_type_in_class, recognize_type, TypeTag};
use crate::linalg::{determinant, is_negative_definite};
use crate::moves::{minimal_model, SearchBudget};
use crate::{PlumbingGraph, Result};

/// A syllable `e_g^k`.
pub type Syllable = (usize, i64);

/// Generators `e₁ … e_n` (0-based here), commutation relations
/// `e_i e_j^q = e_j^q e_i` and one product relation `∏_j e_j^{q_ij} = 1`
/// per vertex, in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: usize,
    /// `(i, j, q_ij)` for every pair `i < j`.
    pub commutations: Vec<(usize, usize, i64)>,
    pub products: Vec<Vec<Syllable>>,
}

fn word_text(w: &[Syllable]) -> String {
    if w.is_empty() {
        return String::from("1");
    }
    let parts: Vec<String> =
        w.iter().map(|&(g, k)| if k == 1 { format!("e{}", g + 1) } else { format!("e{}^{k}", g + 1) }).collect();
    parts.join("*")
}

impl GroupPresentation {
    /// All relators as words (commutators first, then products).
    pub fn relators(&self) -> Vec<Vec<Syllable>> {
        let mut out = Vec::new();
        for &(i, j, q) in &self.commutations {
            if q != 0 {
                out.push(reduce(&[(i, 1), (j, q), (i, -1), (j, -q)]));
            }
        }
        out.extend(self.products.iter().cloned());
        out
    }

    /// Generators and relators as text, one relator per line (`e1^2*e2`).
    pub fn to_text(&self) -> String {
        let gens: Vec<String> = (1..=self.generators).map(|i| format!("e{i}")).collect();
        let mut out = format!("generators: {}\n", gens.join(", "));
        for &(i, j, q) in &self.commutations {
            if q != 0 {
                out.push_str(&format!("[e{}, e{}^{q}]\n", i + 1, j + 1));
            }
        }
        for p in &self.products {
            out.push_str(&word_text(p));
            out.push('\n');
        }
        out
    }
}

pub fn pi1_presentation(g: &PlumbingGraph) -> Result<GroupPresentation> {
    g.require_sphere_tree()?;
    let q = g.intersection_matrix();
    let n = g.len();
    let mut commutations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            commutations.push((i, j, q.get(i, j)));
        }
    }
    let products = (0..n).map(|i| (0..n).filter(|&j| q.get(i, j) != 0).map(|j| (j, q.get(i, j))).collect()).collect();
    Ok(GroupPresentation { generators: n, commutations, products })
}

/// `|δ|`, or `None` when the abelianization is infinite (`δ = 0`).
pub fn abelianization_order(g: &PlumbingGraph) -> Result<Option<BigInt>> {
    g.require_sphere_tree()?;
    let d = determinant(&g.intersection_matrix()).abs();
    Ok((!d.is_zero()).then_some(d))
}

// ---------------------------------------------------------------------------
// Tietze reduction

/// Free reduction: merges adjacent syllables and drops zero exponents.
fn reduce(w: &[Syllable]) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::with_capacity(w.len());
    for &(g, k) in w {
        match out.last_mut() {
            Some(last) if last.0 == g => {
                last.1 += k;
                if last.1 == 0 {
                    out.pop();
                }
            }
            _ if k != 0 => out.push((g, k)),
            _ => {}
        }
    }
    out
}

/// Free and cyclic reduction.
fn cyclic_reduce(w: &[Syllable]) -> Vec<Syllable> {
    let mut w = reduce(w);
    while w.len() >= 2 && w[0].0 == w[w.len() - 1].0 {
        let (_, k) = w.pop().expect("nonempty");
        w[0].1 += k;
        if w[0].1 == 0 {
            w.remove(0);
        }
    }
    w
}

fn inverse(w: &[Syllable]) -> Vec<Syllable> {
    w.iter().rev().map(|&(g, k)| (g, -k)).collect()
}

const WORD_CAP: usize = 4096;

/// Number of generators left after repeatedly eliminating a generator that
/// occurs exactly once, with exponent ±1, in some relator.
pub fn tietze_reduce(p: &GroupPresentation) -> usize {
    let mut rels: Vec<Vec<Syllable>> =
        p.relators().iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
    let mut alive = p.generators;
    loop {
        let mut pick = None;
        'search: for (ri, r) in rels.iter().enumerate() {
            for (si, &(g, k)) in r.iter().enumerate() {
                if k.abs() == 1 && r.iter().filter(|s| s.0 == g).count() == 1 {
                    pick = Some((ri, si));
                    break 'search;
                }
            }
        }
        let Some((ri, si)) = pick else { return alive };
        let r = rels.swap_remove(ri);
        let (g, k) = r[si];
        // r = A g^k B, so g^k = A⁻¹ B⁻¹.
        let mut value = inverse(&r[..si]);
        value.extend(inverse(&r[si + 1..]));
        let value = reduce(&if k == 1 { value } else { inverse(&value) });
        let mut next = Vec::with_capacity(rels.len());
        for rel in rels {
            let mut w = Vec::new();
            for &(h, e) in &rel {
                if h == g {
                    let piece = if e > 0 { value.clone() } else { inverse(&value) };
                    for _ in 0..e.unsigned_abs() {
                        w.extend_from_slice(&piece);
                    }
                } else {
                    w.push((h, e));
                }
            }
            let w = cyclic_reduce(&w);
            if w.len() > WORD_CAP {
                return alive - 1;
            }
            if !w.is_empty() {
                next.push(w);
            }
        }
        rels = next;
        alive -= 1;
    }
}

// ---------------------------------------------------------------------------
// Finiteness

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FinitenessReason {
    /// `δ = 0`: the abelianization is infinite.
    ZeroDeterminant,
    /// The graph (or one equivalent to it) has this type.
    TypeMatch(TypeTag),
    /// The presentation collapses to at most one generator.
    Presentation,
    /// Negative definite, minimal, at least two branch points.
    SeveralBranchPoints,
    /// Minimal, one branch point, negative branches, not (N3) or (P3).
    OneBranchPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FinitenessVerdict {
    Finite {
        /// Group order when known (equal to `|δ|` for cyclic groups).
        order: Option<BigInt>,
        cyclic: bool,
        reason: FinitenessReason,
    },
    Infinite {
        reason: FinitenessReason,
    },
    Unknown,
}

impl FinitenessVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, FinitenessVerdict::Finite { .. })
    }
}

/// Decides finiteness by, in order: `δ = 0`; a type on the graph or its
/// minimal model; collapse of the presentation to one generator; the
/// branch-point patterns on the minimal model; a type found by a bounded
/// search. Anything else is `Unknown`.
pub fn is_finite_pi1(g: &PlumbingGraph, budget: SearchBudget) -> Result<FinitenessVerdict> {
    g.require_sphere_tree()?;
    let Some(delta) = abelianization_order(g)? else {
        return Ok(FinitenessVerdict::Infinite { reason: FinitenessReason::ZeroDeterminant });
    };
    let by_type = |tag: TypeTag| {
        let cyclic = tag.has_cyclic_pi1();
        FinitenessVerdict::Finite {
            order: cyclic.then(|| delta.clone()),
            cyclic,
            reason: FinitenessReason::TypeMatch(tag),
        }
    };
    if let Some(tag) = recognize_type(g) {
        return Ok(by_type(tag));
    }
    let (m, _) = minimal_model(g)?;
    if let Some(tag) = recognize_type(&m) {
        return Ok(by_type(tag));
    }
    if tietze_reduce(&pi1_presentation(g)?) <= 1 {
        return Ok(FinitenessVerdict::Finite {
            order: Some(delta),
            cyclic: true,
            reason: FinitenessReason::Presentation,
        });
    }
    let branch = m.branch_point_indices();
    if branch.len() >= 2 && is_negative_definite(&m.intersection_matrix()) {
        return Ok(FinitenessVerdict::Infinite { reason: FinitenessReason::SeveralBranchPoints });
    }
    if let [r] = branch[..] {
        if (0..m.len()).all(|i| i == r || m.vertex(i).self_int < 0) {
            // Neither (N3) nor (P3): `recognize_type(&m)` failed above.
            return Ok(FinitenessVerdict::Infinite { reason: FinitenessReason::OneBranchPoint });
        }
    }
    Ok(match find_type_in_class(g, budget)? {
        Some(found) => by_type(found.tag),
        None => FinitenessVerdict::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_star;
    use crate::linalg::smith_normal_form;
    use crate::Vertex;
    use alloc::vec;

    #[test]
    fn lens_example_presentation() {
        let g = PlumbingGraph::chain(&[2, 1]);
        let p = pi1_presentation(&g).unwrap();
        assert_eq!(p.products, vec![vec![(0, 2), (1, 1)], vec![(0, 1), (1, 1)]]);
        assert!(p.to_text().contains("e1^2*e2\ne1*e2\n"));
        assert_eq!(abelianization_order(&g).unwrap(), Some(BigInt::from(1)));
        assert_eq!(tietze_reduce(&p), 0);
    }

    #[test]
    fn single_vertex_and_zero_zero() {
        let p = pi1_presentation(&PlumbingGraph::chain(&[5])).unwrap();
        assert_eq!(p.products, vec![vec![(0, 5)]]);
        assert_eq!(abelianization_order(&PlumbingGraph::chain(&[0])).unwrap(), None);
        let p = pi1_presentation(&PlumbingGraph::chain(&[0, 0])).unwrap();
        assert_eq!(p.products, vec![vec![(1, 1)], vec![(0, 1)]]);
        assert_eq!(tietze_reduce(&p), 0);
    }

    #[test]
    fn chains_are_cyclic_of_order_n() {
        for (n, l) in [(7, 4), (13, 5), (2, 1), (9, 2)] {
            let g = crate::families::build_linear(n, l).unwrap();
            assert_eq!(abelianization_order(&g).unwrap(), Some(BigInt::from(n)));
            let v = is_finite_pi1(&g, SearchBudget::default()).unwrap();
            assert!(matches!(v, FinitenessVerdict::Finite { cyclic: true, .. }));
        }
    }

    #[test]
    fn star_types_are_finite_noncyclic() {
        let e8 = build_star(2, (2, 1), (3, 2), (5, 4)).unwrap();
        let v = is_finite_pi1(&e8, SearchBudget::default()).unwrap();
        assert!(matches!(v, FinitenessVerdict::Finite { cyclic: false, .. }));
        let t = build_star(2, (2, 1), (3, 1), (3, 1)).unwrap();
        assert!(matches!(
            is_finite_pi1(&t, SearchBudget::default()).unwrap(),
            FinitenessVerdict::Finite { cyclic: false, .. }
        ));
        assert_eq!(smith_normal_form(&e8.intersection_matrix()), vec![BigInt::from(1); 8]);
    }

    #[test]
    fn two_branch_points_are_infinite() {
        // Two (−3,−2,−3) claws whose centres are joined through a −2.
        let ids = ["a1", "c1", "b1", "m", "a2", "c2", "b2"];
        let s = [-3, -2, -3, -2, -3, -2, -3];
        let vertices = ids.iter().zip(s).map(|(i, s)| Vertex::sphere(*i, s)).collect();
        let e = |a: &str, b: &str| (a.into(), b.into());
        let g = PlumbingGraph::new(
            vertices,
            vec![e("a1", "c1"), e("b1", "c1"), e("c1", "m"), e("m", "c2"), e("a2", "c2"), e("b2", "c2")],
        )
        .unwrap();
        assert!(is_negative_definite(&g.intersection_matrix()));
        assert_eq!(
            is_finite_pi1(&g, SearchBudget::default()).unwrap(),
            FinitenessVerdict::Infinite { reason: FinitenessReason::SeveralBranchPoints }
        );
    }

    #[test]
    fn one_branch_point_outside_the_list() {
        let g = build_star(2, (3, 1), (3, 1), (3, 1)).unwrap();
        assert_eq!(
            is_finite_pi1(&g, SearchBudget::default()).unwrap(),
            FinitenessVerdict::Infinite { reason: FinitenessReason::OneBranchPoint }
        );
    }
}

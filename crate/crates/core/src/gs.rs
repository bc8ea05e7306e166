//! GS criteria, the concave/convex flowchart and inflation paths.
//!
//! For an augmented graph with intersection form `Q` and areas `a`, a lift is
//! any `z` with `Q z = a`. The positive criterion asks for a lift in the open
//! positive orthant, the negative one for a lift in the closed negative
//! orthant.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::linalg::{self, IntMatrix, SolutionSet};
use crate::polyhedron::{find_point, Constraint};
use crate::{all_positive, mat_vec, rat, AugmentedGraph, Error, Precondition, Rational, Result};

/// Every lift `z` with `Q z = a`. Empty exactly when the symplectic form is
/// not exact on the boundary.
pub fn exact_on_boundary(ag: &AugmentedGraph) -> SolutionSet {
    linalg::solve(&ag.graph().intersection_matrix(), ag.area())
}

/// Point of the affine family `p + Σ t_j k_j` whose coordinates are all
/// positive (`strict`) or all non-positive.
fn lift_in_orthant(set: &SolutionSet, strict_positive: bool) -> Option<Vec<Rational>> {
    let ok = |z: &[Rational]| {
        if strict_positive {
            all_positive(z)
        } else {
            z.iter().all(|x| !x.is_positive())
        }
    };
    match set {
        SolutionSet::Empty => None,
        SolutionSet::Unique(z) => ok(z).then(|| z.clone()),
        SolutionSet::Affine { particular, kernel } => {
            if ok(particular) {
                return Some(particular.clone());
            }
            let sign = if strict_positive { rat(1) } else { rat(-1) };
            let constraints: Vec<Constraint> = (0..particular.len())
                .map(|i| Constraint {
                    coeffs: kernel.iter().map(|k| &k[i] * &sign).collect(),
                    constant: &particular[i] * &sign,
                    strict: strict_positive,
                })
                .collect();
            let t = find_point(kernel.len(), &constraints)?;
            let mut z = particular.clone();
            for (tj, k) in t.iter().zip(kernel) {
                for (zi, ki) in z.iter_mut().zip(k) {
                    *zi += tj * ki;
                }
            }
            debug_assert!(ok(&z));
            Some(z)
        }
    }
}

/// Lift of `a` through `q` with every entry strictly positive.
pub fn positive_lift(q: &IntMatrix, a: &[Rational]) -> Option<Vec<Rational>> {
    lift_in_orthant(&linalg::solve(q, a), true)
}

/// Lift of `a` through `q` with every entry non-positive.
pub fn nonpositive_lift(q: &IntMatrix, a: &[Rational]) -> Option<Vec<Rational>> {
    lift_in_orthant(&linalg::solve(q, a), false)
}

/// Witness for the positive GS criterion, if it holds.
pub fn positive_gs(ag: &AugmentedGraph) -> Option<Vec<Rational>> {
    lift_in_orthant(&exact_on_boundary(ag), true)
}

/// Witness for the negative GS criterion, if it holds.
pub fn negative_gs(ag: &AugmentedGraph) -> Option<Vec<Rational>> {
    lift_in_orthant(&exact_on_boundary(ag), false)
}

/// `λ = -z`.
pub fn wrapping_numbers(z: &[Rational]) -> Vec<Rational> {
    z.iter().map(|x| -x).collect()
}

/// A vector `z > 0` with `Q z > 0`, for symmetric `Q` with non-negative
/// off-diagonal entries that is not negative definite and has a positive
/// vector in its image.
///
/// Negative diagonal entries are eliminated one at a time by a congruence;
/// the reduced problem is solved recursively and the eliminated coordinate
/// is placed just below the value that would zero out its row.
pub fn trichotomy_witness(q: &IntMatrix) -> Result<Vec<Rational>> {
    let n = q.dim();
    if !q.is_symmetric() {
        return Err(Error::InvalidParameters("matrix is not symmetric".into()));
    }
    if (0..n).any(|i| (0..n).any(|j| i != j && q.get(i, j) < 0)) {
        return Err(Error::PreconditionFailed(Precondition::NegativeOffDiagonal));
    }
    if linalg::is_negative_definite(q) {
        return Err(Error::PreconditionFailed(Precondition::NegativeDefinite));
    }
    let m: Vec<Vec<Rational>> = q.rows().into_iter().map(|r| r.into_iter().map(rat).collect()).collect();
    let z = reduce(m)?;
    debug_assert!(all_positive(&z) && all_positive(&mat_vec(q, &z)));
    Ok(z)
}

fn rat_mat_vec(m: &[Vec<Rational>], z: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(z).map(|(a, b)| a * b).sum()).collect()
}

fn reduce(m: Vec<Vec<Rational>>) -> Result<Vec<Rational>> {
    let n = m.len();
    let Some(k) = (0..n).rev().find(|&i| m[i][i].is_negative()) else {
        // All diagonal entries non-negative: the all-ones vector works unless
        // a row vanishes.
        if m.iter().any(|row| row.iter().all(Zero::is_zero)) {
            return Err(Error::PreconditionFailed(Precondition::NoPositiveImage));
        }
        return Ok(vec![Rational::one(); n]);
    };
    if n == 1 {
        return Err(Error::PreconditionFailed(Precondition::NegativeDefinite));
    }
    let qkk = m[k][k].clone();
    let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let l: Vec<Rational> = others.iter().map(|&j| -&m[k][j] / &qkk).collect();
    let reduced: Vec<Vec<Rational>> =
        others.iter().map(|&i| others.iter().map(|&j| &m[i][j] - &m[i][k] * &m[k][j] / &qkk).collect()).collect();
    let y = reduce(reduced)?;
    let pull: Rational = l.iter().zip(&y).map(|(a, b)| a * b).sum();
    if !pull.is_positive() {
        // Row k has no positive off-diagonal entry: it spans a negative
        // definite block on its own.
        return Err(Error::PreconditionFailed(Precondition::NegativeDefiniteComponent));
    }
    let two = rat(2);
    let mut eps = Rational::one().min(&pull / &two);
    loop {
        let mut z = Vec::with_capacity(n);
        let mut it = y.iter();
        for i in 0..n {
            if i == k {
                z.push(&pull - &eps);
            } else {
                z.push(it.next().expect("length n - 1").clone());
            }
        }
        if all_positive(&z) && all_positive(&rat_mat_vec(&m, &z)) {
            return Ok(z);
        }
        eps /= &two;
    }
}

/// Outcome of the concave/convex flowchart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowchartVerdict {
    NotExactOnBoundary,
    ConvexNegativeDefinite,
    Concave {
        witness: Vec<Rational>,
    },
    /// No concave neighbourhood for the given areas, but one exists after
    /// deforming the areas to `target_area = Q · witness`.
    DeformableToConcave {
        target_area: Vec<Rational>,
        witness: Vec<Rational>,
    },
}

/// Runs the flowchart: exactness, negative definiteness, positive GS, and
/// otherwise a deformation target from the trichotomy witness.
pub fn classify_flowchart(ag: &AugmentedGraph) -> FlowchartVerdict {
    let q = ag.graph().intersection_matrix();
    let set = linalg::solve(&q, ag.area());
    if set.is_empty() {
        return FlowchartVerdict::NotExactOnBoundary;
    }
    if linalg::is_negative_definite(&q) {
        return FlowchartVerdict::ConvexNegativeDefinite;
    }
    if let Some(witness) = lift_in_orthant(&set, true) {
        return FlowchartVerdict::Concave { witness };
    }
    // Graphs are connected, so the form is irreducible; together with a
    // positive vector in the image this meets every precondition.
    let witness = trichotomy_witness(&q).expect("connected, exact and not negative definite");
    FlowchartVerdict::DeformableToConcave { target_area: mat_vec(&q, &witness), witness }
}

/// Staircase path from a lift `z` to a positive multiple of a trichotomy
/// witness, moving one coordinate up at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InflationPath {
    pub waypoints: Vec<Vec<Rational>>,
}

impl InflationPath {
    pub fn segments(&self) -> usize {
        self.waypoints.len().saturating_sub(1)
    }
}

/// Plans an inflation path for an exact, non-negative-definite augmented
/// graph. Every waypoint after the first has positive image under `Q`.
pub fn plan_inflation_path(ag: &AugmentedGraph) -> Result<InflationPath> {
    let q = ag.graph().intersection_matrix();
    let set = linalg::solve(&q, ag.area());
    let z = set.particular().ok_or(Error::PreconditionFailed(Precondition::NotExactOnBoundary))?.to_vec();
    if linalg::is_negative_definite(&q) {
        return Err(Error::PreconditionFailed(Precondition::NegativeDefinite));
    }
    let zbar = trichotomy_witness(&q)?;
    // Smallest integer c with c·z̄ > z entrywise.
    let ratio_max = z.iter().zip(&zbar).map(|(zi, wi)| zi / wi).fold(Rational::zero(), |acc, r| acc.max(r));
    let c = ratio_max.floor() + Rational::one();
    let target: Vec<Rational> = zbar.iter().map(|w| w * &c).collect();
    Ok(InflationPath { waypoints: staircase(&q, &z, &target) })
}

/// Round-robin coordinate steps of size `(target - start)/steps`, doubling
/// `steps` until every waypoint has positive image.
fn staircase(q: &IntMatrix, start: &[Rational], target: &[Rational]) -> Vec<Vec<Rational>> {
    let k = start.len();
    let mut steps: i64 = 1;
    loop {
        let inc: Vec<Rational> = start.iter().zip(target).map(|(s, t)| (t - s) / rat(steps)).collect();
        let mut cur = start.to_vec();
        let mut path = vec![cur.clone()];
        let mut ok = true;
        'outer: for _ in 0..steps {
            for i in 0..k {
                cur[i] += &inc[i];
                if !all_positive(&mat_vec(q, &cur)) {
                    ok = false;
                    break 'outer;
                }
                path.push(cur.clone());
            }
        }
        if ok {
            return path;
        }
        steps *= 2;
    }
}

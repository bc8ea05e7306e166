//! Exact linear algebra over square integer matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{rat, Rational};

/// Dense square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics unless the rows form a square matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix { n, data: rows.concat() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..self.n {
                    out.data[i * self.n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    fn to_rational(&self) -> Vec<Vec<Rational>> {
        self.rows().into_iter().map(|r| r.into_iter().map(rat).collect()).collect()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(q: &IntMatrix) -> BigInt {
    let n = q.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = q.rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// All solutions of `Q z = a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSet {
    Empty,
    Unique(Vec<Rational>),
    /// `particular + span(kernel)`; the kernel basis is non-empty.
    Affine {
        particular: Vec<Rational>,
        kernel: Vec<Vec<Rational>>,
    },
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, SolutionSet::Empty)
    }

    /// Some solution, if any exists.
    pub fn particular(&self) -> Option<&[Rational]> {
        match self {
            SolutionSet::Empty => None,
            SolutionSet::Unique(z) => Some(z),
            SolutionSet::Affine { particular, .. } => Some(particular),
        }
    }

    pub fn kernel(&self) -> &[Vec<Rational>] {
        match self {
            SolutionSet::Affine { kernel, .. } => kernel,
            _ => &[],
        }
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..m[i].len() {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `Q z = a` exactly.
///
/// # Panics
/// If `a` does not have one entry per row of `q`.
pub fn solve(q: &IntMatrix, a: &[Rational]) -> SolutionSet {
    let n = q.dim();
    assert_eq!(a.len(), n, "right-hand side has wrong dimension");
    let mut m = q.to_rational();
    for (row, ai) in m.iter_mut().zip(a) {
        row.push(ai.clone());
    }
    let pivots = rref(&mut m, n);
    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[n].is_zero()) {
        return SolutionSet::Empty;
    }
    let mut particular = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][n].clone();
    }
    if rank == n {
        return SolutionSet::Unique(particular);
    }
    let kernel = kernel_from_rref(&m, &pivots, n);
    SolutionSet::Affine { particular, kernel }
}

fn kernel_from_rref(m: &[Vec<Rational>], pivots: &[usize], n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

/// Basis of `ker Q` over the rationals.
pub fn kernel(q: &IntMatrix) -> Vec<Vec<Rational>> {
    let n = q.dim();
    let mut m = q.to_rational();
    let pivots = rref(&mut m, n);
    kernel_from_rref(&m, &pivots, n)
}

pub fn rank(q: &IntMatrix) -> usize {
    let mut m = q.to_rational();
    rref(&mut m, q.dim()).len()
}

/// `Q⁻¹` over the rationals, `None` when singular.
pub fn inverse(q: &IntMatrix) -> Option<Vec<Vec<Rational>>> {
    let n = q.dim();
    let mut m = q.to_rational();
    for (i, row) in m.iter_mut().enumerate() {
        row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
    }
    if rref(&mut m, n).len() < n {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Signature counts of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

/// Inertia by rational congruence diagonalization.
///
/// # Panics
/// If `q` is not symmetric.
pub fn inertia(q: &IntMatrix) -> Inertia {
    assert!(q.is_symmetric(), "inertia needs a symmetric matrix");
    let mut m = q.to_rational();
    let mut n = m.len();
    let mut out = Inertia { n_plus: 0, n_zero: 0, n_minus: 0 };
    while n > 0 {
        // Bring a nonzero diagonal entry to position 0 if there is one.
        if let Some(p) = (0..n).find(|&i| !m[i][i].is_zero()) {
            swap_sym(&mut m, 0, p);
        } else if let Some((i, j)) =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero())
        {
            // Hyperbolic block: e_i + e_j has square 2 q_ij != 0.
            add_sym(&mut m, i, j, &Rational::one());
            swap_sym(&mut m, 0, i);
        } else {
            out.n_zero += n;
            break;
        }
        let pivot = m[0][0].clone();
        if pivot.is_positive() {
            out.n_plus += 1;
        } else {
            out.n_minus += 1;
        }
        let mut next = vec![vec![Rational::zero(); n - 1]; n - 1];
        for i in 1..n {
            for j in 1..n {
                next[i - 1][j - 1] = &m[i][j] - &m[i][0] * &m[0][j] / &pivot;
            }
        }
        m = next;
        n -= 1;
    }
    out
}

fn swap_sym(m: &mut [Vec<Rational>], a: usize, b: usize) {
    if a == b {
        return;
    }
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Row and column operation `x_i += f x_j`.
fn add_sym(m: &mut [Vec<Rational>], i: usize, j: usize, f: &Rational) {
    let n = m.len();
    for k in 0..n {
        let d = f * &m[j][k];
        m[i][k] += d;
    }
    for k in 0..n {
        let d = f * &m[k][j];
        m[k][i] += d;
    }
}

/// The empty form counts as negative definite.
pub fn is_negative_definite(q: &IntMatrix) -> bool {
    inertia(q).n_minus == q.dim()
}

/// Invariant factors `d_1 | d_2 | … | d_k`, non-negative; zeros come last.
pub fn smith_normal_form(q: &IntMatrix) -> Vec<BigInt> {
    let n = q.dim();
    let mut m: Vec<Vec<BigInt>> = q.rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        // Smallest nonzero entry in the trailing block as pivot.
        let Some((pi, pj)) = (t..n)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()))
        else {
            diag.extend(core::iter::repeat_n(BigInt::zero(), n - t));
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..n {
                let (quot, rem) = m[i][t].div_mod_floor(&m[t][t]);
                if !quot.is_zero() {
                    for j in t..n {
                        let d = &quot * &m[t][j];
                        m[i][j] -= d;
                    }
                }
                if !rem.is_zero() {
                    m.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..n {
                let (quot, rem) = m[t][j].div_mod_floor(&m[t][t]);
                if !quot.is_zero() {
                    for row in m[t..].iter_mut() {
                        let d = &quot * &row[t];
                        row[j] -= d;
                    }
                }
                if !rem.is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block.
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..n {
                        let d = m[i][j].clone();
                        m[t][j] += d;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn e8() -> IntMatrix {
        crate::families::build_star(2, (2, 1), (3, 2), (5, 4)).unwrap().intersection_matrix().matrix
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]])), BigInt::from(1));
        assert_eq!(determinant(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&e8()), BigInt::from(1));
        assert_eq!(determinant(&IntMatrix::zeros(0)), BigInt::from(1));
    }

    #[test]
    fn solves() {
        let q = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(solve(&q, &[rat(3), rat(2)]), SolutionSet::Unique(vec![rat(1), rat(1)]));
        assert_eq!(solve(&IntMatrix::from_rows(&[vec![0]]), &[rat(1)]), SolutionSet::Empty);
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(solve(&swap, &[ratio(1, 3), rat(5)]), SolutionSet::Unique(vec![rat(5), ratio(1, 3)]));
        let q = IntMatrix::from_rows(&[vec![-1, 1], vec![1, -1]]);
        match solve(&q, &[rat(2), rat(-2)]) {
            SolutionSet::Affine { particular, kernel } => {
                assert_eq!(particular, vec![rat(-2), rat(0)]);
                assert_eq!(kernel, vec![vec![rat(1), rat(1)]]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inertias() {
        let i = |p, z, m| Inertia { n_plus: p, n_zero: z, n_minus: m };
        assert_eq!(inertia(&e8()), i(0, 0, 8));
        assert_eq!(inertia(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])), i(1, 0, 1));
        assert_eq!(inertia(&IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]])), i(2, 0, 0));
        assert_eq!(inertia(&IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]])), i(1, 1, 0));
        assert!(is_negative_definite(&IntMatrix::zeros(0)));
        assert!(is_negative_definite(&e8()));
    }

    #[test]
    fn smith_forms() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]])), b(&[1, 1]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])), b(&[1, 1]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![-2, 0], vec![0, -2]])), b(&[2, 2]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])), b(&[1, 6]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![0]])), b(&[0]));
    }

    #[test]
    fn inverse_of_e8_is_integral() {
        let inv = inverse(&e8()).unwrap();
        assert!(inv.iter().flatten().all(|x| x.is_integer()));
        assert!(inverse(&IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]])).is_none());
    }
}

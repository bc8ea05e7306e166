//! Exact feasibility of systems of strict and non-strict linear inequalities
//! by Fourier–Motzkin elimination, with a witness on success.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// `coeffs · t + constant > 0` (strict) or `≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Constraint {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub strict: bool,
}

impl Constraint {
    fn eval(&self, t: &[Rational]) -> Rational {
        let mut acc = self.constant.clone();
        for (c, x) in self.coeffs.iter().zip(t) {
            acc += c * x;
        }
        acc
    }

    fn holds(&self, t: &[Rational]) -> bool {
        let v = self.eval(t);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }

    /// Scale so the last nonzero coefficient (or the constant) has absolute
    /// value one, for deduplication.
    fn normalized(mut self) -> Self {
        let lead = self
            .coeffs
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .or(Some(&self.constant).filter(|c| !c.is_zero()))
            .map(|c| c.abs());
        if let Some(s) = lead {
            for c in self.coeffs.iter_mut() {
                *c /= &s;
            }
            self.constant /= &s;
        }
        self
    }
}

/// A bound `t_last ≷ expr(t_rest)` recorded for back-substitution, stored as
/// the constraint it came from.
struct Level {
    lower: Vec<Constraint>,
    upper: Vec<Constraint>,
}

/// A point satisfying every constraint, or `None` when the system is
/// infeasible. `dim` is the number of variables.
pub(crate) fn find_point(dim: usize, constraints: &[Constraint]) -> Option<Vec<Rational>> {
    let mut current: Vec<Constraint> = constraints.to_vec();
    let mut levels: Vec<Level> = Vec::with_capacity(dim);
    for d in (0..dim).rev() {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut rest = Vec::new();
        for c in current {
            let k = &c.coeffs[d];
            if k.is_positive() {
                lower.push(c);
            } else if k.is_negative() {
                upper.push(c);
            } else {
                rest.push(c);
            }
        }
        for l in &lower {
            for u in &upper {
                // l: a t_d + L > 0 with a > 0; u: -b t_d + U > 0 with b > 0.
                let a = &l.coeffs[d];
                let b = -&u.coeffs[d];
                let mut coeffs: Vec<Rational> = (0..d).map(|j| &l.coeffs[j] * &b + &u.coeffs[j] * a).collect();
                coeffs.extend(core::iter::repeat_n(Rational::zero(), dim - d));
                let combined =
                    Constraint { coeffs, constant: &l.constant * &b + &u.constant * a, strict: l.strict || u.strict }
                        .normalized();
                if !rest.contains(&combined) {
                    rest.push(combined);
                }
            }
        }
        levels.push(Level { lower, upper });
        current = rest;
    }
    if !current.iter().all(|c| c.holds(&[])) {
        return None;
    }

    let mut point = vec![Rational::zero(); dim];
    for (d, level) in (0..dim).zip(levels.iter().rev()) {
        // Bound on t_d given t_0..t_{d-1}: value of -(rest)/coeff.
        let bound = |c: &Constraint| {
            let mut rest = c.constant.clone();
            for j in 0..d {
                rest += &c.coeffs[j] * &point[j];
            }
            (-rest / &c.coeffs[d], c.strict)
        };
        let lo = level.lower.iter().map(bound).max_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        let hi = level.upper.iter().map(bound).min_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        point[d] = match (lo, hi) {
            (None, None) => Rational::zero(),
            (Some((l, s)), None) => {
                if s {
                    l + Rational::one()
                } else {
                    l
                }
            }
            (None, Some((u, s))) => {
                if s {
                    u - Rational::one()
                } else {
                    u
                }
            }
            (Some((l, _)), Some((u, _))) => (l + u) / Rational::from_integer(2.into()),
        };
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&point)));
    Some(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn c(coeffs: &[i64], constant: i64, strict: bool) -> Constraint {
        Constraint { coeffs: coeffs.iter().map(|&x| rat(x)).collect(), constant: rat(constant), strict }
    }

    #[test]
    fn interval() {
        // 0 < t < 1
        let p = find_point(1, &[c(&[1], 0, true), c(&[-1], 1, true)]).unwrap();
        assert_eq!(p, vec![ratio(1, 2)]);
        // 0 ≤ t ≤ 0 is feasible, 0 < t ≤ 0 is not.
        assert_eq!(find_point(1, &[c(&[1], 0, false), c(&[-1], 0, false)]), Some(vec![rat(0)]));
        assert_eq!(find_point(1, &[c(&[1], 0, true), c(&[-1], 0, false)]), None);
    }

    #[test]
    fn triangle() {
        // x > 0, y > 0, x + y < 1
        let cs = [c(&[1, 0], 0, true), c(&[0, 1], 0, true), c(&[-1, -1], 1, true)];
        let p = find_point(2, &cs).unwrap();
        assert!(cs.iter().all(|k| k.holds(&p)));
        // x > 0, y > 0, x + y < 0
        assert_eq!(find_point(2, &[c(&[1, 0], 0, true), c(&[0, 1], 0, true), c(&[-1, -1], 0, true)]), None);
    }

    #[test]
    fn constants_only() {
        assert!(find_point(0, &[c(&[], 1, true)]).is_some());
        assert!(find_point(0, &[c(&[], 0, true)]).is_none());
        assert!(find_point(0, &[c(&[], 0, false)]).is_some());
    }
}

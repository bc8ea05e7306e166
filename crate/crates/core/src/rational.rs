use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Arbitrary precision rational number.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q` with optional sign on `p`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Renders as `p` or `p/q`, never as a decimal.
pub fn format_rational(r: &Rational) -> alloc::string::String {
    r.to_string()
}

pub fn format_vector(v: &[Rational]) -> alloc::string::String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

pub(crate) fn all_positive(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_positive())
}

pub(crate) fn mat_vec(q: &crate::linalg::IntMatrix, z: &[Rational]) -> Vec<Rational> {
    (0..q.dim())
        .map(|i| {
            let mut acc = Rational::zero();
            for (j, zj) in z.iter().enumerate() {
                let e = q.get(i, j);
                if e != 0 {
                    acc += zj * rat(e);
                }
            }
            acc
        })
        .collect()
}

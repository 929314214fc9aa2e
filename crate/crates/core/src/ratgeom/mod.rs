//! Exact scalars, affine forms and maps, linear solving and strict LP
//! feasibility.

mod form;
mod linalg;
mod lp;
mod map;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use form::AffineForm;
pub(crate) use linalg::rref;
pub use linalg::{rank, solve_linear, AffineSubspace};
pub use lp::{maximize, strict_feasible, LpOutcome};
pub use map::AffineMap;

use crate::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// A point or direction in a coordinate space.
pub type RatVector = Vec<Rational>;

/// Sign of a form at a point; `Neg < Zero < Pos` is the canonical order used
/// for sorting sign vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '-' | '−' => Some(Sign::Neg),
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Pos),
            _ => None,
        }
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with an optional leading minus (ASCII `-` or
/// U+2212). The denominator must be a nonzero decimal integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Input(alloc::format!("malformed rational {s:?}"));
    let t = s.trim();
    let (neg, body) = if let Some(rest) = t.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = t.strip_prefix('−') {
        (true, rest)
    } else {
        (false, t)
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    let q = Rational::new(n, d);
    Ok(if neg { -q } else { q })
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let (n, d) = dot_fraction(a, b, None);
    Rational::new(n, d)
}

/// `a·b (+ c)` as an unreduced fraction with positive denominator. Reducing
/// once at the end (or never, when only the sign is needed) is much cheaper
/// than the gcd per operation that `Rational` arithmetic performs.
pub(crate) fn dot_fraction(a: &[Rational], b: &[Rational], c: Option<&Rational>) -> (BigInt, BigInt) {
    debug_assert_eq!(a.len(), b.len());
    let (mut num, mut den) = match c {
        Some(c) => (c.numer().clone(), c.denom().clone()),
        None => (BigInt::zero(), BigInt::from(1)),
    };
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let tn = x.numer() * y.numer();
        let td = x.denom() * y.denom();
        if td == den {
            num += tn;
        } else if td.is_one() {
            num += tn * &den;
        } else {
            num = num * &td + tn * &den;
            den *= td;
        }
    }
    (num, den)
}

pub fn zeros(n: usize) -> RatVector {
    alloc::vec![Rational::zero(); n]
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `p + t·d`
pub(crate) fn along(p: &[Rational], t: &Rational, d: &[Rational]) -> RatVector {
    p.iter().zip(d).map(|(x, y)| x + t * y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("−1/2").unwrap(), ratio(-1, 2));
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
        for bad in ["", "1/0", "a", "1/-2", "1.5", "--1", "+3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !b.is_zero() {
                prop_assert_eq!(&a / &b * &b, a.clone());
            }
            let back = parse_rational(&format_rational(&a)).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}

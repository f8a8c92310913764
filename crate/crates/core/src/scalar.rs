//! Ordered-field scalars.
//!
//! Everything in this crate is written against [`Scalar`]. The exact
//! implementations (`BigRational`, `Ratio<i64>`, `Ratio<i128>`) give
//! certificate-grade answers; `f64` is accepted for quick approximate work
//! but comparisons at the frontier are then subject to rounding.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// Whether arithmetic is exact. Certificates are only sound when true.
    const EXACT: bool;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Parses `"p/q"` or `"p"`. Returns `None` on anything else, including a
    /// zero denominator.
    fn parse_rational(s: &str) -> Option<Self>;

    fn to_f64_approx(&self) -> f64;

    /// Largest integer not above `self`.
    fn floor(&self) -> Self;

    /// Canonical text form. Exact types render reduced `p/q` (or `p`).
    fn render(&self) -> String {
        self.to_string()
    }

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half(&self) -> Self {
        self.clone() / Self::two()
    }
}

fn split_ratio(s: &str) -> Option<(&str, Option<&str>)> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => Some((p.trim(), Some(q.trim()))),
        None => Some((s, None)),
    }
}

macro_rules! impl_ratio_scalar {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            const EXACT: bool = true;

            fn from_ratio(numer: i64, denom: i64) -> Self {
                Ratio::new(numer as $int, denom as $int)
            }

            fn parse_rational(s: &str) -> Option<Self> {
                let (p, q) = split_ratio(s)?;
                let p: $int = p.parse().ok()?;
                let q: $int = match q {
                    Some(q) => q.parse().ok()?,
                    None => 1,
                };
                if q == 0 {
                    return None;
                }
                Some(Ratio::new(p, q))
            }

            fn to_f64_approx(&self) -> f64 {
                self.to_f64().unwrap_or(f64::NAN)
            }

            fn floor(&self) -> Self {
                Ratio::floor(self)
            }
        }
    };
}

impl_ratio_scalar!(i64);
impl_ratio_scalar!(i128);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn parse_rational(s: &str) -> Option<Self> {
        let (p, q) = split_ratio(s)?;
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = match q {
            Some(q) => q.parse().ok()?,
            None => BigInt::from(1),
        };
        if q == BigInt::from(0) {
            return None;
        }
        Some(Ratio::new(p, q))
    }

    fn to_f64_approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn floor(&self) -> Self {
        Ratio::floor(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn parse_rational(s: &str) -> Option<Self> {
        let (p, q) = split_ratio(s)?;
        let p: f64 = p.parse().ok()?;
        let q: f64 = match q {
            Some(q) => q.parse().ok()?,
            None => 1.0,
        };
        if q == 0.0 || !p.is_finite() || !q.is_finite() {
            return None;
        }
        Some(p / q)
    }

    fn to_f64_approx(&self) -> f64 {
        *self
    }

    fn floor(&self) -> Self {
        f64::floor(*self)
    }
}

/// Total order for scalars; incomparable values (NaN) sort as equal.
pub fn cmp<T: Scalar>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

pub fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

pub fn min_of<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

pub fn midpoint<T: Scalar>(a: &T, b: &T) -> T {
    (a.clone() + b.clone()).half()
}

/// Sorts and removes duplicates.
pub fn sort_dedup<T: Scalar>(v: &mut Vec<T>) {
    v.sort_by(cmp);
    v.dedup_by(|a, b| a == b);
}

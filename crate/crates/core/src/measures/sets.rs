//! Sets on the line and on finite spaces, and their ε-neighborhoods.
//!
//! Neighborhoods are open: `A^ε = { x : d(x, a) < ε for some a ∈ A }`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::measures::space::FiniteMetricSpace;
use crate::scalar::{cmp, sort_dedup, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum Bound<T> {
    Unbounded,
    Open(T),
    Closed(T),
}

impl<T: Scalar> Bound<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Bound::Unbounded => None,
            Bound::Open(v) | Bound::Closed(v) => Some(v),
        }
    }

    fn is_closed(&self) -> bool {
        matches!(self, Bound::Closed(_))
    }
}

/// One interval; `lo` is a lower bound, `hi` an upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval<T> {
    pub lo: Bound<T>,
    pub hi: Bound<T>,
}

impl<T: Scalar> Interval<T> {
    pub fn open(a: T, b: T) -> Self {
        Self {
            lo: Bound::Open(a),
            hi: Bound::Open(b),
        }
    }

    pub fn closed(a: T, b: T) -> Self {
        Self {
            lo: Bound::Closed(a),
            hi: Bound::Closed(b),
        }
    }

    pub fn point(a: T) -> Self {
        Self::closed(a.clone(), a)
    }

    pub fn everything() -> Self {
        Self {
            lo: Bound::Unbounded,
            hi: Bound::Unbounded,
        }
    }

    pub fn is_empty(&self) -> bool {
        match (self.lo.value(), self.hi.value()) {
            (Some(a), Some(b)) => match cmp(a, b) {
                Ordering::Greater => true,
                Ordering::Equal => !(self.lo.is_closed() && self.hi.is_closed()),
                Ordering::Less => false,
            },
            _ => false,
        }
    }

    pub fn contains(&self, x: &T) -> bool {
        let above = match &self.lo {
            Bound::Unbounded => true,
            Bound::Open(a) => x > a,
            Bound::Closed(a) => x >= a,
        };
        let below = match &self.hi {
            Bound::Unbounded => true,
            Bound::Open(b) => x < b,
            Bound::Closed(b) => x <= b,
        };
        above && below
    }
}

fn lower_cmp<T: Scalar>(a: &Bound<T>, b: &Bound<T>) -> Ordering {
    match (a, b) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Less,
        (_, Bound::Unbounded) => Ordering::Greater,
        _ => {
            let (x, y) = (a.value().unwrap(), b.value().unwrap());
            cmp(x, y).then_with(|| match (a.is_closed(), b.is_closed()) {
                (true, false) => Ordering::Less,
                (false, true) => Ordering::Greater,
                _ => Ordering::Equal,
            })
        }
    }
}

fn upper_cmp<T: Scalar>(a: &Bound<T>, b: &Bound<T>) -> Ordering {
    match (a, b) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Greater,
        (_, Bound::Unbounded) => Ordering::Less,
        _ => {
            let (x, y) = (a.value().unwrap(), b.value().unwrap());
            cmp(x, y).then_with(|| match (a.is_closed(), b.is_closed()) {
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Less,
                _ => Ordering::Equal,
            })
        }
    }
}

/// Whether an interval ending at `hi` and one starting at `lo` (sorted after
/// it) overlap or touch at a point that one of them contains.
fn joins<T: Scalar>(hi: &Bound<T>, lo: &Bound<T>) -> bool {
    match (hi.value(), lo.value()) {
        (None, _) | (_, None) => true,
        (Some(h), Some(l)) => match cmp(l, h) {
            Ordering::Less => true,
            Ordering::Equal => hi.is_closed() || lo.is_closed(),
            Ordering::Greater => false,
        },
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Bound::Closed(a), Bound::Closed(b)) = (&self.lo, &self.hi) {
            if a == b {
                return write!(f, "{{{}}}", a.render());
            }
        }
        match &self.lo {
            Bound::Unbounded => write!(f, "(-inf, ")?,
            Bound::Open(a) => write!(f, "({}, ", a.render())?,
            Bound::Closed(a) => write!(f, "[{}, ", a.render())?,
        }
        match &self.hi {
            Bound::Unbounded => write!(f, "inf)"),
            Bound::Open(b) => write!(f, "{})", b.render()),
            Bound::Closed(b) => write!(f, "{}]", b.render()),
        }
    }
}

/// A finite union of intervals, kept sorted, disjoint and non-adjacent.
///
/// Two open intervals sharing only an endpoint, like `(0, 1) ∪ (1, 2)`, stay
/// split: the shared point is not in the set.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalUnion<T> {
    intervals: Vec<Interval<T>>,
}

impl<T: Scalar> fmt::Display for IntervalUnion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{{}}");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl<T: Scalar> IntervalUnion<T> {
    pub fn new(intervals: Vec<Interval<T>>) -> Self {
        let mut parts: Vec<Interval<T>> = intervals.into_iter().filter(|i| !i.is_empty()).collect();
        parts.sort_by(|a, b| lower_cmp(&a.lo, &b.lo));
        let mut merged: Vec<Interval<T>> = Vec::with_capacity(parts.len());
        for iv in parts {
            if let Some(last) = merged.last_mut() {
                if joins(&last.hi, &iv.lo) {
                    if upper_cmp(&iv.hi, &last.hi) == Ordering::Greater {
                        last.hi = iv.hi;
                    }
                    continue;
                }
            }
            merged.push(iv);
        }
        Self { intervals: merged }
    }

    pub fn empty() -> Self {
        Self { intervals: Vec::new() }
    }

    pub fn everything() -> Self {
        Self {
            intervals: vec![Interval::everything()],
        }
    }

    pub fn from_points(points: &[T]) -> Self {
        Self::new(points.iter().cloned().map(Interval::point).collect())
    }

    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn closure(&self) -> Self {
        let close = |b: &Bound<T>| match b {
            Bound::Open(v) => Bound::Closed(v.clone()),
            other => other.clone(),
        };
        Self::new(
            self.intervals
                .iter()
                .map(|i| Interval {
                    lo: close(&i.lo),
                    hi: close(&i.hi),
                })
                .collect(),
        )
    }

    pub fn complement(&self) -> Self {
        let flip = |b: &Bound<T>| match b {
            Bound::Open(v) => Bound::Closed(v.clone()),
            Bound::Closed(v) => Bound::Open(v.clone()),
            Bound::Unbounded => Bound::Unbounded,
        };
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = Bound::Unbounded;
        let mut at_start = true;
        for iv in &self.intervals {
            if !matches!(iv.lo, Bound::Unbounded) {
                let lo = if at_start { Bound::Unbounded } else { cursor.clone() };
                out.push(Interval { lo, hi: flip(&iv.lo) });
            }
            at_start = false;
            match &iv.hi {
                Bound::Unbounded => return Self::new(out),
                hi => cursor = flip(hi),
            }
        }
        let lo = if at_start { Bound::Unbounded } else { cursor };
        out.push(Interval {
            lo,
            hi: Bound::Unbounded,
        });
        Self::new(out)
    }

    /// Finite endpoints of the normalized union; these form its boundary.
    pub fn boundary(&self) -> Vec<T> {
        let mut pts: Vec<T> = self
            .intervals
            .iter()
            .flat_map(|i| [i.lo.value().cloned(), i.hi.value().cloned()])
            .flatten()
            .collect();
        sort_dedup(&mut pts);
        pts
    }

    pub fn eps_neighborhood(&self, eps: &T) -> Result<Self> {
        check_eps(eps)?;
        let widen = |b: &Bound<T>, lower: bool| match b.value() {
            None => Bound::Unbounded,
            Some(v) if lower => Bound::Open(v.clone() - eps.clone()),
            Some(v) => Bound::Open(v.clone() + eps.clone()),
        };
        Ok(Self::new(
            self.intervals
                .iter()
                .map(|i| Interval {
                    lo: widen(&i.lo, true),
                    hi: widen(&i.hi, false),
                })
                .collect(),
        ))
    }
}

/// A finite set of points: coordinates on the line, or indices into a
/// finite metric space.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSet<T> {
    Line(Vec<T>),
    Finite(Vec<usize>),
}

impl<T: Scalar> PointSet<T> {
    pub fn line(mut points: Vec<T>) -> Self {
        sort_dedup(&mut points);
        PointSet::Line(points)
    }

    pub fn finite(mut points: Vec<usize>) -> Self {
        points.sort_unstable();
        points.dedup();
        PointSet::Finite(points)
    }

    pub fn len(&self) -> usize {
        match self {
            PointSet::Line(p) => p.len(),
            PointSet::Finite(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The open ε-neighborhood of a set of reals.
    pub fn line_neighborhood(points: &[T], eps: &T) -> Result<IntervalUnion<T>> {
        check_eps(eps)?;
        Ok(IntervalUnion::new(
            points
                .iter()
                .map(|a| Interval::open(a.clone() - eps.clone(), a.clone() + eps.clone()))
                .collect(),
        ))
    }

    /// The ε-neighborhood of a set of points of `space`.
    pub fn finite_neighborhood(space: &FiniteMetricSpace<T>, points: &[usize], eps: &T) -> Result<Vec<usize>> {
        check_eps(eps)?;
        for &p in points {
            if p >= space.len() {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    n: space.len(),
                });
            }
        }
        Ok((0..space.len())
            .filter(|&x| points.iter().any(|&a| space.distance(x, a) < eps))
            .collect())
    }
}

pub(crate) fn check_eps<T: Scalar>(eps: &T) -> Result<()> {
    if *eps <= T::zero() {
        Err(Error::NonPositiveEpsilon(eps.render()))
    } else {
        Ok(())
    }
}

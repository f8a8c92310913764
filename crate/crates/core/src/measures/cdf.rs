use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::measures::sets::{Bound, IntervalUnion};
use crate::scalar::{cmp, Scalar};

/// A right-continuous distribution function with finitely many breakpoints.
///
/// Before the first breakpoint the function is 0; at breakpoint `i` it takes
/// `values[i]` and then grows linearly with `slopes[i]` until breakpoint
/// `i + 1`, where it may jump. The last value is 1 and the function stays 1
/// afterwards.
#[derive(Debug, Clone)]
pub struct PiecewiseCdf<T> {
    breakpoints: Vec<T>,
    values: Vec<T>,
    slopes: Vec<T>,
    left: Vec<T>,
}

impl<T: Scalar> PiecewiseCdf<T> {
    pub fn new(breakpoints: Vec<T>, values: Vec<T>, slopes: Vec<T>) -> Result<Self> {
        let n = breakpoints.len();
        if n == 0 {
            return Err(Error::invalid("breakpoints", "at least one breakpoint is required"));
        }
        if values.len() != n {
            return Err(Error::invalid(
                "values",
                format!("expected {n} values, found {}", values.len()),
            ));
        }
        if slopes.len() + 1 != n {
            return Err(Error::invalid(
                "slopes",
                format!("expected {} slopes, found {}", n - 1, slopes.len()),
            ));
        }
        for i in 1..n {
            if breakpoints[i] <= breakpoints[i - 1] {
                return Err(Error::invalid(
                    format!("breakpoints[{i}]"),
                    format!("breakpoint {} is not above {}", breakpoints[i], breakpoints[i - 1]),
                ));
            }
        }
        for (i, v) in values.iter().enumerate() {
            if *v < T::zero() || *v > T::one() {
                return Err(Error::invalid(format!("values[{i}]"), format!("{v} is outside [0, 1]")));
            }
        }
        for (i, s) in slopes.iter().enumerate() {
            if *s < T::zero() {
                return Err(Error::invalid(
                    format!("slopes[{i}]"),
                    format!("decreasing segment starting at breakpoint {}", breakpoints[i]),
                ));
            }
        }
        let mut left = Vec::with_capacity(n);
        left.push(T::zero());
        for i in 0..n - 1 {
            let gap = breakpoints[i + 1].clone() - breakpoints[i].clone();
            left.push(values[i].clone() + slopes[i].clone() * gap);
        }
        for i in 0..n {
            if left[i] > values[i] {
                return Err(Error::invalid(
                    format!("values[{i}]"),
                    format!(
                        "not monotone at breakpoint {}: left limit {} exceeds value {}",
                        breakpoints[i], left[i], values[i]
                    ),
                ));
            }
        }
        if !values[n - 1].is_one() {
            return Err(Error::invalid(format!("values[{}]", n - 1), "the last value must be 1"));
        }
        Ok(Self {
            breakpoints,
            values,
            slopes,
            left,
        })
    }

    /// Step function with the given jumps; `atoms` must be strictly increasing.
    pub(crate) fn step(atoms: &[T], weights: &[T]) -> Self {
        let mut values = Vec::with_capacity(atoms.len());
        let mut acc = T::zero();
        for w in weights {
            acc = acc + w.clone();
            values.push(acc.clone());
        }
        if let Some(last) = values.last_mut() {
            *last = T::one();
        }
        let slopes = vec![T::zero(); atoms.len().saturating_sub(1)];
        Self::new(atoms.to_vec(), values, slopes).expect("valid step function")
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn slopes(&self) -> &[T] {
        &self.slopes
    }

    pub fn left_limits(&self) -> &[T] {
        &self.left
    }

    /// Index of the last breakpoint `<= x` (or `< x` when `strict`).
    fn segment(&self, x: &T, strict: bool) -> Option<usize> {
        let count = self.breakpoints.partition_point(|b| match cmp(b, x) {
            Ordering::Less => true,
            Ordering::Equal => !strict,
            Ordering::Greater => false,
        });
        count.checked_sub(1)
    }

    fn on_segment(&self, i: usize, x: &T) -> T {
        if i + 1 == self.breakpoints.len() {
            return T::one();
        }
        self.values[i].clone() + self.slopes[i].clone() * (x.clone() - self.breakpoints[i].clone())
    }

    /// `F(x)`.
    pub fn eval(&self, x: &T) -> T {
        match self.segment(x, false) {
            None => T::zero(),
            Some(i) => self.on_segment(i, x),
        }
    }

    /// `F(x−)`, the left limit.
    pub fn eval_left(&self, x: &T) -> T {
        match self.segment(x, true) {
            None => T::zero(),
            Some(i) => self.on_segment(i, x),
        }
    }

    /// Jump locations and sizes.
    pub fn jumps(&self) -> Vec<(T, T)> {
        self.breakpoints
            .iter()
            .zip(self.values.iter().zip(&self.left))
            .filter(|(_, (v, l))| v > l)
            .map(|(b, (v, l))| (b.clone(), v.clone() - l.clone()))
            .collect()
    }

    /// True when all mass sits in jumps.
    pub fn is_atomic(&self) -> bool {
        self.slopes.iter().all(|s| s.is_zero())
    }

    pub fn support_bounds(&self) -> (T, T) {
        (
            self.breakpoints[0].clone(),
            self.breakpoints[self.breakpoints.len() - 1].clone(),
        )
    }

    fn upper(&self, b: &Bound<T>) -> T {
        match b {
            Bound::Unbounded => T::one(),
            Bound::Closed(v) => self.eval(v),
            Bound::Open(v) => self.eval_left(v),
        }
    }

    fn lower(&self, b: &Bound<T>) -> T {
        match b {
            Bound::Unbounded => T::zero(),
            Bound::Closed(v) => self.eval_left(v),
            Bound::Open(v) => self.eval(v),
        }
    }

    /// Mass of a union of intervals, honoring open and closed endpoints.
    pub fn mass(&self, set: &IntervalUnion<T>) -> T {
        set.intervals()
            .iter()
            .fold(T::zero(), |acc, iv| acc + self.upper(&iv.hi) - self.lower(&iv.lo))
    }

    pub fn point_mass(&self, x: &T) -> T {
        self.eval(x) - self.eval_left(x)
    }

    /// Canonical representation: drops breakpoints that carry no jump and no
    /// change of slope.
    pub fn normalized(&self) -> Self {
        let mut b = self.breakpoints.clone();
        let mut v = self.values.clone();
        let mut s = self.slopes.clone();
        let mut l = self.left.clone();
        loop {
            let n = b.len();
            let mut removed = false;
            if n >= 2 {
                if n >= 2 && v[n - 2].is_one() {
                    b.pop();
                    v.pop();
                    s.pop();
                    l.pop();
                    removed = true;
                } else if v[0].is_zero() && s[0].is_zero() {
                    b.remove(0);
                    v.remove(0);
                    s.remove(0);
                    l.remove(0);
                    l[0] = T::zero();
                    removed = true;
                } else if let Some(i) = (1..n - 1).find(|&i| v[i] == l[i] && s[i] == s[i - 1]) {
                    b.remove(i);
                    v.remove(i);
                    s.remove(i);
                    l.remove(i);
                    removed = true;
                }
            }
            if !removed {
                break;
            }
        }
        Self {
            breakpoints: b,
            values: v,
            slopes: s,
            left: l,
        }
    }

    pub fn translate(&self, c: &T) -> Self {
        let mut out = self.clone();
        for b in &mut out.breakpoints {
            *b = b.clone() + c.clone();
        }
        out
    }
}

impl<T: Scalar> PartialEq for PiecewiseCdf<T> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        a.breakpoints == b.breakpoints && a.values == b.values && a.slopes == b.slopes
    }
}

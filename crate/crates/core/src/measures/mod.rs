//! Measures, distribution functions, sets and ε-neighborhoods.

mod cdf;
mod discrete;
mod law;
mod sets;
mod space;

pub use cdf::PiecewiseCdf;
pub use discrete::{Atoms, DiscreteMeasure};
pub use law::Law;
pub use sets::{Bound, Interval, IntervalUnion, PointSet};
pub use space::{FiniteMetricSpace, Space};

pub(crate) use sets::check_eps;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A set that can be measured: a finite point set or a union of intervals.
#[derive(Debug, Clone, PartialEq)]
pub enum Set<T> {
    Points(PointSet<T>),
    Intervals(IntervalUnion<T>),
}

pub fn make_discrete_measure<T: Scalar>(
    space: Space<T>,
    atoms: Atoms<T>,
    weights: Vec<T>,
) -> Result<DiscreteMeasure<T>> {
    DiscreteMeasure::new(space, atoms, weights)
}

pub fn cdf_of<T: Scalar>(measure: &DiscreteMeasure<T>) -> Result<PiecewiseCdf<T>> {
    measure.cdf()
}

pub fn eval_cdf<T: Scalar>(f: &PiecewiseCdf<T>, x: &T) -> T {
    f.eval(x)
}

pub fn eval_cdf_left<T: Scalar>(f: &PiecewiseCdf<T>, x: &T) -> T {
    f.eval_left(x)
}

/// Open ε-neighborhood of `set` in `space`. On the line the result is a union
/// of open intervals; on a finite space it is a point set.
pub fn eps_neighborhood<T: Scalar>(space: &Space<T>, set: &Set<T>, eps: &T) -> Result<Set<T>> {
    check_eps(eps)?;
    match (space, set) {
        (Space::Line, Set::Points(PointSet::Line(p))) => Ok(Set::Intervals(PointSet::line_neighborhood(p, eps)?)),
        (Space::Line, Set::Intervals(u)) => Ok(Set::Intervals(u.eps_neighborhood(eps)?)),
        (Space::Finite(fs), Set::Points(PointSet::Finite(p))) => Ok(Set::Points(PointSet::Finite(
            PointSet::finite_neighborhood(fs, p, eps)?,
        ))),
        _ => Err(Error::SpaceMismatch),
    }
}

pub fn measure_of<T: Scalar>(law: &Law<T>, set: &Set<T>) -> Result<T> {
    match set {
        Set::Points(p) => law.mass_of_points(p),
        Set::Intervals(u) => law.mass_of_intervals(u),
    }
}

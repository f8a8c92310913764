use crate::error::{Error, Result};
use crate::measures::cdf::PiecewiseCdf;
use crate::measures::discrete::DiscreteMeasure;
use crate::measures::sets::{IntervalUnion, PointSet};
use crate::scalar::Scalar;

/// Either representation of a probability law. Line laws can always be
/// viewed through their distribution function.
#[derive(Debug, Clone)]
pub enum Law<T> {
    Discrete(DiscreteMeasure<T>),
    Cdf(PiecewiseCdf<T>),
}

impl<T: Scalar> Law<T> {
    pub fn is_line(&self) -> bool {
        match self {
            Law::Discrete(m) => m.space().is_line(),
            Law::Cdf(_) => true,
        }
    }

    pub fn cdf(&self) -> Result<PiecewiseCdf<T>> {
        match self {
            Law::Discrete(m) => m.cdf(),
            Law::Cdf(f) => Ok(f.clone()),
        }
    }

    /// The finitely supported view, if the law has no continuous part.
    pub fn discrete(&self) -> Option<DiscreteMeasure<T>> {
        match self {
            Law::Discrete(m) => Some(m.clone()),
            Law::Cdf(f) => DiscreteMeasure::from_cdf(f).ok(),
        }
    }

    pub fn mass_of_intervals(&self, set: &IntervalUnion<T>) -> Result<T> {
        match self {
            Law::Discrete(m) => m.mass_of_intervals(set),
            Law::Cdf(f) => Ok(f.mass(set)),
        }
    }

    pub fn mass_of_points(&self, set: &PointSet<T>) -> Result<T> {
        match (self, set) {
            (Law::Discrete(m), _) => m.mass_of_points(set),
            (Law::Cdf(f), PointSet::Line(p)) => Ok(p.iter().fold(T::zero(), |a, x| a + f.point_mass(x))),
            (Law::Cdf(_), PointSet::Finite(_)) => Err(Error::SpaceMismatch),
        }
    }

    /// Breakpoints of the distribution function (atoms for discrete laws).
    pub fn key_points(&self) -> Result<Vec<T>> {
        match self {
            Law::Discrete(m) => m.line_atoms().map(|a| a.to_vec()).ok_or(Error::NotOnLine),
            Law::Cdf(f) => Ok(f.breakpoints().to_vec()),
        }
    }
}

impl<T: Scalar> From<DiscreteMeasure<T>> for Law<T> {
    fn from(m: DiscreteMeasure<T>) -> Self {
        Law::Discrete(m)
    }
}

impl<T: Scalar> From<PiecewiseCdf<T>> for Law<T> {
    fn from(f: PiecewiseCdf<T>) -> Self {
        Law::Cdf(f)
    }
}

/// Equality of laws, whatever the representation.
impl<T: Scalar> PartialEq for Law<T> {
    fn eq(&self, other: &Self) -> bool {
        match (self.discrete(), other.discrete()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => matches!((self.cdf(), other.cdf()), (Ok(f), Ok(g)) if f == g),
            _ => false,
        }
    }
}

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::measures::cdf::PiecewiseCdf;
use crate::measures::sets::{IntervalUnion, PointSet};
use crate::measures::space::{FiniteMetricSpace, Space};
use crate::scalar::{cmp, Scalar};

/// Atom locations of a finitely supported measure.
#[derive(Debug, Clone, PartialEq)]
pub enum Atoms<T> {
    Line(Vec<T>),
    Points(Vec<usize>),
}

/// A probability measure with finitely many atoms and exact positive weights
/// summing to one. Atoms are kept sorted.
#[derive(Debug, Clone)]
pub struct DiscreteMeasure<T> {
    space: Space<T>,
    atoms: Atoms<T>,
    weights: Vec<T>,
}

impl<T: Scalar> DiscreteMeasure<T> {
    pub fn new(space: Space<T>, atoms: Atoms<T>, weights: Vec<T>) -> Result<Self> {
        let len = match &atoms {
            Atoms::Line(a) => a.len(),
            Atoms::Points(p) => p.len(),
        };
        if len == 0 {
            return Err(Error::invalid("atoms", "a measure needs at least one atom"));
        }
        if weights.len() != len {
            return Err(Error::invalid(
                "weights",
                format!("{} weights for {len} atoms", weights.len()),
            ));
        }
        for (index, w) in weights.iter().enumerate() {
            if *w <= T::zero() {
                return Err(Error::NonPositiveWeight {
                    index,
                    value: w.render(),
                });
            }
        }
        let total = weights.iter().fold(T::zero(), |a, w| a + w.clone());
        if !total.is_one() {
            return Err(Error::WeightSum(total.render()));
        }
        let mut order: Vec<usize> = (0..len).collect();
        let atoms = match (atoms, &space) {
            (Atoms::Line(a), Space::Line) => {
                order.sort_by(|&i, &j| cmp(&a[i], &a[j]));
                let sorted: Vec<T> = order.iter().map(|&i| a[i].clone()).collect();
                if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                    return Err(Error::DuplicateAtom(w[0].render()));
                }
                Atoms::Line(sorted)
            }
            (Atoms::Points(p), Space::Finite(fs)) => {
                if let Some(&index) = p.iter().find(|&&i| i >= fs.len()) {
                    return Err(Error::IndexOutOfRange { index, n: fs.len() });
                }
                order.sort_by_key(|&i| p[i]);
                let sorted: Vec<usize> = order.iter().map(|&i| p[i]).collect();
                if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                    return Err(Error::DuplicateAtom(w[0].to_string()));
                }
                Atoms::Points(sorted)
            }
            _ => return Err(Error::SpaceMismatch),
        };
        let weights = order.iter().map(|&i| weights[i].clone()).collect();
        Ok(Self { space, atoms, weights })
    }

    pub fn on_line(atoms: Vec<T>, weights: Vec<T>) -> Result<Self> {
        Self::new(Space::Line, Atoms::Line(atoms), weights)
    }

    pub fn on_space(space: Arc<FiniteMetricSpace<T>>, points: Vec<usize>, weights: Vec<T>) -> Result<Self> {
        Self::new(Space::Finite(space), Atoms::Points(points), weights)
    }

    pub fn point_mass(x: T) -> Self {
        Self::on_line(vec![x], vec![T::one()]).expect("point mass")
    }

    pub fn space(&self) -> &Space<T> {
        &self.space
    }

    pub fn atoms(&self) -> &Atoms<T> {
        &self.atoms
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn line_atoms(&self) -> Option<&[T]> {
        match &self.atoms {
            Atoms::Line(a) => Some(a),
            Atoms::Points(_) => None,
        }
    }

    /// Distance between atom `i` of `self` and atom `j` of `other`. Both
    /// measures must live on the same space.
    pub fn atom_distance(&self, i: usize, other: &Self, j: usize) -> T {
        match (&self.atoms, &other.atoms, &self.space) {
            (Atoms::Line(a), Atoms::Line(b), _) => (a[i].clone() - b[j].clone()).abs(),
            (Atoms::Points(a), Atoms::Points(b), Space::Finite(fs)) => fs.distance(a[i], b[j]).clone(),
            _ => panic!("atom_distance across different spaces"),
        }
    }

    pub fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.space.same_as(&other.space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn cdf(&self) -> Result<PiecewiseCdf<T>> {
        match &self.atoms {
            Atoms::Line(a) => Ok(PiecewiseCdf::step(a, &self.weights)),
            Atoms::Points(_) => Err(Error::NotOnLine),
        }
    }

    /// Reads the atoms back off the jumps of a distribution function; fails
    /// if the function has a continuous part.
    pub fn from_cdf(cdf: &PiecewiseCdf<T>) -> Result<Self> {
        if !cdf.is_atomic() {
            return Err(Error::NotFinitelySupported);
        }
        let (atoms, weights) = cdf.jumps().into_iter().unzip();
        Self::on_line(atoms, weights)
    }

    pub fn mass_of_intervals(&self, set: &IntervalUnion<T>) -> Result<T> {
        let atoms = self.line_atoms().ok_or(Error::SpaceMismatch)?;
        Ok(atoms
            .iter()
            .zip(&self.weights)
            .filter(|(a, _)| set.contains(a))
            .fold(T::zero(), |acc, (_, w)| acc + w.clone()))
    }

    pub fn mass_of_points(&self, set: &PointSet<T>) -> Result<T> {
        let hit: Vec<bool> = match (&self.atoms, set) {
            (Atoms::Line(a), PointSet::Line(s)) => a.iter().map(|x| s.contains(x)).collect(),
            (Atoms::Points(a), PointSet::Finite(s)) => {
                if let Space::Finite(fs) = &self.space {
                    if let Some(&index) = s.iter().find(|&&i| i >= fs.len()) {
                        return Err(Error::IndexOutOfRange { index, n: fs.len() });
                    }
                }
                a.iter().map(|x| s.contains(x)).collect()
            }
            _ => return Err(Error::SpaceMismatch),
        };
        Ok(hit
            .into_iter()
            .zip(&self.weights)
            .filter(|(h, _)| *h)
            .fold(T::zero(), |acc, (_, w)| acc + w.clone()))
    }

    /// The atoms selected by a bitmask, as a point set.
    pub fn subset(&self, mask: u64) -> PointSet<T> {
        match &self.atoms {
            Atoms::Line(a) => PointSet::line(
                a.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, x)| x.clone())
                    .collect(),
            ),
            Atoms::Points(p) => PointSet::finite(
                p.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect(),
            ),
        }
    }

    pub fn translate(&self, c: &T) -> Result<Self> {
        match &self.atoms {
            Atoms::Line(a) => Self::on_line(a.iter().map(|x| x.clone() + c.clone()).collect(), self.weights.clone()),
            Atoms::Points(_) => Err(Error::NotOnLine),
        }
    }
}

impl<T: Scalar> PartialEq for DiscreteMeasure<T> {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.atoms == other.atoms && self.weights == other.weights
    }
}

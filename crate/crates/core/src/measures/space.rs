use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An `n`-point metric space given by its distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace<T> {
    dist: Vec<Vec<T>>,
}

impl<T: Scalar> FiniteMetricSpace<T> {
    /// Validates symmetry, a zero diagonal, positivity off the diagonal and
    /// the triangle inequality for every triple.
    #[allow(clippy::needless_range_loop)]
    pub fn new(dist: Vec<Vec<T>>) -> Result<Self> {
        let n = dist.len();
        if n == 0 {
            return Err(Error::invalid("dist", "space must contain at least one point"));
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(
                    format!("dist[{i}]"),
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(Error::invalid(format!("dist[{i}][{i}]"), "diagonal must be 0"));
            }
            for j in 0..n {
                if dist[i][j] != dist[j][i] {
                    return Err(Error::invalid(format!("dist[{i}][{j}]"), "matrix is not symmetric"));
                }
                if i != j && dist[i][j] <= T::zero() {
                    return Err(Error::invalid(
                        format!("dist[{i}][{j}]"),
                        "distinct points must be at positive distance",
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[i][k] > dist[i][j].clone() + dist[j][k].clone() {
                        return Err(Error::invalid(
                            format!("dist[{i}][{k}]"),
                            format!("triangle inequality fails through point {j}"),
                        ));
                    }
                }
            }
        }
        Ok(Self { dist })
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> &T {
        &self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<T>] {
        &self.dist
    }
}

/// Where a measure lives.
#[derive(Debug, Clone)]
pub enum Space<T> {
    Line,
    Finite(Arc<FiniteMetricSpace<T>>),
}

impl<T: Scalar> Space<T> {
    pub fn finite(space: FiniteMetricSpace<T>) -> Self {
        Space::Finite(Arc::new(space))
    }

    pub fn is_line(&self) -> bool {
        matches!(self, Space::Line)
    }

    pub fn same_as(&self, other: &Space<T>) -> bool {
        match (self, other) {
            (Space::Line, Space::Line) => true,
            (Space::Finite(a), Space::Finite(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl<T: Scalar> PartialEq for Space<T> {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

//! Diagonal extraction of a pointwise-convergent subsequence.
//!
//! The grid is refined with the midpoint of every pair of neighbors. At each
//! refined point, in increasing order, the current index set is split into
//! clusters of values within `tol` of the cluster's smallest value; the
//! largest cluster survives, and among equally large ones the cluster holding
//! the latest index. The selection is the set surviving every stage: on a
//! finite prefix the diagonal's early picks are arbitrary, while the
//! survivors agree within `tol` at every refined point.
//!
//! The limit candidate on `[g_j, g_{j+1})` is the surviving value at the
//! midpoint of that cell, so jumps that the sequence approaches from the
//! right of a grid point land on the grid point.

use crate::error::{Error, Result};
use crate::levy::levy_distance;
use crate::measures::PiecewiseCdf;
use crate::scalar::{midpoint, Scalar};

#[derive(Debug, Clone)]
pub struct HellySelection<T> {
    /// Selected indices, counting from 1.
    pub indices: Vec<usize>,
    pub limit: PiecewiseCdf<T>,
    /// `ℓ(F_{n_k}, limit)` for each selected index.
    pub levy: Vec<T>,
}

#[derive(Debug, Clone)]
pub enum HellyOutcome<T> {
    Selected(HellySelection<T>),
    /// Grid points where no two members of the running subsequence agreed
    /// within `tol`.
    InsufficientPrefix {
        failing: Vec<T>,
    },
}

impl<T: Scalar> PartialEq for HellySelection<T> {
    fn eq(&self, other: &Self) -> bool {
        self.indices == other.indices && self.limit == other.limit && self.levy == other.levy
    }
}

impl<T: Scalar> PartialEq for HellyOutcome<T> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (HellyOutcome::Selected(a), HellyOutcome::Selected(b)) => a == b,
            (HellyOutcome::InsufficientPrefix { failing: a }, HellyOutcome::InsufficientPrefix { failing: b }) => {
                a == b
            }
            _ => false,
        }
    }
}

/// Splits `members` (sorted by index) into the chosen cluster at `x`.
fn cluster<T: Scalar>(seq: &[PiecewiseCdf<T>], members: &[usize], x: &T, tol: &T) -> Vec<usize> {
    let mut by_value: Vec<(T, usize)> = members.iter().map(|&n| (seq[n - 1].eval(x), n)).collect();
    by_value.sort_by(|a, b| crate::scalar::cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let mut best: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < by_value.len() {
        let start = by_value[i].0.clone();
        let mut j = i;
        while j < by_value.len() && by_value[j].0.clone() - start.clone() <= *tol {
            j += 1;
        }
        let mut group: Vec<usize> = by_value[i..j].iter().map(|p| p.1).collect();
        group.sort_unstable();
        let better = group.len() > best.len() || (group.len() == best.len() && group.last() > best.last());
        if better {
            best = group;
        }
        i = j;
    }
    best
}

pub fn helly_subsequence<T: Scalar>(seq: &[PiecewiseCdf<T>], grid: &[T], tol: &T) -> Result<HellyOutcome<T>> {
    if seq.len() < 2 {
        return Err(Error::invalid("sequence", "needs at least two members"));
    }
    if grid.is_empty() {
        return Err(Error::invalid("grid", "must not be empty"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("grid", "must be strictly increasing"));
    }
    if *tol < T::zero() {
        return Err(Error::invalid("tol", format!("must be nonnegative, got {tol}")));
    }
    let mut points = Vec::with_capacity(2 * grid.len());
    for (k, g) in grid.iter().enumerate() {
        points.push(g.clone());
        if let Some(next) = grid.get(k + 1) {
            points.push(midpoint(g, next));
        }
    }

    let mut members: Vec<usize> = (1..=seq.len()).collect();
    let mut failing = Vec::new();
    // surviving value at each refined point
    let mut value_at = Vec::with_capacity(points.len());
    for x in &points {
        let chosen = cluster(seq, &members, x, tol);
        if chosen.len() < 2 {
            failing.push(x.clone());
        } else {
            members = chosen;
        }
        let latest = *members.last().expect("members stay nonempty");
        value_at.push(seq[latest - 1].eval(x));
    }
    let indices = members;
    if !failing.is_empty() {
        return Ok(HellyOutcome::InsufficientPrefix { failing });
    }

    // values on [g_j, g_{j+1}) from the midpoints, made monotone
    let mut values = Vec::with_capacity(grid.len());
    let mut running = T::zero();
    for j in 0..grid.len() {
        let v = if j + 1 < grid.len() {
            value_at[2 * j + 1].clone()
        } else {
            T::one()
        };
        if v > running {
            running = v;
        }
        values.push(running.clone());
    }
    let slopes = vec![T::zero(); grid.len() - 1];
    let limit = PiecewiseCdf::new(grid.to_vec(), values, slopes)?;
    let levy = indices
        .iter()
        .map(|&n| levy_distance(&seq[n - 1], &limit).value)
        .collect();
    Ok(HellyOutcome::Selected(HellySelection { indices, limit, levy }))
}

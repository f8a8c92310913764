//! Prohorov distance through couplings.
//!
//! For finitely supported `μ`, `ν` and `ε > 0` there is a coupling putting
//! mass at least `1 − s` on pairs with `d(x, y) < ε` exactly when
//! `μ(A) ≤ ν(A^ε) + s` for every subset `A` of the support of `μ`. This is
//! max-flow/min-cut on the network
//!
//! ```text
//! S -> μ_i (cap μ_i)   μ_i -> ν_j (cap 1, d < ε)   ν_j -> T (cap ν_j)
//! μ_i -> O (cap 1)     O -> P (cap s)              P -> ν_j (cap 1)
//! ```
//!
//! whose overflow path `O -> P` carries the mass allowed off the close pairs.
//! With `s = ε` this is the one-sided Prohorov condition, which equals the
//! two-sided one.

pub mod flow;

use std::io::Write;

pub use flow::{max_flow, FlowNetwork, MaxFlow};

use crate::error::{Error, Result};
use crate::measures::{DiscreteMeasure, Law, Set};
use crate::prohorov::{DistanceReport, Side, Witness};
use crate::scalar::{max_of, midpoint, sort_dedup, Scalar};

/// Joint distribution of `μ` (rows) and `ν` (columns) over their atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling<T> {
    pub joint: Vec<Vec<T>>,
}

impl<T: Scalar> Coupling<T> {
    /// Rows sum to the weights of `mu`, columns to those of `nu`, entries
    /// are nonnegative.
    pub fn has_marginals(&self, mu: &DiscreteMeasure<T>, nu: &DiscreteMeasure<T>) -> bool {
        if self.joint.len() != mu.len() || self.joint.iter().any(|r| r.len() != nu.len()) {
            return false;
        }
        let rows = self.joint.iter().zip(mu.weights()).all(|(row, w)| {
            row.iter().all(|x| *x >= T::zero()) && row.iter().fold(T::zero(), |a, x| a + x.clone()) == *w
        });
        let cols = nu
            .weights()
            .iter()
            .enumerate()
            .all(|(j, w)| self.joint.iter().fold(T::zero(), |a, row| a + row[j].clone()) == *w);
        rows && cols
    }

    /// Mass on pairs at distance strictly below `eps`.
    pub fn close_mass(&self, mu: &DiscreteMeasure<T>, nu: &DiscreteMeasure<T>, eps: &T) -> T {
        let mut total = T::zero();
        for (i, row) in self.joint.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if mu.atom_distance(i, nu, j) < *eps {
                    total = total + x.clone();
                }
            }
        }
        total
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StrassenOutcome<T> {
    Feasible(Coupling<T>),
    /// `μ(A) > ν(A^ε) + slack` for the μ-atoms `A` on the source side of a
    /// minimum cut.
    Infeasible(Witness<T>),
}

impl<T> StrassenOutcome<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, StrassenOutcome::Feasible(_))
    }
}

struct Network<T> {
    net: FlowNetwork<T>,
    m: usize,
    n: usize,
    /// (arc index, i, j) for the close arcs
    close: Vec<(usize, usize, usize)>,
    overflow_in: Vec<usize>,
    overflow_out: Vec<usize>,
}

fn network<T: Scalar>(mu: &DiscreteMeasure<T>, nu: &DiscreteMeasure<T>, eps: &T, slack: &T) -> Network<T> {
    let (m, n) = (mu.len(), nu.len());
    let (src, o, p, sink) = (0, m + n + 1, m + n + 2, m + n + 3);
    let mut net = FlowNetwork::new(m + n + 4, src, sink).expect("fixed layout");
    let mut close = Vec::new();
    for (i, w) in mu.weights().iter().enumerate() {
        net.add_arc(src, 1 + i, w.clone()).expect("valid arc");
    }
    for i in 0..m {
        for j in 0..n {
            if mu.atom_distance(i, nu, j) < *eps {
                close.push((net.add_arc(1 + i, 1 + m + j, T::one()).expect("valid arc"), i, j));
            }
        }
    }
    let overflow_in = (0..m)
        .map(|i| net.add_arc(1 + i, o, T::one()).expect("valid arc"))
        .collect();
    net.add_arc(o, p, slack.clone()).expect("valid arc");
    let overflow_out = (0..n)
        .map(|j| net.add_arc(p, 1 + m + j, T::one()).expect("valid arc"))
        .collect();
    for (j, w) in nu.weights().iter().enumerate() {
        net.add_arc(1 + m + j, sink, w.clone()).expect("valid arc");
    }
    Network {
        net,
        m,
        n,
        close,
        overflow_in,
        overflow_out,
    }
}

fn discrete_pair<T: Scalar>(mu: &Law<T>, nu: &Law<T>) -> Result<(DiscreteMeasure<T>, DiscreteMeasure<T>)> {
    let a = mu.discrete().ok_or(Error::NotFinitelySupported)?;
    let b = nu.discrete().ok_or(Error::NotFinitelySupported)?;
    a.check_same_space(&b)?;
    Ok((a, b))
}

/// Decides whether some coupling puts mass at least `1 − slack` on pairs
/// strictly closer than `eps`.
pub fn strassen_feasible<T: Scalar>(mu: &Law<T>, nu: &Law<T>, eps: &T, slack: &T) -> Result<StrassenOutcome<T>> {
    crate::measures::check_eps(eps)?;
    if *slack < T::zero() {
        return Err(Error::invalid("slack", format!("must be nonnegative, got {slack}")));
    }
    let (a, b) = discrete_pair(mu, nu)?;
    Ok(strassen(&a, &b, eps, slack))
}

fn strassen<T: Scalar>(mu: &DiscreteMeasure<T>, nu: &DiscreteMeasure<T>, eps: &T, slack: &T) -> StrassenOutcome<T> {
    let nw = network(mu, nu, eps, slack);
    let f = max_flow(&nw.net);
    if f.value == T::one() {
        let mut joint = vec![vec![T::zero(); nw.n]; nw.m];
        for &(k, i, j) in &nw.close {
            joint[i][j] = f.flow[k].clone();
        }
        // overflow mass is matched row-by-row in order
        let mut rows: Vec<T> = nw.overflow_in.iter().map(|&k| f.flow[k].clone()).collect();
        let mut cols: Vec<T> = nw.overflow_out.iter().map(|&k| f.flow[k].clone()).collect();
        let (mut i, mut j) = (0, 0);
        while i < nw.m && j < nw.n {
            let x = if rows[i] < cols[j] {
                rows[i].clone()
            } else {
                cols[j].clone()
            };
            joint[i][j] = joint[i][j].clone() + x.clone();
            rows[i] = rows[i].clone() - x.clone();
            cols[j] = cols[j].clone() - x;
            if rows[i].is_zero() {
                i += 1;
            } else {
                j += 1;
            }
        }
        StrassenOutcome::Feasible(Coupling { joint })
    } else {
        let mask = (0..nw.m)
            .filter(|i| f.source_side[1 + i])
            .fold(0u64, |acc, i| acc | 1 << i);
        StrassenOutcome::Infeasible(Witness {
            side: Side::Mu,
            set: Set::Points(mu.subset(mask)),
            eps: eps.clone(),
        })
    }
}

/// Largest mass a coupling can put on pairs strictly closer than `eps`.
fn close_flow<T: Scalar>(mu: &DiscreteMeasure<T>, nu: &DiscreteMeasure<T>, eps: &T) -> T {
    max_flow(&network(mu, nu, eps, &T::zero()).net).value
}

fn distances<T: Scalar>(mu: &DiscreteMeasure<T>, nu: &DiscreteMeasure<T>) -> Vec<T> {
    let mut d: Vec<T> = (0..mu.len())
        .flat_map(|i| (0..nu.len()).map(move |j| mu.atom_distance(i, nu, j)))
        .collect();
    d.push(T::zero());
    sort_dedup(&mut d);
    d
}

/// Prohorov distance from coupling feasibility.
///
/// On `(d_k, d_{k+1}]` between consecutive pairwise distances the close-pair
/// set is fixed, so the shortfall `D_k = 1 − close_flow` is constant and the
/// feasible part of the bracket is `ε ≥ D_k`. Both `D_k` and the brackets are
/// monotone in `k`, so the first feasible bracket is found by bisection.
pub fn prohorov_via_flow<T: Scalar>(mu: &Law<T>, nu: &Law<T>) -> Result<DistanceReport<T>> {
    let (a, b) = discrete_pair(mu, nu)?;
    let d = distances(&a, &b);
    let shortfall = |k: usize| -> T {
        let probe = match d.get(k + 1) {
            Some(next) => midpoint(&d[k], next),
            None => d[k].clone() + T::one(),
        };
        T::one() - close_flow(&a, &b, &probe)
    };
    let fits = |k: usize, s: &T| d.get(k + 1).is_none_or(|next| s <= next);
    // first bracket k with D_k ≤ d_{k+1}
    let (mut lo, mut hi) = (0usize, d.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if fits(mid, &shortfall(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let s = shortfall(lo);
    let value = max_of(d[lo].clone(), s.clone());
    let attained = s > d[lo];

    let witness = if value.is_zero() {
        None
    } else {
        let below = d.iter().rev().find(|x| **x < value).cloned().unwrap_or_else(T::zero);
        match strassen(&a, &b, &midpoint(&below, &value), &midpoint(&below, &value)) {
            StrassenOutcome::Infeasible(w) => Some(w),
            StrassenOutcome::Feasible(_) => None,
        }
    };
    let upper = if attained {
        value.clone()
    } else {
        let next = d.get(lo + 1).cloned().unwrap_or_else(|| value.clone() + T::one());
        midpoint(&value, &next)
    };
    let coupling = match strassen(&a, &b, &upper, &upper) {
        StrassenOutcome::Feasible(c) => Some(c),
        StrassenOutcome::Infeasible(_) => None,
    };
    Ok(DistanceReport {
        value,
        attained,
        witness,
        feasible_at: coupling.is_some().then_some(upper),
        coupling,
    })
}

/// One sample of the ε-vs-flow curve with slack ε.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontierRow<T> {
    pub epsilon: T,
    pub flow: T,
    pub feasible: bool,
}

/// Flow at every pairwise distance and at the midpoint of every bracket,
/// with the overflow capacity equal to ε.
pub fn flow_frontier<T: Scalar>(mu: &Law<T>, nu: &Law<T>) -> Result<Vec<FrontierRow<T>>> {
    let (a, b) = discrete_pair(mu, nu)?;
    let d = distances(&a, &b);
    let mut eps: Vec<T> = d.iter().filter(|x| !x.is_zero()).cloned().collect();
    eps.extend(d.windows(2).map(|w| midpoint(&w[0], &w[1])));
    eps.push(d[d.len() - 1].clone() + T::one());
    sort_dedup(&mut eps);
    Ok(eps
        .into_iter()
        .map(|e| {
            let flow = max_flow(&network(&a, &b, &e, &e).net).value;
            let feasible = flow == T::one();
            FrontierRow {
                epsilon: e,
                flow,
                feasible,
            }
        })
        .collect())
}

pub fn write_frontier_csv<T: Scalar, W: Write>(rows: &[FrontierRow<T>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Invalid {
        field: "frontier".into(),
        message: e.to_string(),
    };
    w.write_record(["epsilon", "flow", "feasible"]).map_err(io)?;
    for r in rows {
        w.write_record([r.epsilon.render(), r.flow.render(), r.feasible.to_string()])
            .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Invalid {
        field: "frontier".into(),
        message: e.to_string(),
    })?;
    Ok(())
}

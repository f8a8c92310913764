//! Finite-prefix diagnostics for weak convergence.
//!
//! Every verdict here is evidence about the prefix that was supplied, never a
//! statement about the limit; reports carry the prefix length.

mod helly;
mod portmanteau;
mod profile;
mod quantize;
mod tightness;

pub use helly::{helly_subsequence, HellyOutcome, HellySelection};
pub use portmanteau::{
    integrate, portmanteau_report, Condition, ConditionVerdict, PortmanteauFamilies, PortmanteauReport, TestFunction,
};
pub use profile::{levy_convergence_profile, LevyProfile};
pub use quantize::quantize;
pub use tightness::{tightness_witness, TightnessWitness};

use crate::error::{Error, Result};
use crate::measures::{Law, PiecewiseCdf};
use crate::scalar::Scalar;

/// A nonempty finite prefix `μ_1, …, μ_N` on a common space.
#[derive(Debug, Clone)]
pub struct MeasureSequence<T> {
    items: Vec<Law<T>>,
}

impl<T: Scalar> MeasureSequence<T> {
    pub fn new(items: Vec<Law<T>>) -> Result<Self> {
        let first = items
            .first()
            .ok_or_else(|| Error::invalid("sequence", "must not be empty"))?;
        for m in &items[1..] {
            match (first, m) {
                (Law::Discrete(a), Law::Discrete(b)) => a.check_same_space(b)?,
                _ if first.is_line() && m.is_line() => {}
                _ => return Err(Error::SpaceMismatch),
            }
        }
        Ok(Self { items })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// The `n`-th measure, counting from 1.
    pub fn get(&self, n: usize) -> Option<&Law<T>> {
        n.checked_sub(1).and_then(|i| self.items.get(i))
    }

    pub fn items(&self) -> &[Law<T>] {
        &self.items
    }

    pub fn cdfs(&self) -> Result<Vec<PiecewiseCdf<T>>> {
        self.items.iter().map(Law::cdf).collect()
    }
}

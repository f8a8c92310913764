//! Exact infimum of a feasibility frontier.
//!
//! Both the Lévy and the Prohorov distances have the shape
//!
//! ```text
//! inf { ε > 0 : f_i(ε) <= ε for every i }
//! ```
//!
//! where each `f_i` is affine and nonincreasing on every open bracket between
//! consecutive critical values, and the feasible set is an upper set. Between
//! two critical values each constraint `f_i(ε) <= ε` therefore has a single
//! rational threshold, recovered from two exact evaluations inside the
//! bracket. At the critical values themselves the constraints are evaluated
//! directly, so jumps are handled without any sampling.

use crate::scalar::{midpoint, sort_dedup, Scalar};

/// Result of a frontier search.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Frontier<T> {
    pub value: T,
    /// The constraints hold at `value` itself.
    pub attained: bool,
    /// A constraint violated at every ε below `value`.
    pub binding: Option<usize>,
    /// Some ε < `value` at which `binding` is violated.
    pub probe: Option<T>,
}

fn feasible<T: Scalar>(vals: &[T], eps: &T) -> bool {
    vals.iter().all(|v| v <= eps)
}

/// Search over brackets delimited by `critical` (anything outside `(0, 1)` is
/// ignored; 0 and 1 are always added). `eval(ε)` returns every `f_i(ε)`, in
/// a fixed order. Every `f_i` must be bounded by 1.
pub(crate) fn infimum<T, E>(critical: &[T], eval: E) -> Frontier<T>
where
    T: Scalar,
    E: Fn(&T) -> Vec<T>,
{
    let mut pts: Vec<T> = critical
        .iter()
        .filter(|c| **c > T::zero() && **c < T::one())
        .cloned()
        .collect();
    pts.push(T::zero());
    pts.push(T::one());
    sort_dedup(&mut pts);

    let three = T::from_int(3);
    let mut previous: Option<(usize, T)> = None;
    for w in pts.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let third = (hi.clone() - lo.clone()) / three.clone();
        let p1 = lo.clone() + third.clone();
        let p2 = p1.clone() + third.clone();
        let v1 = eval(&p1);
        let v2 = eval(&p2);

        let mut best = lo.clone();
        let mut best_idx = None;
        for (i, (a, b)) in v1.iter().zip(&v2).enumerate() {
            let slope = (b.clone() - a.clone()) / third.clone();
            let intercept = a.clone() - slope.clone() * p1.clone();
            let denom = T::one() - slope;
            let threshold = if denom > T::zero() {
                intercept / denom
            } else {
                hi.clone()
            };
            if threshold > best {
                best = threshold;
                best_idx = Some(i);
            }
        }

        if best < *hi {
            if best > *lo {
                return Frontier {
                    probe: Some(midpoint(lo, &best)),
                    value: best,
                    attained: true,
                    binding: best_idx,
                };
            }
            let attained = *lo > T::zero() && feasible(&eval(lo), lo);
            let (binding, probe) = match previous {
                Some((i, p)) => (Some(i), Some(p)),
                None => (None, None),
            };
            return Frontier {
                value: lo.clone(),
                attained,
                binding,
                probe,
            };
        }
        let idx = best_idx.expect("a threshold at or above the bracket end has an index");
        if feasible(&eval(hi), hi) {
            return Frontier {
                value: hi.clone(),
                attained: true,
                binding: Some(idx),
                probe: Some(midpoint(lo, hi)),
            };
        }
        previous = Some((idx, midpoint(lo, hi)));
    }
    unreachable!("ε = 1 is always feasible for constraints bounded by 1")
}

//! Lévy and Kolmogorov (uniform) distances between distribution functions.
//!
//! The Lévy distance is the smallest band width `h` with
//!
//! ```text
//! F(x − h) − h <= G(x) <= F(x + h) + h    for all x.
//! ```
//!
//! Writing the lower inequality as `F(y) − G(y + h) <= h`, the supremum of
//! `F(y) − G(y + h)` over `y` is attained (or approached) at a breakpoint of
//! `F` or at a breakpoint of `G` shifted by `−h`, so a finite list of terms
//! decides the band exactly. The upper inequality is the same statement with
//! `F` and `G` exchanged.

use crate::frontier::{infimum, Frontier};
use crate::measures::PiecewiseCdf;
use crate::scalar::{cmp, midpoint, sort_dedup, Scalar};

/// Which side of the Lévy band is crossed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandSide {
    /// `F(x − h) − h > G(x)`.
    Lower,
    /// `G(x) > F(x + h) + h`.
    Upper,
}

/// A point where the band of half-width `h` fails.
#[derive(Debug, Clone, PartialEq)]
pub struct BandViolation<T> {
    pub h: T,
    pub x: T,
    pub side: BandSide,
}

impl<T: Scalar> BandViolation<T> {
    /// Re-evaluates the violated inequality.
    pub fn holds_for(&self, f: &PiecewiseCdf<T>, g: &PiecewiseCdf<T>) -> bool {
        let h = &self.h;
        match self.side {
            BandSide::Lower => f.eval(&(self.x.clone() - h.clone())) - h.clone() > g.eval(&self.x),
            BandSide::Upper => g.eval(&self.x) > f.eval(&(self.x.clone() + h.clone())) + h.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DistanceWitness<T> {
    /// The Lévy band fails at this point for some `h` below the distance.
    Band(BandViolation<T>),
    /// `|F − G|` reaches the distance at `x` (or as `x` is approached from
    /// the left when `left_limit` is set).
    Location { x: T, left_limit: bool },
}

/// A distance value with the attainment flag and a lower-bound witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Distance<T> {
    pub value: T,
    /// The defining inequalities hold at `value` itself.
    pub attained: bool,
    pub witness: Option<DistanceWitness<T>>,
}

/// Terms whose maximum (with 0) is `sup_y F(y) − G(y + eps)`.
fn shift_terms<T: Scalar>(f: &PiecewiseCdf<T>, g: &PiecewiseCdf<T>, eps: &T) -> Vec<T> {
    let mut out = Vec::with_capacity(2 * (f.breakpoints().len() + g.breakpoints().len()));
    for (b, (v, l)) in f.breakpoints().iter().zip(f.values().iter().zip(f.left_limits())) {
        let shifted = b.clone() + eps.clone();
        out.push(v.clone() - g.eval(&shifted));
        out.push(l.clone() - g.eval_left(&shifted));
    }
    for (c, (v, l)) in g.breakpoints().iter().zip(g.values().iter().zip(g.left_limits())) {
        let shifted = c.clone() - eps.clone();
        out.push(f.eval(&shifted) - v.clone());
        out.push(f.eval_left(&shifted) - l.clone());
    }
    out
}

/// Location `y` of term `k` of [`shift_terms`], and whether it is a left limit.
fn term_location<T: Scalar>(f: &PiecewiseCdf<T>, g: &PiecewiseCdf<T>, eps: &T, k: usize) -> (T, bool) {
    let nf = f.breakpoints().len();
    let left = k % 2 == 1;
    if k / 2 < nf {
        (f.breakpoints()[k / 2].clone(), left)
    } else {
        (g.breakpoints()[k / 2 - nf].clone() - eps.clone(), left)
    }
}

/// Finds a concrete `y` with `F(y) − G(y + eps) > eps` given a term that
/// exceeds `eps` as a left limit at `at`.
fn approach_from_left<T: Scalar>(f: &PiecewiseCdf<T>, g: &PiecewiseCdf<T>, eps: &T, at: &T) -> T {
    let gap = |y: &T| f.eval(y) - g.eval(&(y.clone() + eps.clone()));
    let mut below: Vec<T> = f
        .breakpoints()
        .iter()
        .cloned()
        .chain(g.breakpoints().iter().map(|c| c.clone() - eps.clone()))
        .filter(|p| p < at)
        .collect();
    sort_dedup(&mut below);
    let floor = below.pop().unwrap_or_else(|| at.clone() - T::one());
    let mut y = midpoint(&floor, at);
    for _ in 0..256 {
        if gap(&y) > *eps {
            return y;
        }
        y = midpoint(&y, at);
    }
    y
}

/// First violation of `F(y) ≤ G(y + eps) + eps`, as a `y`.
fn one_sided_violation<T: Scalar>(f: &PiecewiseCdf<T>, g: &PiecewiseCdf<T>, eps: &T) -> Option<T> {
    let terms = shift_terms(f, g, eps);
    let k = terms.iter().position(|t| t > eps)?;
    let (y, left) = term_location(f, g, eps, k);
    Some(if left { approach_from_left(f, g, eps, &y) } else { y })
}

/// Checks the Lévy band of half-width `h`; on failure returns a point where
/// it is crossed.
pub fn levy_feasible<T: Scalar>(f: &PiecewiseCdf<T>, g: &PiecewiseCdf<T>, h: &T) -> Result<(), BandViolation<T>> {
    if let Some(y) = one_sided_violation(f, g, h) {
        return Err(BandViolation {
            h: h.clone(),
            x: y + h.clone(),
            side: BandSide::Lower,
        });
    }
    if let Some(y) = one_sided_violation(g, f, h) {
        return Err(BandViolation {
            h: h.clone(),
            x: y,
            side: BandSide::Upper,
        });
    }
    Ok(())
}

fn critical_shifts<T: Scalar>(f: &PiecewiseCdf<T>, g: &PiecewiseCdf<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(2 * f.breakpoints().len() * g.breakpoints().len());
    for b in f.breakpoints() {
        for c in g.breakpoints() {
            out.push(c.clone() - b.clone());
            out.push(b.clone() - c.clone());
        }
    }
    out
}

fn band_witness<T: Scalar>(
    frontier: &Frontier<T>,
    f: &PiecewiseCdf<T>,
    g: &PiecewiseCdf<T>,
) -> Option<DistanceWitness<T>> {
    let probe = frontier.probe.as_ref()?;
    levy_feasible(f, g, probe).err().map(DistanceWitness::Band)
}

/// The Lévy distance, computed exactly.
pub fn levy_distance<T: Scalar>(f: &PiecewiseCdf<T>, g: &PiecewiseCdf<T>) -> Distance<T> {
    let frontier = infimum(&critical_shifts(f, g), |eps| {
        let mut terms = shift_terms(f, g, eps);
        terms.extend(shift_terms(g, f, eps));
        terms
    });
    let witness = band_witness(&frontier, f, g);
    Distance {
        value: frontier.value,
        attained: frontier.attained,
        witness,
    }
}

/// `inf { ε > 0 : F(x) ≤ G(x + ε) + ε for all x }`, the lower half of the
/// band on its own.
///
/// This is not symmetric: for `F` a unit step at 0 and `G` a unit step at
/// `a > 0` it is `min(a, 1)` one way and 0 the other. The Lévy distance is
/// the larger of the two orientations.
pub fn levy_onesided<T: Scalar>(f: &PiecewiseCdf<T>, g: &PiecewiseCdf<T>) -> Distance<T> {
    let frontier = infimum(&critical_shifts(f, g), |eps| shift_terms(f, g, eps));
    let witness = frontier.probe.as_ref().and_then(|p| {
        one_sided_violation(f, g, p).map(|y| {
            DistanceWitness::Band(BandViolation {
                h: p.clone(),
                x: y + p.clone(),
                side: BandSide::Lower,
            })
        })
    });
    Distance {
        value: frontier.value,
        attained: frontier.attained,
        witness,
    }
}

/// `sup_x |F(x) − G(x)|`. Between breakpoints both functions are affine, so
/// the supremum is reached at a breakpoint value or a left limit.
pub fn kolmogorov_distance<T: Scalar>(f: &PiecewiseCdf<T>, g: &PiecewiseCdf<T>) -> Distance<T> {
    let mut pts: Vec<T> = f.breakpoints().iter().chain(g.breakpoints()).cloned().collect();
    sort_dedup(&mut pts);
    let mut best = T::zero();
    let mut at: Option<(T, bool)> = None;
    let mut attained = true;
    for x in &pts {
        let right = (f.eval(x) - g.eval(x)).abs();
        let left = (f.eval_left(x) - g.eval_left(x)).abs();
        if right > best || (right == best && !attained) {
            best = right;
            at = Some((x.clone(), false));
            attained = true;
        }
        if left > best {
            best = left;
            at = Some((x.clone(), true));
            attained = false;
        }
    }
    Distance {
        value: best,
        attained,
        witness: at.map(|(x, left_limit)| DistanceWitness::Location { x, left_limit }),
    }
}

/// Sorted distinct breakpoints of both functions.
pub fn joint_breakpoints<T: Scalar>(f: &PiecewiseCdf<T>, g: &PiecewiseCdf<T>) -> Vec<T> {
    let mut pts: Vec<T> = f.breakpoints().iter().chain(g.breakpoints()).cloned().collect();
    pts.sort_by(cmp);
    pts.dedup();
    pts
}

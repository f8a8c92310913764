use crate::error::{Error, Result};
use crate::measures::{Interval, IntervalUnion, Law};
use crate::scalar::{sort_dedup, Scalar};

/// A closed interval carrying mass `> 1 − ε` under every member of a family.
#[derive(Debug, Clone, PartialEq)]
pub struct TightnessWitness<T> {
    pub lo: T,
    pub hi: T,
    /// Mass of `[lo, hi]` under each member, in family order.
    pub masses: Vec<T>,
    /// Index of the member with the smallest mass.
    pub binding: usize,
}

impl<T: Scalar> TightnessWitness<T> {
    pub fn interval(&self) -> IntervalUnion<T> {
        IntervalUnion::new(vec![Interval::closed(self.lo.clone(), self.hi.clone())])
    }
}

fn masses<T: Scalar>(family: &[Law<T>], a: &T, b: &T) -> Result<Vec<T>> {
    let k = IntervalUnion::new(vec![Interval::closed(a.clone(), b.clone())]);
    family.iter().map(|m| m.mass_of_intervals(&k)).collect()
}

/// Shortest `[a, b]` with endpoints among the atoms and breakpoints of the
/// family such that every member gives it mass `> 1 − ε`; ties go to the
/// leftmost. For `ε ≥ 1` the condition is vacuous and the degenerate
/// interval at the leftmost candidate is returned.
pub fn tightness_witness<T: Scalar>(family: &[Law<T>], eps: &T) -> Result<TightnessWitness<T>> {
    crate::measures::check_eps(eps)?;
    if family.is_empty() {
        return Err(Error::invalid("family", "must not be empty"));
    }
    let mut pts = Vec::new();
    for m in family {
        pts.extend(m.key_points()?);
    }
    sort_dedup(&mut pts);
    let need = T::one() - eps.clone();
    let ok = |a: &T, b: &T| -> Result<bool> { Ok(masses(family, a, b)?.iter().all(|m| *m > need)) };

    let mut best: Option<(usize, usize)> = None;
    if *eps >= T::one() {
        best = Some((0, 0));
    } else {
        for i in 0..pts.len() {
            // mass of [a, b] grows with b: bisect for the first b that works
            if !ok(&pts[i], &pts[pts.len() - 1])? {
                break;
            }
            let (mut lo, mut hi) = (i, pts.len() - 1);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if ok(&pts[i], &pts[mid])? {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            let shorter = match best {
                None => true,
                Some((a, b)) => pts[lo].clone() - pts[i].clone() < pts[b].clone() - pts[a].clone(),
            };
            if shorter {
                best = Some((i, lo));
            }
        }
    }
    let (a, b) = best.expect("the whole hull always works");
    let masses = masses(family, &pts[a], &pts[b])?;
    let binding = (0..masses.len()).fold(0, |k, j| if masses[j] < masses[k] { j } else { k });
    Ok(TightnessWitness {
        lo: pts[a].clone(),
        hi: pts[b].clone(),
        masses,
        binding,
    })
}

use crate::error::{Error, Result};
use crate::measures::{Bound, DiscreteMeasure, Interval, IntervalUnion, Law};
use crate::scalar::{midpoint, Scalar};

/// Collapses the mass of each cell `[s + kδ, s + (k+1)δ)`, anchored at the
/// left end `s` of the support, onto one point of the cell.
///
/// The point is the cell midpoint, except when all of the cell's mass sits
/// on a single atom, which then stays where it is. Every unit of mass moves
/// by less than δ, so the Prohorov distance to the input is at most δ.
pub fn quantize<T: Scalar>(law: &Law<T>, delta: &T) -> Result<DiscreteMeasure<T>> {
    if *delta <= T::zero() {
        return Err(Error::invalid("delta", format!("must be positive, got {delta}")));
    }
    if !law.is_line() {
        return Err(Error::NotOnLine);
    }
    let cell = |start: &T, k: &T| -> (T, T) {
        let a = start.clone() + k.clone() * delta.clone();
        (a.clone(), a + delta.clone())
    };
    let mut atoms = Vec::new();
    let mut weights = Vec::new();
    match law.discrete() {
        Some(m) => {
            let xs = m.line_atoms().ok_or(Error::NotOnLine)?;
            let s = xs[0].clone();
            let mut i = 0;
            while i < xs.len() {
                let k = ((xs[i].clone() - s.clone()) / delta.clone()).floor();
                let (a, b) = cell(&s, &k);
                let mut j = i;
                let mut mass = T::zero();
                while j < xs.len() && xs[j] < b {
                    mass = mass + m.weights()[j].clone();
                    j += 1;
                }
                atoms.push(if j == i + 1 { xs[i].clone() } else { midpoint(&a, &b) });
                weights.push(mass);
                i = j;
            }
        }
        None => {
            let f = law.cdf()?;
            let (s, end) = f.support_bounds();
            let last = ((end.clone() - s.clone()) / delta.clone()).floor();
            let jumps = f.jumps();
            let mut k = T::zero();
            while k <= last {
                let (a, b) = cell(&s, &k);
                let mass = f.mass(&IntervalUnion::new(vec![Interval {
                    lo: Bound::Closed(a.clone()),
                    hi: Bound::Open(b.clone()),
                }]));
                if mass > T::zero() {
                    let inside: Vec<&(T, T)> = jumps.iter().filter(|(x, _)| *x >= a && *x < b).collect();
                    let rep = match inside.as_slice() {
                        [(x, w)] if *w == mass => x.clone(),
                        _ => midpoint(&a, &b),
                    };
                    atoms.push(rep);
                    weights.push(mass);
                }
                k = k + T::one();
            }
        }
    }
    DiscreteMeasure::on_line(atoms, weights)
}

//! Exact Prohorov distance by enumeration of closed sets.
//!
//! For finitely supported measures every mass is carried by atoms, so the
//! condition `μ(A) ≤ ν(A^ε) + ε` over closed `A` only has to be checked for
//! subsets of the support of `μ`: shrinking `A` to `A ∩ supp μ` keeps `μ(A)`
//! and can only shrink `A^ε`. On a finite space every subset is closed, so
//! restricting to closed sets changes nothing.
//!
//! When one side is a general distribution function `G` on the line and the
//! other is discrete with atoms `S`, two families are exhaustive:
//!
//! * discrete side: subsets `A ⊆ S`, as above;
//! * continuous side: for `T ⊆ S`, the closed set `C_T = ℝ \ T^ε`. Any closed
//!   `A` whose neighborhood misses exactly the atoms `T` satisfies
//!   `A ⊆ C_T`, while `C_T^ε` still misses `T`, so the inequality for `C_T`
//!   implies the one for `A`.
//!
//! In both cases each constraint, as a function of ε, is affine between the
//! critical values (atom-to-breakpoint distances, atom gaps and half gaps),
//! which is what the frontier search needs.

use crate::error::{Error, Result};
use crate::frontier::{infimum, Frontier};
use crate::measures::{
    eps_neighborhood, measure_of, Atoms, DiscreteMeasure, IntervalUnion, Law, PiecewiseCdf, PointSet, Set, Space,
};
use crate::scalar::{midpoint, sort_dedup, Scalar};
use crate::transport::Coupling;

pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Which family of inequalities a witness belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `μ(A) > ν(A^ε) + ε`.
    Mu,
    /// `ν(A) > μ(A^ε) + ε`.
    Nu,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Mu => Side::Nu,
            Side::Nu => Side::Mu,
        }
    }
}

/// A set violating one of the Prohorov inequalities at `eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T> {
    pub side: Side,
    pub set: Set<T>,
    pub eps: T,
}

fn space_of<T: Scalar>(law: &Law<T>) -> Space<T> {
    match law {
        Law::Discrete(m) => m.space().clone(),
        Law::Cdf(_) => Space::Line,
    }
}

impl<T: Scalar> Witness<T> {
    /// Re-evaluates the inequality with plain set arithmetic.
    pub fn violates(&self, mu: &Law<T>, nu: &Law<T>) -> Result<bool> {
        self.violates_at(mu, nu, &self.eps)
    }

    pub fn violates_at(&self, mu: &Law<T>, nu: &Law<T>, eps: &T) -> Result<bool> {
        let (lhs, rhs) = match self.side {
            Side::Mu => (mu, nu),
            Side::Nu => (nu, mu),
        };
        let nb = eps_neighborhood(&space_of(lhs), &self.set, eps)?;
        Ok(measure_of(lhs, &self.set)? > measure_of(rhs, &nb)? + eps.clone())
    }

    pub fn note(&self) -> &'static str {
        match self.side {
            Side::Mu => "mu(A) > nu(A^eps) + eps",
            Side::Nu => "nu(A) > mu(A^eps) + eps",
        }
    }
}

/// Computed Prohorov distance with its certificates.
#[derive(Debug, Clone)]
pub struct DistanceReport<T> {
    pub value: T,
    /// The inequalities hold at `value` itself.
    pub attained: bool,
    /// Lower-bound certificate: a set violating the inequalities at some
    /// ε below `value`, hence (by monotonicity) at every such ε.
    pub witness: Option<Witness<T>>,
    /// An ε at or just above `value` where all inequalities were checked.
    pub feasible_at: Option<T>,
    /// Upper-bound certificate from the coupling route, when computed.
    pub coupling: Option<Coupling<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility<T> {
    Feasible,
    Violated(Witness<T>),
}

impl<T> Feasibility<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

/// Subset masses split into two lookup tables so a mask costs one addition.
pub(crate) struct MaskMass<T> {
    low_bits: usize,
    low: Vec<T>,
    high: Vec<T>,
}

impl<T: Scalar> MaskMass<T> {
    pub fn new(weights: &[T]) -> Self {
        let low_bits = weights.len() / 2;
        let table = |w: &[T]| {
            let mut t = vec![T::zero(); 1 << w.len()];
            for mask in 1usize..t.len() {
                let bit = mask.trailing_zeros() as usize;
                t[mask] = t[mask & (mask - 1)].clone() + w[bit].clone();
            }
            t
        };
        Self {
            low_bits,
            low: table(&weights[..low_bits]),
            high: table(&weights[low_bits..]),
        }
    }

    pub fn get(&self, mask: u64) -> T {
        let low = (mask & ((1u64 << self.low_bits) - 1)) as usize;
        let high = (mask >> self.low_bits) as usize;
        self.low[low].clone() + self.high[high].clone()
    }
}

/// Neighbor masks of every subset, built incrementally from single atoms.
fn subset_neighbors(single: &[u64]) -> Vec<u64> {
    let mut nbr = vec![0u64; 1 << single.len()];
    for mask in 1usize..nbr.len() {
        nbr[mask] = nbr[mask & (mask - 1)] | single[mask.trailing_zeros() as usize];
    }
    nbr
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Families {
    Both,
    MuOnly,
}

struct DiscretePair<T> {
    mu: DiscreteMeasure<T>,
    nu: DiscreteMeasure<T>,
    dist: Vec<Vec<T>>,
    mu_mass: MaskMass<T>,
    nu_mass: MaskMass<T>,
}

impl<T: Scalar> DiscretePair<T> {
    fn new(mu: DiscreteMeasure<T>, nu: DiscreteMeasure<T>) -> Result<Self> {
        mu.check_same_space(&nu)?;
        let dist = (0..mu.len())
            .map(|i| (0..nu.len()).map(|j| mu.atom_distance(i, &nu, j)).collect())
            .collect();
        let mu_mass = MaskMass::new(mu.weights());
        let nu_mass = MaskMass::new(nu.weights());
        Ok(Self {
            mu,
            nu,
            dist,
            mu_mass,
            nu_mass,
        })
    }

    fn critical(&self) -> Vec<T> {
        let mut c: Vec<T> = self.dist.iter().flatten().cloned().collect();
        sort_dedup(&mut c);
        c
    }

    /// `src(A) − dst(A^ε)` for every nonempty `A` on one side.
    fn side_values(&self, eps: &T, side: Side, out: &mut Vec<T>) {
        let (m, n) = (self.mu.len(), self.nu.len());
        let (src, dst, rows, cols) = match side {
            Side::Mu => (&self.mu_mass, &self.nu_mass, m, n),
            Side::Nu => (&self.nu_mass, &self.mu_mass, n, m),
        };
        let single: Vec<u64> = (0..rows)
            .map(|i| {
                (0..cols).fold(0u64, |acc, j| {
                    let d = match side {
                        Side::Mu => &self.dist[i][j],
                        Side::Nu => &self.dist[j][i],
                    };
                    if d < eps {
                        acc | 1 << j
                    } else {
                        acc
                    }
                })
            })
            .collect();
        let nbr = subset_neighbors(&single);
        for (mask, &nb) in nbr.iter().enumerate().skip(1) {
            out.push(src.get(mask as u64) - dst.get(nb));
        }
    }

    fn values(&self, eps: &T, families: Families) -> Vec<T> {
        let mut out = Vec::new();
        self.side_values(eps, Side::Mu, &mut out);
        if families == Families::Both {
            self.side_values(eps, Side::Nu, &mut out);
        }
        out
    }

    fn witness(&self, index: usize, eps: &T) -> Witness<T> {
        let mu_count = (1usize << self.mu.len()) - 1;
        let (side, mask) = if index < mu_count {
            (Side::Mu, index + 1)
        } else {
            (Side::Nu, index - mu_count + 1)
        };
        let set = match side {
            Side::Mu => self.mu.subset(mask as u64),
            Side::Nu => self.nu.subset(mask as u64),
        };
        Witness {
            side,
            set: Set::Points(set),
            eps: eps.clone(),
        }
    }
}

struct MixedPair<T> {
    discrete: DiscreteMeasure<T>,
    atoms: Vec<T>,
    general: PiecewiseCdf<T>,
    /// The side the discrete measure plays.
    discrete_side: Side,
}

impl<T: Scalar> MixedPair<T> {
    fn critical(&self) -> Vec<T> {
        let mut c = Vec::new();
        for a in &self.atoms {
            for b in self.general.breakpoints() {
                c.push((a.clone() - b.clone()).abs());
            }
            for b in &self.atoms {
                let gap = (a.clone() - b.clone()).abs();
                c.push(gap.half());
                c.push(gap);
            }
        }
        sort_dedup(&mut c);
        c
    }

    fn pick(&self, mask: usize) -> Vec<T> {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect()
    }

    fn discrete_value(&self, mask: usize, eps: &T) -> T {
        let a = self.pick(mask);
        let nb = PointSet::line_neighborhood(&a, eps).expect("positive eps");
        let own = self
            .discrete
            .mass_of_intervals(&IntervalUnion::from_points(&a))
            .expect("line");
        own - self.general.mass(&nb)
    }

    fn complement_set(&self, mask: usize, eps: &T) -> IntervalUnion<T> {
        PointSet::line_neighborhood(&self.pick(mask), eps)
            .expect("positive eps")
            .complement()
    }

    fn general_value(&self, mask: usize, eps: &T) -> T {
        let c = self.complement_set(mask, eps);
        let nb = c.eps_neighborhood(eps).expect("positive eps");
        self.general.mass(&c) - self.discrete.mass_of_intervals(&nb).expect("line")
    }

    fn uses_discrete_family(&self, families: Families) -> bool {
        families == Families::Both || self.discrete_side == Side::Mu
    }

    fn uses_general_family(&self, families: Families) -> bool {
        families == Families::Both || self.discrete_side == Side::Nu
    }

    fn values(&self, eps: &T, families: Families) -> Vec<T> {
        let count = 1usize << self.atoms.len();
        let mut out = Vec::new();
        if self.uses_discrete_family(families) {
            out.extend((1..count).map(|m| self.discrete_value(m, eps)));
        }
        if self.uses_general_family(families) {
            out.extend((1..count).map(|m| self.general_value(m, eps)));
        }
        out
    }

    fn witness(&self, index: usize, eps: &T, families: Families) -> Witness<T> {
        let per = (1usize << self.atoms.len()) - 1;
        let discrete_first = self.uses_discrete_family(families);
        if discrete_first && index < per {
            Witness {
                side: self.discrete_side,
                set: Set::Points(PointSet::line(self.pick(index + 1))),
                eps: eps.clone(),
            }
        } else {
            let mask = if discrete_first { index - per + 1 } else { index + 1 };
            Witness {
                side: self.discrete_side.flip(),
                set: Set::Intervals(self.complement_set(mask, eps)),
                eps: eps.clone(),
            }
        }
    }
}

enum Pair<T> {
    Discrete(DiscretePair<T>),
    Mixed(MixedPair<T>),
}

impl<T: Scalar> Pair<T> {
    fn new(mu: &Law<T>, nu: &Law<T>, cap: usize) -> Result<Self> {
        let pair = match (mu.discrete(), nu.discrete()) {
            (Some(a), Some(b)) => {
                let size = a.len() + b.len();
                if size > cap.min(40) {
                    return Err(Error::CapacityExceeded { size, cap });
                }
                Pair::Discrete(DiscretePair::new(a, b)?)
            }
            (Some(d), None) | (None, Some(d)) => {
                let discrete_side = if mu.discrete().is_some() { Side::Mu } else { Side::Nu };
                let general = match discrete_side {
                    Side::Mu => nu.cdf()?,
                    Side::Nu => mu.cdf()?,
                };
                let atoms = d.line_atoms().ok_or(Error::SpaceMismatch)?.to_vec();
                if atoms.len() > cap.min(24) {
                    return Err(Error::CapacityExceeded { size: atoms.len(), cap });
                }
                Pair::Mixed(MixedPair {
                    discrete: d,
                    atoms,
                    general,
                    discrete_side,
                })
            }
            (None, None) => {
                return Err(Error::Unsupported(
                    "Prohorov distance between two laws with continuous parts".into(),
                ))
            }
        };
        Ok(pair)
    }

    fn critical(&self) -> Vec<T> {
        match self {
            Pair::Discrete(p) => p.critical(),
            Pair::Mixed(p) => p.critical(),
        }
    }

    fn values(&self, eps: &T, families: Families) -> Vec<T> {
        match self {
            Pair::Discrete(p) => p.values(eps, families),
            Pair::Mixed(p) => p.values(eps, families),
        }
    }

    fn witness(&self, index: usize, eps: &T, families: Families) -> Witness<T> {
        match self {
            Pair::Discrete(p) => p.witness(index, eps),
            Pair::Mixed(p) => p.witness(index, eps, families),
        }
    }

    fn report(&self, families: Families) -> DistanceReport<T> {
        let critical = self.critical();
        let frontier: Frontier<T> = infimum(&critical, |e| self.values(e, families));
        let witness = match (frontier.binding, &frontier.probe) {
            (Some(i), Some(p)) => Some(self.witness(i, p, families)),
            _ => None,
        };
        let upper = if frontier.attained {
            frontier.value.clone()
        } else {
            let next = critical
                .iter()
                .find(|c| **c > frontier.value)
                .cloned()
                .unwrap_or_else(|| frontier.value.clone() + T::one());
            midpoint(&frontier.value, &next)
        };
        let ok = self.values(&upper, families).iter().all(|v| *v <= upper);
        DistanceReport {
            value: frontier.value,
            attained: frontier.attained,
            witness,
            feasible_at: ok.then_some(upper),
            coupling: None,
        }
    }
}

/// Two-sided Prohorov distance by exhaustive enumeration.
pub fn prohorov_bruteforce<T: Scalar>(mu: &Law<T>, nu: &Law<T>) -> Result<DistanceReport<T>> {
    prohorov_bruteforce_with_cap(mu, nu, DEFAULT_ENUMERATION_CAP)
}

pub fn prohorov_bruteforce_with_cap<T: Scalar>(mu: &Law<T>, nu: &Law<T>, cap: usize) -> Result<DistanceReport<T>> {
    Ok(Pair::new(mu, nu, cap)?.report(Families::Both))
}

/// Prohorov distance from the `μ(A) ≤ ν(A^ε) + ε` family alone.
pub fn prohorov_onesided<T: Scalar>(mu: &Law<T>, nu: &Law<T>) -> Result<DistanceReport<T>> {
    prohorov_onesided_with_cap(mu, nu, DEFAULT_ENUMERATION_CAP)
}

pub fn prohorov_onesided_with_cap<T: Scalar>(mu: &Law<T>, nu: &Law<T>, cap: usize) -> Result<DistanceReport<T>> {
    Ok(Pair::new(mu, nu, cap)?.report(Families::MuOnly))
}

/// Checks both Prohorov inequalities at `eps`.
///
/// For two finitely supported measures this enumerates every subset of the
/// combined support, including points outside either support, and never
/// consults the reduction used by the distance computation. The mixed case
/// checks the two exhaustive families described in the module docs.
pub fn prohorov_feasible<T: Scalar>(mu: &Law<T>, nu: &Law<T>, eps: &T) -> Result<Feasibility<T>> {
    prohorov_feasible_with_cap(mu, nu, eps, DEFAULT_ENUMERATION_CAP)
}

pub fn prohorov_feasible_with_cap<T: Scalar>(mu: &Law<T>, nu: &Law<T>, eps: &T, cap: usize) -> Result<Feasibility<T>> {
    crate::measures::check_eps(eps)?;
    if let (Some(a), Some(b)) = (mu.discrete(), nu.discrete()) {
        return combined_feasible(&a, &b, eps, cap);
    }
    let pair = Pair::new(mu, nu, cap)?;
    let values = pair.values(eps, Families::Both);
    Ok(match values.iter().position(|v| v > eps) {
        Some(i) => Feasibility::Violated(pair.witness(i, eps, Families::Both)),
        None => Feasibility::Feasible,
    })
}

fn combined_feasible<T: Scalar>(
    mu: &DiscreteMeasure<T>,
    nu: &DiscreteMeasure<T>,
    eps: &T,
    cap: usize,
) -> Result<Feasibility<T>> {
    mu.check_same_space(nu)?;
    // union of supports, with each measure's weight on it (0 off support)
    enum Pts<T> {
        Line(Vec<T>),
        Idx(Vec<usize>),
    }
    let pts = match (mu.atoms(), nu.atoms()) {
        (Atoms::Line(a), Atoms::Line(b)) => {
            let mut u: Vec<T> = a.iter().chain(b).cloned().collect();
            sort_dedup(&mut u);
            Pts::Line(u)
        }
        (Atoms::Points(a), Atoms::Points(b)) => {
            let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
            u.sort_unstable();
            u.dedup();
            Pts::Idx(u)
        }
        _ => return Err(Error::SpaceMismatch),
    };
    let size = match &pts {
        Pts::Line(u) => u.len(),
        Pts::Idx(u) => u.len(),
    };
    if size > cap.min(30) {
        return Err(Error::CapacityExceeded { size, cap });
    }
    let weight_on = |m: &DiscreteMeasure<T>| -> Vec<T> {
        match (&pts, m.atoms()) {
            (Pts::Line(u), Atoms::Line(a)) => u
                .iter()
                .map(|x| {
                    a.iter()
                        .position(|y| y == x)
                        .map_or(T::zero(), |i| m.weights()[i].clone())
                })
                .collect(),
            (Pts::Idx(u), Atoms::Points(a)) => u
                .iter()
                .map(|x| {
                    a.iter()
                        .position(|y| y == x)
                        .map_or(T::zero(), |i| m.weights()[i].clone())
                })
                .collect(),
            _ => unreachable!(),
        }
    };
    let (wm, wn) = (weight_on(mu), weight_on(nu));
    let distance = |i: usize, j: usize| -> T {
        match (&pts, mu.space()) {
            (Pts::Line(u), _) => (u[i].clone() - u[j].clone()).abs(),
            (Pts::Idx(u), Space::Finite(fs)) => fs.distance(u[i], u[j]).clone(),
            _ => unreachable!(),
        }
    };
    let single: Vec<u64> = (0..size)
        .map(|i| {
            (0..size)
                .filter(|&j| distance(i, j) < *eps)
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect();
    let (mass_mu, mass_nu) = (MaskMass::new(&wm), MaskMass::new(&wn));
    let mut nbr = vec![0u64; 1 << size];
    for mask in 1usize..nbr.len() {
        nbr[mask] = nbr[mask & (mask - 1)] | single[mask.trailing_zeros() as usize];
        let (a, nb) = (mask as u64, nbr[mask]);
        let side = if mass_mu.get(a) > mass_nu.get(nb) + eps.clone() {
            Some(Side::Mu)
        } else if mass_nu.get(a) > mass_mu.get(nb) + eps.clone() {
            Some(Side::Nu)
        } else {
            None
        };
        if let Some(side) = side {
            let set = match &pts {
                Pts::Line(u) => {
                    PointSet::line((0..size).filter(|i| mask >> i & 1 == 1).map(|i| u[i].clone()).collect())
                }
                Pts::Idx(u) => PointSet::finite((0..size).filter(|i| mask >> i & 1 == 1).map(|i| u[i]).collect()),
            };
            return Ok(Feasibility::Violated(Witness {
                side,
                set: Set::Points(set),
                eps: eps.clone(),
            }));
        }
    }
    Ok(Feasibility::Feasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::levy_distance;
    use crate::measures::FiniteMetricSpace;
    use crate::testutil::{arb_measure, q, r};
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;
    use std::sync::Arc;

    type L = Law<BigRational>;

    fn uniform() -> L {
        PiecewiseCdf::new(vec![r("0"), r("1")], vec![r("0"), r("1")], vec![r("1")])
            .unwrap()
            .into()
    }

    fn nu() -> L {
        DiscreteMeasure::on_line(vec![r("0"), r("1/4")], vec![r("2/3"), r("1/3")])
            .unwrap()
            .into()
    }

    fn delta(a: &str) -> L {
        DiscreteMeasure::point_mass(r(a)).into()
    }

    fn sym_pair() -> L {
        DiscreteMeasure::on_line(vec![r("-1"), r("1")], vec![r("1/2"), r("1/2")])
            .unwrap()
            .into()
    }

    /// Independent oracle for discrete pairs on the line: scans ε over a
    /// grid and checks every subset of the combined support with plain set
    /// arithmetic.
    fn grid_prohorov(mu: &L, nu: &L, mesh: i64) -> BigRational {
        (1..=mesh)
            .map(|k| q(k, mesh))
            .find(|e| prohorov_feasible(mu, nu, e).unwrap().is_feasible())
            .unwrap()
    }

    #[test]
    fn worked_example() {
        let rep = prohorov_bruteforce(&uniform(), &nu()).unwrap();
        assert_eq!(rep.value, r("3/8"));
        assert!(rep.attained);
        let w = rep.witness.clone().unwrap();
        assert!(w.violates(&uniform(), &nu()).unwrap());
        assert_eq!(rep.feasible_at, Some(r("3/8")));
        // the binding set is {0, 1/4} from the discrete side
        assert_eq!(w.side, Side::Nu);
        assert_eq!(w.set, Set::Points(PointSet::line(vec![r("0"), r("1/4")])));
        // either orientation, and the one-sided families on their own
        assert_eq!(prohorov_bruteforce(&nu(), &uniform()).unwrap().value, r("3/8"));
        assert_eq!(prohorov_onesided(&uniform(), &nu()).unwrap().value, r("3/8"));
        assert_eq!(prohorov_onesided(&nu(), &uniform()).unwrap().value, r("3/8"));
    }

    #[test]
    fn worked_example_feasibility() {
        assert!(prohorov_feasible(&uniform(), &nu(), &r("3/8")).unwrap().is_feasible());
        let Feasibility::Violated(w) = prohorov_feasible(&uniform(), &nu(), &r("1/3")).unwrap() else {
            panic!("expected a violation below 3/8")
        };
        assert!(w.violates(&uniform(), &nu()).unwrap());
    }

    #[test]
    fn worked_example_single_set_thresholds() {
        // least ε for {0} is 1/3 and for {1/4} is 1/9
        let c1 = Witness {
            side: Side::Nu,
            set: Set::Points(PointSet::line(vec![r("0")])),
            eps: r("1/3"),
        };
        assert!(!c1.violates(&uniform(), &nu()).unwrap());
        assert!(c1.violates_at(&uniform(), &nu(), &r("332/1000")).unwrap());
        let c2 = Witness {
            side: Side::Nu,
            set: Set::Points(PointSet::line(vec![r("1/4")])),
            eps: r("1/9"),
        };
        assert!(!c2.violates(&uniform(), &nu()).unwrap());
        assert!(c2.violates_at(&uniform(), &nu(), &r("1/10")).unwrap());
    }

    #[test]
    fn symmetric_pair_against_point_mass() {
        let rep = prohorov_bruteforce(&delta("0"), &sym_pair()).unwrap();
        assert_eq!(rep.value, r("1"));
        assert!(rep.attained);
        let w = rep.witness.unwrap();
        assert_eq!(w.set, Set::Points(PointSet::line(vec![r("0")])));
        assert_eq!(w.side, Side::Mu);
        assert_eq!(grid_prohorov(&delta("0"), &sym_pair(), 16), r("1"));
        let Feasibility::Violated(w) = prohorov_feasible(&delta("0"), &sym_pair(), &r("1/2")).unwrap() else {
            panic!()
        };
        assert_eq!(w.set, Set::Points(PointSet::line(vec![r("0")])));
        // Lévy is strictly smaller on this pair
        let levy = levy_distance(&delta("0").cdf().unwrap(), &sym_pair().cdf().unwrap());
        assert_eq!(levy.value, r("1/2"));
    }

    #[test]
    fn point_masses_not_attained() {
        let rep = prohorov_bruteforce(&delta("0"), &delta("1/2")).unwrap();
        assert_eq!(rep.value, r("1/2"));
        assert!(!rep.attained);
        assert!(!prohorov_feasible(&delta("0"), &delta("1/2"), &r("1/2"))
            .unwrap()
            .is_feasible());
        assert_eq!(grid_prohorov(&delta("0"), &delta("1/2"), 64), q(33, 64));
        let one = prohorov_onesided(&delta("0"), &delta("1/2")).unwrap();
        assert_eq!(one.value, r("1/2"));
        assert_eq!(prohorov_onesided(&delta("1/2"), &delta("0")).unwrap().value, r("1/2"));
    }

    #[test]
    fn identical_measures() {
        let rep = prohorov_bruteforce(&nu(), &nu()).unwrap();
        assert_eq!(rep.value, r("0"));
        assert!(rep.witness.is_none());
        assert!(prohorov_feasible(&nu(), &nu(), &r("1/1000")).unwrap().is_feasible());
        assert_eq!(
            prohorov_bruteforce(&uniform(), &uniform()).unwrap_err(),
            Error::Unsupported("Prohorov distance between two laws with continuous parts".into())
        );
    }

    #[test]
    fn enumeration_cap() {
        let n = 11;
        let m: L = DiscreteMeasure::on_line((0..n).map(|i| q(i, 1)).collect(), vec![q(1, n); n as usize])
            .unwrap()
            .into();
        let k: L = DiscreteMeasure::on_line((0..n).map(|i| q(2 * i + 1, 2)).collect(), vec![q(1, n); n as usize])
            .unwrap()
            .into();
        assert!(matches!(
            prohorov_bruteforce(&m, &k),
            Err(Error::CapacityExceeded { size: 22, cap: 20 })
        ));
        assert!(matches!(
            prohorov_feasible(&m, &k, &r("1")),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn every_subset_counts_as_closed() {
        // On a finite space the closed sets are all subsets; checking every
        // subset of the whole space agrees with the support-based routine.
        let d = |a: i64| q(a, 1);
        let space = Arc::new(
            FiniteMetricSpace::new(vec![
                vec![d(0), d(1), d(2), d(3)],
                vec![d(1), d(0), d(1), d(2)],
                vec![d(2), d(1), d(0), d(1)],
                vec![d(3), d(2), d(1), d(0)],
            ])
            .unwrap(),
        );
        let mu: L = DiscreteMeasure::on_space(space.clone(), vec![0], vec![d(1)])
            .unwrap()
            .into();
        let nu: L = DiscreteMeasure::on_space(space.clone(), vec![2, 3], vec![q(1, 2), q(1, 2)])
            .unwrap()
            .into();
        for k in 1..=12 {
            let eps = q(k, 8);
            let all_subsets = (1u32..16).all(|mask| {
                let set: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
                let w = |side| Witness {
                    side,
                    set: Set::Points(PointSet::finite(set.clone())),
                    eps: eps.clone(),
                };
                !w(Side::Mu).violates(&mu, &nu).unwrap() && !w(Side::Nu).violates(&mu, &nu).unwrap()
            });
            assert_eq!(
                all_subsets,
                prohorov_feasible(&mu, &nu, &eps).unwrap().is_feasible(),
                "eps {eps}"
            );
        }
        let rep = prohorov_bruteforce(&mu, &nu).unwrap();
        // {0} needs ν within ε: nearest atom at distance 2
        assert_eq!(rep.value, d(1));
    }

    #[test]
    fn mixed_route_agrees_with_discrete_route() {
        use proptest::strategy::ValueTree;
        use proptest::test_runner::TestRunner;
        let mut runner = TestRunner::deterministic();
        for _ in 0..16 {
            let a = arb_measure(4).new_tree(&mut runner).unwrap().current();
            let b = arb_measure(4).new_tree(&mut runner).unwrap().current();
            let discrete = prohorov_bruteforce(&a.clone().into(), &b.clone().into()).unwrap();
            let mixed = MixedPair {
                atoms: a.line_atoms().unwrap().to_vec(),
                discrete: a.clone(),
                general: b.cdf().unwrap(),
                discrete_side: Side::Mu,
            };
            let rep = Pair::Mixed(mixed).report(Families::Both);
            assert_eq!(rep.value, discrete.value);
            assert_eq!(rep.attained, discrete.attained);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn one_sided_equals_two_sided(a in arb_measure(4), b in arb_measure(4)) {
            let (a, b): (L, L) = (a.into(), b.into());
            let two = prohorov_bruteforce(&a, &b).unwrap().value;
            prop_assert_eq!(&prohorov_onesided(&a, &b).unwrap().value, &two);
            prop_assert_eq!(&prohorov_onesided(&b, &a).unwrap().value, &two);
        }

        #[test]
        fn metric_axioms(a in arb_measure(3), b in arb_measure(3), c in arb_measure(3)) {
            let (a, b, c): (L, L, L) = (a.into(), b.into(), c.into());
            let ab = prohorov_bruteforce(&a, &b).unwrap().value;
            prop_assert_eq!(&ab, &prohorov_bruteforce(&b, &a).unwrap().value);
            prop_assert_eq!(ab.is_zero(), a == b);
            let ac = prohorov_bruteforce(&a, &c).unwrap().value;
            let bc = prohorov_bruteforce(&b, &c).unwrap().value;
            prop_assert!(ac <= ab.clone() + bc);
        }

        #[test]
        fn certificates_hold(a in arb_measure(4), b in arb_measure(4)) {
            let (a, b): (L, L) = (a.into(), b.into());
            let rep = prohorov_bruteforce(&a, &b).unwrap();
            prop_assert_eq!(rep.attained, rep.value > BigRational::from_int(0)
                && prohorov_feasible(&a, &b, &rep.value).unwrap().is_feasible());
            let up = rep.feasible_at.clone().unwrap();
            prop_assert!(up >= rep.value);
            prop_assert!(prohorov_feasible(&a, &b, &up).unwrap().is_feasible());
            if let Some(w) = &rep.witness {
                prop_assert!(w.eps < rep.value);
                prop_assert!(w.violates(&a, &b).unwrap());
                // also violated just below the value
                let below = rep.value.clone() - q(1, 10_007);
                if below > BigRational::from_int(0) {
                    prop_assert!(w.violates_at(&a, &b, &below).unwrap());
                }
            } else {
                prop_assert!(rep.value.is_zero());
            }
        }

        #[test]
        fn matches_grid_oracle(a in arb_measure(3), b in arb_measure(3)) {
            let (a, b): (L, L) = (a.into(), b.into());
            let exact = prohorov_bruteforce(&a, &b).unwrap().value;
            let grid = grid_prohorov(&a, &b, 48);
            prop_assert!(grid >= exact && grid - &exact <= q(1, 48));
        }

        #[test]
        fn levy_below_prohorov(a in arb_measure(4), b in arb_measure(4)) {
            let l = levy_distance(&a.cdf().unwrap(), &b.cdf().unwrap()).value;
            let p = prohorov_bruteforce(&a.into(), &b.into()).unwrap().value;
            prop_assert!(l <= p);
        }

        #[test]
        fn mixed_certificates(b in arb_measure(3), lo in -4i64..4, width in 1i64..4) {
            let f: L = PiecewiseCdf::new(vec![q(lo, 2), q(lo + width, 2)], vec![q(0, 1), q(1, 1)], vec![q(2, width)])
                .unwrap()
                .into();
            let b: L = b.into();
            let rep = prohorov_bruteforce(&f, &b).unwrap();
            prop_assert_eq!(&prohorov_onesided(&f, &b).unwrap().value, &rep.value);
            prop_assert_eq!(&prohorov_onesided(&b, &f).unwrap().value, &rep.value);
            prop_assert!(prohorov_feasible(&f, &b, rep.feasible_at.as_ref().unwrap()).unwrap().is_feasible());
            if let Some(w) = &rep.witness {
                prop_assert!(w.violates(&f, &b).unwrap());
            }
            let l = levy_distance(&f.cdf().unwrap(), &b.cdf().unwrap()).value;
            prop_assert!(l <= rep.value);
        }
    }
}

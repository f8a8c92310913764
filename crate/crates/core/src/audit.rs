//! Seeded random instances and audits of metric relations.
//!
//! Atoms lie on the grid `lo + k/denom` and weights are positive multiples
//! of `1/denom`, so everything downstream stays exact and small.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::levy::{levy_distance, Distance};
use crate::measures::{DiscreteMeasure, Law, PiecewiseCdf};
use crate::prohorov::{prohorov_bruteforce, DistanceReport};
use crate::scalar::Scalar;
use crate::transport::prohorov_via_flow;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub seed: u64,
    pub min_atoms: usize,
    pub max_atoms: usize,
    /// Atoms lie in `[coord_lo, coord_hi]`.
    pub coord_lo: i64,
    pub coord_hi: i64,
    /// Common denominator of atoms and weights.
    pub denom: i64,
}

impl Default for InstanceSpec {
    fn default() -> Self {
        Self {
            seed: 0,
            min_atoms: 1,
            max_atoms: 4,
            coord_lo: -2,
            coord_hi: 2,
            denom: 8,
        }
    }
}

impl InstanceSpec {
    pub fn validate(&self) -> Result<()> {
        if self.min_atoms == 0 || self.min_atoms > self.max_atoms {
            return Err(Error::invalid(
                "atoms",
                format!("need 1 <= min <= max, got {}..{}", self.min_atoms, self.max_atoms),
            ));
        }
        if self.denom < 1 {
            return Err(Error::invalid(
                "denom",
                format!("must be at least 1, got {}", self.denom),
            ));
        }
        if self.coord_lo > self.coord_hi {
            return Err(Error::invalid("coordinates", "empty coordinate range"));
        }
        let grid = (self.coord_hi - self.coord_lo) as u64 * self.denom as u64 + 1;
        if self.max_atoms as u64 > grid {
            return Err(Error::invalid(
                "atoms",
                format!("{} atoms do not fit on a grid of {grid} points", self.max_atoms),
            ));
        }
        if self.max_atoms as i64 > self.denom {
            return Err(Error::invalid(
                "atoms",
                format!(
                    "{} positive weights cannot be multiples of 1/{}",
                    self.max_atoms, self.denom
                ),
            ));
        }
        Ok(())
    }
}

/// Deterministic stream of random measures for one spec.
pub struct InstanceGenerator {
    spec: InstanceSpec,
    rng: ChaCha8Rng,
}

impl InstanceGenerator {
    pub fn new(spec: InstanceSpec) -> Result<Self> {
        spec.validate()?;
        let rng = ChaCha8Rng::seed_from_u64(spec.seed);
        Ok(Self { spec, rng })
    }

    pub fn measure<T: Scalar>(&mut self) -> DiscreteMeasure<T> {
        let s = &self.spec;
        let k = self.rng.gen_range(s.min_atoms..=s.max_atoms);
        let grid = ((s.coord_hi - s.coord_lo) * s.denom + 1) as usize;
        let mut idx = sample(&mut self.rng, grid, k).into_vec();
        idx.sort_unstable();
        let atoms = idx
            .iter()
            .map(|&i| T::from_ratio(s.coord_lo * s.denom + i as i64, s.denom))
            .collect();
        let mut cuts: Vec<i64> = sample(&mut self.rng, (s.denom - 1) as usize, k - 1)
            .into_iter()
            .map(|c| c as i64 + 1)
            .collect();
        cuts.sort_unstable();
        cuts.insert(0, 0);
        cuts.push(s.denom);
        let weights = cuts.windows(2).map(|w| T::from_ratio(w[1] - w[0], s.denom)).collect();
        DiscreteMeasure::on_line(atoms, weights).expect("generated measures are valid")
    }
}

/// Two measures drawn from a fresh generator seeded by `spec.seed`.
pub fn random_instance<T: Scalar>(spec: &InstanceSpec) -> Result<(DiscreteMeasure<T>, DiscreteMeasure<T>)> {
    let mut g = InstanceGenerator::new(spec.clone())?;
    Ok((g.measure(), g.measure()))
}

/// Exact Prohorov distance, by enumeration for small pairs and by flow
/// otherwise.
pub fn prohorov_auto<T: Scalar>(mu: &Law<T>, nu: &Law<T>) -> Result<DistanceReport<T>> {
    match (mu.discrete(), nu.discrete()) {
        (Some(a), Some(b)) if a.len() + b.len() > 12 => prohorov_via_flow(mu, nu),
        _ => prohorov_bruteforce(mu, nu),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Levy,
    Prohorov,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Levy => "levy",
            Metric::Prohorov => "prohorov",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AxiomViolation<T> {
    pub trial: usize,
    pub metric: Metric,
    pub axiom: &'static str,
    pub measures: [DiscreteMeasure<T>; 3],
    /// d(a, b), d(b, c), d(a, c), d(b, a)
    pub values: [T; 4],
}

#[derive(Debug, Clone)]
pub struct AxiomReport<T> {
    pub trials: usize,
    pub checks: usize,
    pub violations: Vec<AxiomViolation<T>>,
}

fn metric_value<T: Scalar>(metric: Metric, a: &DiscreteMeasure<T>, b: &DiscreteMeasure<T>) -> Result<T> {
    Ok(match metric {
        Metric::Levy => levy_distance(&a.cdf()?, &b.cdf()?).value,
        Metric::Prohorov => prohorov_auto(&a.clone().into(), &b.clone().into())?.value,
    })
}

/// Checks symmetry, identity of indiscernibles and the triangle inequality
/// for both metrics on `trials` random triples.
pub fn check_triple<T: Scalar>(
    trial: usize,
    triple: &[DiscreteMeasure<T>; 3],
    report: &mut AxiomReport<T>,
) -> Result<()> {
    let [a, b, c] = triple;
    for metric in [Metric::Levy, Metric::Prohorov] {
        let ab = metric_value(metric, a, b)?;
        let ba = metric_value(metric, b, a)?;
        let bc = metric_value(metric, b, c)?;
        let ac = metric_value(metric, a, c)?;
        let aa = metric_value(metric, a, a)?;
        let checks: [(&'static str, bool); 4] = [
            ("symmetry", ab == ba),
            ("identity", aa.is_zero()),
            ("indiscernibles", ab.is_zero() == (a == b)),
            ("triangle", ac <= ab.clone() + bc.clone()),
        ];
        for (axiom, ok) in checks {
            report.checks += 1;
            if !ok {
                report.violations.push(AxiomViolation {
                    trial,
                    metric,
                    axiom,
                    measures: triple.clone(),
                    values: [ab.clone(), bc.clone(), ac.clone(), ba.clone()],
                });
            }
        }
    }
    Ok(())
}

pub fn metric_axiom_fuzz<T: Scalar>(spec: &InstanceSpec, trials: usize) -> Result<AxiomReport<T>> {
    if trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    let mut g = InstanceGenerator::new(spec.clone())?;
    let mut report = AxiomReport {
        trials,
        checks: 0,
        violations: Vec::new(),
    };
    for trial in 1..=trials {
        let triple = [g.measure(), g.measure(), g.measure()];
        check_triple(trial, &triple, &mut report)?;
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct GapRecord<T> {
    pub label: String,
    /// Trial number for random instances, `None` for the fixed ones.
    pub trial: Option<usize>,
    pub mu: Law<T>,
    pub nu: Law<T>,
    pub levy: Distance<T>,
    pub prohorov: DistanceReport<T>,
    /// `π − ℓ`; never negative if the Huber inequality holds.
    pub gap: T,
}

fn record<T: Scalar>(label: String, trial: Option<usize>, mu: Law<T>, nu: Law<T>) -> Result<GapRecord<T>> {
    let levy = levy_distance(&mu.cdf()?, &nu.cdf()?);
    let prohorov = prohorov_auto(&mu, &nu)?;
    let gap = prohorov.value.clone() - levy.value.clone();
    Ok(GapRecord {
        label,
        trial,
        mu,
        nu,
        levy,
        prohorov,
        gap,
    })
}

/// A point mass against a symmetric two-point law: ℓ = 1/2 but π = 1.
pub fn curated_pair<T: Scalar>() -> (Law<T>, Law<T>) {
    let mu = DiscreteMeasure::point_mass(T::zero());
    let nu = DiscreteMeasure::on_line(vec![-T::one(), T::one()], vec![T::one().half(), T::one().half()])
        .expect("valid measure");
    (mu.into(), nu.into())
}

/// Uniform law on `[0, 1]` against `2/3 δ_0 + 1/3 δ_{1/4}`: ℓ = π = 3/8.
pub fn uniform_pair<T: Scalar>() -> (Law<T>, Law<T>) {
    let f = PiecewiseCdf::new(vec![T::zero(), T::one()], vec![T::zero(), T::one()], vec![T::one()])
        .expect("valid distribution function");
    let nu = DiscreteMeasure::on_line(
        vec![T::zero(), T::from_ratio(1, 4)],
        vec![T::from_ratio(2, 3), T::from_ratio(1, 3)],
    )
    .expect("valid measure");
    (f.into(), nu.into())
}

/// Computes ℓ and π on `trials` random pairs plus the two fixed pairs,
/// sorted by gap, largest first (ties keep generation order).
pub fn levy_prohorov_gap_search<T: Scalar>(spec: &InstanceSpec, trials: usize) -> Result<Vec<GapRecord<T>>> {
    if trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    let mut g = InstanceGenerator::new(spec.clone())?;
    let mut records = Vec::with_capacity(trials + 2);
    for trial in 1..=trials {
        let (a, b) = (g.measure(), g.measure());
        records.push(record(
            format!("random trial {trial}"),
            Some(trial),
            a.into(),
            b.into(),
        )?);
    }
    let (mu, nu) = curated_pair();
    records.push(record("point mass vs symmetric two-point law".into(), None, mu, nu)?);
    let (mu, nu) = uniform_pair();
    records.push(record("uniform on [0, 1] vs two-atom law".into(), None, mu, nu)?);
    records.sort_by(|a, b| crate::scalar::cmp(&b.gap, &a.gap));
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{q, r};
    use num_rational::BigRational;

    type M = DiscreteMeasure<BigRational>;

    #[test]
    fn deterministic_instances() {
        let spec = InstanceSpec {
            seed: 1,
            min_atoms: 2,
            max_atoms: 2,
            ..Default::default()
        };
        let (a, b): (M, M) = random_instance(&spec).unwrap();
        assert_eq!(random_instance::<BigRational>(&spec).unwrap(), (a.clone(), b.clone()));
        assert_eq!((a.len(), b.len()), (2, 2));
        let other = InstanceSpec { seed: 2, ..spec };
        assert_ne!(random_instance::<BigRational>(&other).unwrap(), (a, b));
    }

    #[test]
    fn point_masses_when_one_atom() {
        let spec = InstanceSpec {
            seed: 5,
            min_atoms: 1,
            max_atoms: 1,
            ..Default::default()
        };
        let (a, b): (M, M) = random_instance(&spec).unwrap();
        assert_eq!((a.len(), b.len()), (1, 1));
        assert_eq!(a.weights()[0], r("1"));
    }

    #[test]
    fn denominator_bound() {
        let spec = InstanceSpec {
            seed: 2,
            denom: 8,
            max_atoms: 5,
            ..Default::default()
        };
        let mut g = InstanceGenerator::new(spec).unwrap();
        for _ in 0..50 {
            let m: M = g.measure();
            for w in m.weights() {
                assert!(*w.denom() <= 8.into());
            }
            for x in m.line_atoms().unwrap() {
                assert!(*x.denom() <= 8.into());
                assert!(*x >= q(-2, 1) && *x <= q(2, 1));
            }
        }
    }

    #[test]
    fn infeasible_specs() {
        let bad = [
            InstanceSpec {
                min_atoms: 0,
                ..Default::default()
            },
            InstanceSpec {
                min_atoms: 3,
                max_atoms: 2,
                ..Default::default()
            },
            InstanceSpec {
                coord_lo: 0,
                coord_hi: 0,
                denom: 2,
                max_atoms: 2,
                ..Default::default()
            },
            InstanceSpec {
                max_atoms: 9,
                ..Default::default()
            },
            InstanceSpec {
                denom: 0,
                ..Default::default()
            },
        ];
        for spec in bad {
            assert!(InstanceGenerator::new(spec).is_err());
        }
    }

    #[test]
    fn axioms_hold() {
        let rep = metric_axiom_fuzz::<BigRational>(
            &InstanceSpec {
                seed: 3,
                ..Default::default()
            },
            100,
        )
        .unwrap();
        assert_eq!(rep.checks, 800);
        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        assert!(metric_axiom_fuzz::<BigRational>(&InstanceSpec::default(), 0).is_err());
    }

    #[test]
    fn degenerate_and_worked_example_triples() {
        let k = M::on_line(vec![r("0"), r("1")], vec![r("1/2"), r("1/2")]).unwrap();
        let mut rep = AxiomReport {
            trials: 1,
            checks: 0,
            violations: Vec::new(),
        };
        check_triple(1, &[k.clone(), k.clone(), k], &mut rep).unwrap();
        assert!(rep.violations.is_empty());
        // triangle through ν with the uniform law on one side
        let (f, nu) = uniform_pair::<BigRational>();
        let d0: Law<BigRational> = M::point_mass(r("0")).into();
        let fd = prohorov_bruteforce(&f, &d0).unwrap().value;
        let fnu = prohorov_bruteforce(&f, &nu).unwrap().value;
        let nud = prohorov_bruteforce(&nu, &d0).unwrap().value;
        assert!(fd <= fnu + nud);
    }

    #[test]
    fn gap_search() {
        let spec = InstanceSpec {
            seed: 7,
            ..Default::default()
        };
        let recs = levy_prohorov_gap_search::<BigRational>(&spec, 30).unwrap();
        assert_eq!(recs.len(), 32);
        assert!(recs.iter().all(|r| r.gap >= BigRational::from_int(0)));
        assert!(recs.windows(2).all(|w| w[0].gap >= w[1].gap));
        let curated = recs.iter().find(|r| r.label.starts_with("point mass")).unwrap();
        assert_eq!(
            (curated.levy.value.clone(), curated.prohorov.value.clone()),
            (r("1/2"), r("1"))
        );
        assert_eq!(curated.gap, r("1/2"));
        let worked = recs.iter().find(|r| r.label.starts_with("uniform")).unwrap();
        assert_eq!(worked.gap, r("0"));
        assert_eq!(worked.levy.value, r("3/8"));
        // every π witness still violates slightly below the value
        for rec in &recs {
            if let Some(w) = &rec.prohorov.witness {
                let below = rec.prohorov.value.clone() - q(1, 1_000_003);
                assert!(w.violates_at(&rec.mu, &rec.nu, &below).unwrap());
            }
        }
        // reproducible
        let again = levy_prohorov_gap_search::<BigRational>(&spec, 30).unwrap();
        assert!(recs
            .iter()
            .zip(&again)
            .all(|(a, b)| a.gap == b.gap && a.mu == b.mu && a.nu == b.nu));
    }

    #[test]
    fn equal_measures_have_zero_gap() {
        let m: Law<BigRational> = M::on_line(vec![r("0"), r("1")], vec![r("1/4"), r("3/4")])
            .unwrap()
            .into();
        let rec = record("same".into(), None, m.clone(), m).unwrap();
        assert_eq!(rec.gap, r("0"));
    }
}

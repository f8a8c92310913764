//! The four equivalent weak-convergence conditions, evaluated on a prefix.
//!
//! | condition | family | margin at index n (≤ 0 is good for the first two) |
//! |-----------|--------|---------------------------------------------------|
//! | closed    | closed sets `C`      | `μ_n(C) − μ_0(C)` |
//! | open      | open sets `G`        | `μ_0(G) − μ_n(G)` |
//! | continuity| sets with `μ_0(∂A) = 0` | `|μ_n(A) − μ_0(A)|` |
//! | functions | trapezoids in `[0, 1]` | `|∫f dμ_n − ∫f dμ_0|` |
//!
//! A condition passes when its worst margin over the tail window (the last
//! quarter of the prefix) is at most `tol`.

use crate::error::{Error, Result};
use crate::measures::{Interval, IntervalUnion, Law, PiecewiseCdf};
use crate::scalar::{midpoint, sort_dedup, Scalar};

use super::MeasureSequence;

/// Continuous piecewise-linear bump: 1 on `[c − plateau, c + plateau]`,
/// 0 outside `(c − support, c + support)`, linear in between.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction<T> {
    pub center: T,
    pub plateau: T,
    pub support: T,
}

impl<T: Scalar> TestFunction<T> {
    pub fn new(center: T, plateau: T, support: T) -> Result<Self> {
        if plateau < T::zero() || support <= plateau {
            return Err(Error::invalid("test function", "need 0 <= plateau < support"));
        }
        Ok(Self {
            center,
            plateau,
            support,
        })
    }

    pub fn eval(&self, x: &T) -> T {
        let d = (x.clone() - self.center.clone()).abs();
        if d <= self.plateau {
            T::one()
        } else if d >= self.support {
            T::zero()
        } else {
            (self.support.clone() - d) / (self.support.clone() - self.plateau.clone())
        }
    }

    fn kinks(&self) -> [T; 4] {
        let c = &self.center;
        [
            c.clone() - self.support.clone(),
            c.clone() - self.plateau.clone(),
            c.clone() + self.plateau.clone(),
            c.clone() + self.support.clone(),
        ]
    }
}

impl<T: Scalar> std::fmt::Display for TestFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "bump(center {}, plateau {}, support {})",
            self.center.render(),
            self.plateau.render(),
            self.support.render()
        )
    }
}

/// `∫ f dF`, exact: jumps plus the density part, piece by piece.
pub fn integrate<T: Scalar>(cdf: &PiecewiseCdf<T>, f: &TestFunction<T>) -> T {
    let mut total = T::zero();
    for (x, w) in cdf.jumps() {
        total = total + f.eval(&x) * w;
    }
    let b = cdf.breakpoints();
    for (i, slope) in cdf.slopes().iter().enumerate() {
        if slope.is_zero() {
            continue;
        }
        let (lo, hi) = (&b[i], &b[i + 1]);
        let mut cuts = vec![lo.clone(), hi.clone()];
        cuts.extend(f.kinks().into_iter().filter(|k| k > lo && k < hi));
        sort_dedup(&mut cuts);
        for w in cuts.windows(2) {
            // f is linear on each piece, so the trapezoid rule is exact
            let width = w[1].clone() - w[0].clone();
            total = total + (f.eval(&w[0]) + f.eval(&w[1])) * width * slope.clone() / T::two();
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq)]
pub struct PortmanteauFamilies<T> {
    pub closed: Vec<IntervalUnion<T>>,
    pub open: Vec<IntervalUnion<T>>,
    /// Candidates for the continuity-set condition; members with
    /// `μ_0(∂A) > 0` are excluded when the report is built.
    pub continuity: Vec<IntervalUnion<T>>,
    pub functions: Vec<TestFunction<T>>,
}

impl<T: Scalar> PortmanteauFamilies<T> {
    /// Families built from the atoms and breakpoints of the limit plus two
    /// outer points that cover the support of the tail of `seq` (and lie at
    /// least 1 beyond the limit's points), completed with all midpoints:
    /// singletons of the limit's points, closed and open intervals between
    /// any two of these points, and bumps centred at each of them.
    pub fn defaults(seq: &MeasureSequence<T>, limit: &Law<T>) -> Result<Self> {
        let key = limit.key_points()?;
        let mut lo = key[0].clone() - T::one();
        let mut hi = key[key.len() - 1].clone() + T::one();
        let (start, _) = tail_window(seq.len());
        for m in &seq.items()[start - 1..] {
            let k = m.key_points()?;
            if k[0] < lo {
                lo = k[0].clone();
            }
            if k[k.len() - 1] > hi {
                hi = k[k.len() - 1].clone();
            }
        }
        let mut outer = key.clone();
        outer.push(lo);
        outer.push(hi);
        sort_dedup(&mut outer);
        let mut pts = outer.clone();
        pts.extend(outer.windows(2).map(|w| midpoint(&w[0], &w[1])));
        sort_dedup(&mut pts);

        let one = |iv: Interval<T>| IntervalUnion::new(vec![iv]);
        let mut closed: Vec<IntervalUnion<T>> = key.iter().map(|x| one(Interval::point(x.clone()))).collect();
        let mut open = Vec::new();
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                closed.push(one(Interval::closed(a.clone(), b.clone())));
                open.push(one(Interval::open(a.clone(), b.clone())));
            }
        }
        let mut continuity = closed.clone();
        continuity.extend(open.iter().cloned());
        let gap = pts
            .windows(2)
            .map(|w| w[1].clone() - w[0].clone())
            .reduce(|a, b| if b < a { b } else { a })
            .expect("at least two points");
        let quarter = gap.half().half();
        let functions = pts
            .iter()
            .map(|c| TestFunction::new(c.clone(), quarter.clone(), gap.half()))
            .collect::<Result<_>>()?;
        Ok(Self {
            closed,
            open,
            continuity,
            functions,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Closed,
    Open,
    Continuity,
    Functions,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Closed => "closed",
            Condition::Open => "open",
            Condition::Continuity => "continuity",
            Condition::Functions => "functions",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionVerdict<T> {
    pub condition: Condition,
    /// Descriptions of the members that were evaluated.
    pub family: Vec<String>,
    /// Members left out (continuity sets whose boundary carries limit mass).
    pub excluded: Vec<String>,
    /// Worst margin over the family at each index `1..=N`.
    pub per_index: Vec<T>,
    /// Worst margin over the tail window.
    pub worst_margin: T,
    pub worst_member: Option<String>,
    pub pass: bool,
    /// Members whose tail trace is neither nonincreasing nor nondecreasing.
    pub oscillating: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PortmanteauReport<T> {
    /// Prefix length the verdicts refer to.
    pub prefix_len: usize,
    /// Tail window, inclusive, counting from 1.
    pub window: (usize, usize),
    pub tol: T,
    pub conditions: Vec<ConditionVerdict<T>>,
}

impl<T: Scalar> PortmanteauReport<T> {
    pub fn get(&self, c: Condition) -> &ConditionVerdict<T> {
        self.conditions
            .iter()
            .find(|v| v.condition == c)
            .expect("all four conditions are reported")
    }

    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|v| v.pass)
    }
}

/// Last quarter of a prefix of length `n` (at least one index), inclusive.
fn tail_window(n: usize) -> (usize, usize) {
    (n - (n / 4).max(1) + 1, n)
}

fn monotone<T: Scalar>(trace: &[T]) -> bool {
    trace.windows(2).all(|w| w[0] <= w[1]) || trace.windows(2).all(|w| w[0] >= w[1])
}

/// `traces[k][n]` is the margin of member `k` at index `n + 1`.
fn verdict<T: Scalar>(
    condition: Condition,
    family: Vec<String>,
    excluded: Vec<String>,
    traces: Vec<Vec<T>>,
    window: (usize, usize),
    tol: &T,
    len: usize,
) -> ConditionVerdict<T> {
    let worse = |a: &T, b: &T| b > a;
    let per_index: Vec<T> = (0..len)
        .map(|n| {
            traces
                .iter()
                .map(|t| t[n].clone())
                .reduce(|a, b| if worse(&a, &b) { b } else { a })
                .unwrap_or_else(T::zero)
        })
        .collect();
    let mut worst: Option<(T, usize)> = None;
    for (k, t) in traces.iter().enumerate() {
        for v in &t[window.0 - 1..window.1] {
            if worst.as_ref().is_none_or(|(w, _)| worse(w, v)) {
                worst = Some((v.clone(), k));
            }
        }
    }
    let oscillating = traces
        .iter()
        .zip(&family)
        .filter(|(t, _)| !monotone(&t[window.0 - 1..window.1]))
        .map(|(_, d)| d.clone())
        .collect();
    let (worst_margin, worst_member) = match worst {
        Some((v, k)) => (v, Some(family[k].clone())),
        None => (T::zero(), None),
    };
    ConditionVerdict {
        condition,
        pass: worst_margin <= *tol,
        family,
        excluded,
        per_index,
        worst_margin,
        worst_member,
        oscillating,
    }
}

pub fn portmanteau_report<T: Scalar>(
    seq: &MeasureSequence<T>,
    limit: &Law<T>,
    families: &PortmanteauFamilies<T>,
    tol: &T,
) -> Result<PortmanteauReport<T>> {
    if families.closed.is_empty()
        || families.open.is_empty()
        || families.continuity.is_empty()
        || families.functions.is_empty()
    {
        return Err(Error::invalid("families", "every condition needs at least one member"));
    }
    if !limit.is_line() || seq.items().iter().any(|m| !m.is_line()) {
        return Err(Error::NotOnLine);
    }
    let n = seq.len();
    let window = tail_window(n);

    let mass_traces = |sets: &[IntervalUnion<T>], margin: &dyn Fn(T, T) -> T| -> Result<Vec<Vec<T>>> {
        sets.iter()
            .map(|s| {
                let base = limit.mass_of_intervals(s)?;
                seq.items()
                    .iter()
                    .map(|m| Ok(margin(m.mass_of_intervals(s)?, base.clone())))
                    .collect()
            })
            .collect()
    };
    let describe = |sets: &[IntervalUnion<T>]| sets.iter().map(ToString::to_string).collect::<Vec<_>>();

    let closed = mass_traces(&families.closed, &|mn, m0| mn - m0)?;
    let open = mass_traces(&families.open, &|mn, m0| m0 - mn)?;

    let mut kept = Vec::new();
    let mut excluded = Vec::new();
    for s in &families.continuity {
        let boundary = IntervalUnion::from_points(&s.boundary());
        if limit.mass_of_intervals(&boundary)?.is_zero() {
            kept.push(s.clone());
        } else {
            excluded.push(s.to_string());
        }
    }
    let continuity = mass_traces(&kept, &|mn, m0| (mn - m0).abs())?;

    let cdfs = seq.cdfs()?;
    let limit_cdf = limit.cdf()?;
    let functions: Vec<Vec<T>> = families
        .functions
        .iter()
        .map(|f| {
            let base = integrate(&limit_cdf, f);
            cdfs.iter().map(|c| (integrate(c, f) - base.clone()).abs()).collect()
        })
        .collect();

    let conditions = vec![
        verdict(
            Condition::Closed,
            describe(&families.closed),
            Vec::new(),
            closed,
            window,
            tol,
            n,
        ),
        verdict(
            Condition::Open,
            describe(&families.open),
            Vec::new(),
            open,
            window,
            tol,
            n,
        ),
        verdict(
            Condition::Continuity,
            describe(&kept),
            excluded,
            continuity,
            window,
            tol,
            n,
        ),
        verdict(
            Condition::Functions,
            families.functions.iter().map(ToString::to_string).collect(),
            Vec::new(),
            functions,
            window,
            tol,
            n,
        ),
    ];
    Ok(PortmanteauReport {
        prefix_len: n,
        window,
        tol: tol.clone(),
        conditions,
    })
}

use num_rational::BigRational;
use proptest::prelude::*;

use crate::measures::{DiscreteMeasure, PiecewiseCdf};
use crate::scalar::Scalar;

pub fn r(s: &str) -> BigRational {
    BigRational::parse_rational(s).unwrap()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::from_ratio(n, d)
}

/// Distribution functions mixing jumps and linear pieces on a 1/4 grid.
pub fn arb_cdf() -> impl Strategy<Value = PiecewiseCdf<BigRational>> {
    prop::collection::btree_map(-6i64..6, (0i64..3, 0i64..3), 1..5).prop_map(|m| {
        let pts: Vec<i64> = m.keys().copied().collect();
        let mut jumps: Vec<i64> = m.values().map(|v| v.0).collect();
        let n = pts.len();
        let segs: Vec<i64> = m.values().take(n - 1).map(|v| v.1).collect();
        if jumps.iter().sum::<i64>() + segs.iter().sum::<i64>() == 0 {
            jumps[0] = 1;
        }
        let total = jumps.iter().sum::<i64>() + segs.iter().sum::<i64>();
        let mut values = Vec::with_capacity(n);
        let mut slopes = Vec::with_capacity(n - 1);
        let mut acc = 0;
        for i in 0..n {
            acc += jumps[i];
            values.push(q(acc, total));
            if i + 1 < n {
                slopes.push(q(segs[i] * 4, total * (pts[i + 1] - pts[i])));
                acc += segs[i];
            }
        }
        PiecewiseCdf::new(pts.iter().map(|&p| q(p, 4)).collect(), values, slopes).unwrap()
    })
}

/// Finitely supported measures on the line, atoms on a 1/4 grid.
pub fn arb_measure(max_atoms: usize) -> impl Strategy<Value = DiscreteMeasure<BigRational>> {
    prop::collection::btree_map(-8i64..8, 1i64..4, 1..=max_atoms).prop_map(|m| {
        let total: i64 = m.values().sum();
        DiscreteMeasure::on_line(
            m.keys().map(|&a| q(a, 4)).collect(),
            m.values().map(|&w| q(w, total)).collect(),
        )
        .unwrap()
    })
}

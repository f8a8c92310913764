use crate::levy::levy_distance;
use crate::measures::PiecewiseCdf;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct LevyProfile<T> {
    /// `ℓ(F_n, F)` for `n = 1, …, N`.
    pub levy: Vec<T>,
    pub grid: Vec<T>,
    /// Whether `F` is continuous at each grid point.
    pub continuity: Vec<bool>,
    /// `F_n(x) − F(x)` per index, per grid point.
    pub gaps: Vec<Vec<T>>,
}

impl<T: Scalar> LevyProfile<T> {
    /// Largest `|F_n(x) − F(x)|` over the grid points where `F` is continuous.
    pub fn max_continuity_gap(&self, n: usize) -> T {
        self.gaps[n - 1]
            .iter()
            .zip(&self.continuity)
            .filter(|(_, c)| **c)
            .fold(T::zero(), |acc, (g, _)| if g.abs() > acc { g.abs() } else { acc })
    }
}

pub fn levy_convergence_profile<T: Scalar>(
    seq: &[PiecewiseCdf<T>],
    limit: &PiecewiseCdf<T>,
    grid: &[T],
) -> LevyProfile<T> {
    let levy = seq.iter().map(|f| levy_distance(f, limit).value).collect();
    let continuity = grid.iter().map(|x| limit.point_mass(x).is_zero()).collect();
    let gaps = seq
        .iter()
        .map(|f| grid.iter().map(|x| f.eval(x) - limit.eval(x)).collect())
        .collect();
    LevyProfile {
        levy,
        grid: grid.to_vec(),
        continuity,
        gaps,
    }
}

//! Discrete optimal transport between two samples with uniform weights.
//!
//! The central object is the transportation polytope `U_nm` of nonnegative
//! `n x m` matrices whose rows sum to `1/n` and whose columns sum to `1/m`.
//! [`exact_wasserstein_lp`] minimizes `<T, M>` over `U_nm` exactly with a
//! finite-termination vertex method; [`sinkhorn`] solves the
//! entropy-regularized relaxation whose optimizer interpolates between the
//! independence coupling (`lambda = 0`) and an optimal vertex
//! (`lambda -> inf`).

mod lp;
mod sinkhorn;

pub use sinkhorn::{
    sinkhorn, sinkhorn_divergence, SinkhornSolution, SINKHORN_MAX_ITER, SINKHORN_TOL,
};

use crate::error::{Error, Result};
use crate::sample::{euclidean_distance, Sample};

/// Marginal slack tolerated when validating a transport plan.
pub const MARGINAL_TOL: f64 = 1e-8;

/// Pairwise cost matrix `M[i][j] = ||X_i - Y_j||^p`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    entries: Vec<f64>,
    n_rows: usize,
    n_cols: usize,
    p: f64,
}

impl CostMatrix {
    /// Wraps an explicit cost matrix (entries must be nonnegative and
    /// finite). `p` is recorded for reporting only.
    pub fn from_entries(entries: Vec<f64>, n_rows: usize, n_cols: usize, p: f64) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 || entries.len() != n_rows * n_cols {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: n_rows * n_cols,
            });
        }
        if entries.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::InvalidCostMatrix);
        }
        if !(p >= 1.0) {
            return Err(Error::InvalidOrder { p });
        }
        Ok(Self {
            entries,
            n_rows,
            n_cols,
            p,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Cost exponent used to build the matrix.
    pub fn p(&self) -> f64 {
        self.p
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n_cols + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn max_entry(&self) -> f64 {
        self.entries.iter().copied().fold(0.0, f64::max)
    }

    /// Sum of all entries in row-major order.
    pub(crate) fn total(&self) -> f64 {
        self.entries.iter().sum()
    }
}

/// Builds the Euclidean cost matrix `||X_i - Y_j||^p` for two samples of the
/// same dimension.
pub fn cost_matrix(x: &Sample, y: &Sample, p: f64) -> Result<CostMatrix> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidOrder { p });
    }
    let mut entries = Vec::with_capacity(x.len() * y.len());
    for xi in x.points() {
        for yj in y.points() {
            let d = euclidean_distance(xi, yj);
            entries.push(if p == 1.0 { d } else { d.powf(p) });
        }
    }
    CostMatrix::from_entries(entries, x.len(), y.len(), p)
}

/// A coupling in (or near) the transportation polytope `U_nm`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan {
    coupling: Vec<f64>,
    n_rows: usize,
    n_cols: usize,
}

impl TransportPlan {
    /// Validates shape, nonnegativity and the uniform marginals (each row
    /// sum within [`MARGINAL_TOL`] of `1/n`, each column sum within
    /// [`MARGINAL_TOL`] of `1/m`).
    pub fn new(coupling: Vec<f64>, n_rows: usize, n_cols: usize) -> Result<Self> {
        let plan = Self::from_raw(coupling, n_rows, n_cols)?;
        let worst = plan.max_marginal_violation();
        if worst > MARGINAL_TOL {
            return Err(Error::InfeasiblePlan {
                reason: format!("marginal violation {worst:.3e} exceeds {MARGINAL_TOL:.0e}"),
            });
        }
        Ok(plan)
    }

    /// Shape and sign checks only; used for diverged iterative solutions.
    pub(crate) fn from_raw(coupling: Vec<f64>, n_rows: usize, n_cols: usize) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 || coupling.len() != n_rows * n_cols {
            return Err(Error::DimensionMismatch {
                left: coupling.len(),
                right: n_rows * n_cols,
            });
        }
        if coupling.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::InfeasiblePlan {
                reason: "entries must be nonnegative and finite".to_string(),
            });
        }
        Ok(Self {
            coupling,
            n_rows,
            n_cols,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.coupling[i * self.n_cols + j]
    }

    pub fn coupling(&self) -> &[f64] {
        &self.coupling
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n_rows)
            .map(|i| (0..self.n_cols).map(|j| self.at(i, j)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        (0..self.n_cols)
            .map(|j| (0..self.n_rows).map(|i| self.at(i, j)).sum())
            .collect()
    }

    /// Largest absolute deviation of any row sum from `1/n` or column sum
    /// from `1/m`.
    pub fn max_marginal_violation(&self) -> f64 {
        let rn = 1.0 / self.n_rows as f64;
        let cm = 1.0 / self.n_cols as f64;
        let row = self
            .row_sums()
            .into_iter()
            .map(|s| (s - rn).abs())
            .fold(0.0, f64::max);
        let col = self
            .col_sums()
            .into_iter()
            .map(|s| (s - cm).abs())
            .fold(0.0, f64::max);
        row.max(col)
    }

    /// Total L1 deviation of both marginals from uniform.
    pub fn l1_marginal_residual(&self) -> f64 {
        let rn = 1.0 / self.n_rows as f64;
        let cm = 1.0 / self.n_cols as f64;
        let row: f64 = self.row_sums().into_iter().map(|s| (s - rn).abs()).sum();
        let col: f64 = self.col_sums().into_iter().map(|s| (s - cm).abs()).sum();
        row + col
    }

    /// Transport cost `<T, M>` in fixed row-major order.
    pub fn transport_cost(&self, cost: &CostMatrix) -> Result<f64> {
        if cost.n_rows() != self.n_rows || cost.n_cols() != self.n_cols {
            return Err(Error::DimensionMismatch {
                left: self.coupling.len(),
                right: cost.entries().len(),
            });
        }
        Ok(self
            .coupling
            .iter()
            .zip(cost.entries())
            .map(|(t, c)| t * c)
            .sum())
    }

    /// Shannon entropy `-sum T_ij ln T_ij` (with `0 ln 0 = 0`).
    pub fn entropy(&self) -> f64 {
        self.coupling
            .iter()
            .filter(|t| **t > 0.0)
            .map(|t| -t * t.ln())
            .sum()
    }
}

/// Exact minimum of `<T, M>` over the transportation polytope, together with
/// an optimal vertex.
///
/// Equal sample sizes reduce to an assignment problem solved by shortest
/// augmenting paths; the general case runs a transportation simplex on
/// integer flows. Both are finite-termination exact methods.
pub fn exact_wasserstein_lp(cost: &CostMatrix) -> Result<(f64, TransportPlan)> {
    let (n, m) = (cost.n_rows(), cost.n_cols());
    let coupling = if n == m {
        let row_of_col = lp::solve_assignment(cost);
        let mut coupling = vec![0.0; n * m];
        let w = 1.0 / n as f64;
        for (j, &i) in row_of_col.iter().enumerate() {
            coupling[i * m + j] = w;
        }
        coupling
    } else {
        let cells = lp::solve_transportation(cost)?;
        let mut coupling = vec![0.0; n * m];
        let total = (n * m) as f64;
        for &(i, j, flow) in &cells {
            coupling[i * m + j] = flow as f64 / total;
        }
        coupling
    };
    let plan = TransportPlan::new(coupling, n, m)?;
    let objective = plan.transport_cost(cost)?;
    Ok((objective, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn s(values: &[f64]) -> Sample {
        Sample::univariate(values).unwrap()
    }

    #[test]
    fn cost_matrix_hand_values() {
        let x = Sample::new(vec![vec![0.0, 0.0]]).unwrap();
        let y = Sample::new(vec![vec![3.0, 4.0]]).unwrap();
        let m = cost_matrix(&x, &y, 1.0).unwrap();
        assert_eq!(m.entries(), &[5.0]);

        let m = cost_matrix(&s(&[0.0]), &s(&[1.0, -2.0]), 2.0).unwrap();
        assert_eq!(m.entries(), &[1.0, 4.0]);
    }

    #[test]
    fn cost_matrix_zero_diagonal_on_self() {
        let x = s(&[0.3, -1.0, 2.0]);
        let m = cost_matrix(&x, &x, 2.0).unwrap();
        for i in 0..3 {
            assert_eq!(m.at(i, i), 0.0);
        }
    }

    #[test]
    fn cost_matrix_rejects_mismatched_dims_and_bad_order() {
        let x = Sample::new(vec![vec![0.0, 0.0]]).unwrap();
        let y = s(&[1.0]);
        assert!(matches!(
            cost_matrix(&x, &y, 1.0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            cost_matrix(&y, &y, 0.5),
            Err(Error::InvalidOrder { .. })
        ));
    }

    #[test]
    fn plan_validation() {
        // Valid 1x1 plan.
        assert!(TransportPlan::new(vec![1.0], 1, 1).is_ok());
        // Marginals off.
        assert!(TransportPlan::new(vec![0.5], 1, 1).is_err());
        // Negative mass.
        assert!(TransportPlan::new(vec![1.5, -0.5], 1, 2).is_err());
    }

    #[test]
    fn lp_single_point() {
        let m = CostMatrix::from_entries(vec![7.0], 1, 1, 1.0).unwrap();
        let (obj, plan) = exact_wasserstein_lp(&m).unwrap();
        assert_eq!(plan.coupling(), &[1.0]);
        assert_eq!(obj, 7.0);
    }

    #[test]
    fn lp_zero_costs() {
        let m = CostMatrix::from_entries(vec![0.0; 6], 2, 3, 1.0).unwrap();
        let (obj, plan) = exact_wasserstein_lp(&m).unwrap();
        assert_eq!(obj, 0.0);
        assert!(plan.max_marginal_violation() <= MARGINAL_TOL);
    }

    #[test]
    fn lp_interleaved_example() {
        // Two assignment vertices: the monotone matching costs 1, the
        // crossing one costs 2.
        let m = cost_matrix(&s(&[0.0, 2.0]), &s(&[1.0, 3.0]), 1.0).unwrap();
        let (obj, plan) = exact_wasserstein_lp(&m).unwrap();
        assert_relative_eq!(obj, 1.0, epsilon = 1e-12);
        assert_relative_eq!(plan.at(0, 0), 0.5, epsilon = 1e-12);
        assert_relative_eq!(plan.at(1, 1), 0.5, epsilon = 1e-12);
    }

    /// Exhaustive oracle: minimize over all integer contingency tables with
    /// row sums `m` and column sums `n` (the vertices of the scaled polytope
    /// are integral, so this brute force finds the exact LP optimum).
    fn lp_bruteforce(cost: &CostMatrix) -> f64 {
        let (n, m) = (cost.n_rows(), cost.n_cols());
        let mut col_left = vec![n as i64; m];
        let mut best = f64::INFINITY;
        fn rec(
            cost: &CostMatrix,
            row: usize,
            col: usize,
            row_left: i64,
            col_left: &mut [i64],
            acc: f64,
            best: &mut f64,
        ) {
            let (n, m) = (cost.n_rows(), cost.n_cols());
            if acc >= *best {
                return;
            }
            if row == n {
                *best = acc;
                return;
            }
            if col == m - 1 {
                // Final column takes the remaining row supply.
                if col_left[col] >= row_left {
                    col_left[col] -= row_left;
                    let add = cost.at(row, col) * row_left as f64 / (n * m) as f64;
                    rec(cost, row + 1, 0, m as i64, col_left, acc + add, best);
                    col_left[col] += row_left;
                }
                return;
            }
            let cap = row_left.min(col_left[col]);
            for q in 0..=cap {
                col_left[col] -= q;
                let add = cost.at(row, col) * q as f64 / (n * m) as f64;
                rec(cost, row, col + 1, row_left - q, col_left, acc + add, best);
                col_left[col] += q;
            }
        }
        rec(cost, 0, 0, m as i64, &mut col_left, 0.0, &mut best);
        best
    }

    #[test]
    fn lp_matches_bruteforce_on_small_instances() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for trial in 0..60 {
            let n = rng.gen_range(1..=4usize);
            let m = rng.gen_range(1..=4usize);
            let entries: Vec<f64> = (0..n * m).map(|_| rng.gen_range(0.0..10.0)).collect();
            let cost = CostMatrix::from_entries(entries, n, m, 1.0).unwrap();
            let (obj, plan) = exact_wasserstein_lp(&cost).unwrap();
            let oracle = lp_bruteforce(&cost);
            assert_abs_diff_eq!(obj, oracle, epsilon = 1e-10);
            assert!(plan.max_marginal_violation() <= MARGINAL_TOL, "trial {trial}");
        }
    }

    #[test]
    fn simplex_agrees_with_assignment_when_square() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=6usize);
            let entries: Vec<f64> = (0..n * n).map(|_| rng.gen_range(0.0..5.0)).collect();
            let cost = CostMatrix::from_entries(entries, n, n, 1.0).unwrap();
            let cells = super::lp::solve_transportation(&cost).unwrap();
            let simplex_obj: f64 = {
                let mut sorted = cells.clone();
                sorted.sort();
                sorted
                    .iter()
                    .map(|&(i, j, f)| cost.at(i, j) * f as f64 / (n * n) as f64)
                    .sum()
            };
            let (hungarian_obj, _) = exact_wasserstein_lp(&cost).unwrap();
            assert_abs_diff_eq!(simplex_obj, hungarian_obj, epsilon = 1e-9);
        }
    }

    proptest! {
        /// Scaling the cost matrix by c > 0 scales the optimum by c and
        /// leaves the optimal vertex set unchanged.
        #[test]
        fn lp_scales_linearly(
            entries in prop::collection::vec(0.0f64..8.0, 1..=16),
            c in 0.1f64..10.0,
        ) {
            let len = entries.len();
            // Pick the divisor pair closest to a square shape.
            let n = (1..=len)
                .filter(|k| len % k == 0)
                .min_by_key(|k| (*k as i64 - len as i64 / *k as i64).unsigned_abs())
                .unwrap();
            let m = len / n;
            let cost = CostMatrix::from_entries(entries.clone(), n, m, 1.0).unwrap();
            let scaled = CostMatrix::from_entries(
                entries.iter().map(|e| e * c).collect(),
                n,
                m,
                1.0,
            ).unwrap();
            let (obj, _) = exact_wasserstein_lp(&cost).unwrap();
            let (obj_scaled, plan_scaled) = exact_wasserstein_lp(&scaled).unwrap();
            prop_assert!((obj_scaled - c * obj).abs() <= 1e-9 * (1.0 + c * obj));
            // The vertex returned for the scaled problem is optimal for the
            // original problem too.
            let back = plan_scaled.transport_cost(&cost).unwrap();
            prop_assert!((back - obj).abs() <= 1e-9 * (1.0 + obj.abs()));
        }
    }
}

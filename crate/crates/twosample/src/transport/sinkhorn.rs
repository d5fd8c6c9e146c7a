//! Entropy-regularized transport via Sinkhorn matrix scaling.
//!
//! For regularization weight `lambda >= 0` the solver finds the coupling
//! `T = D_u exp(-lambda M) D_v` with uniform marginals. `lambda = 0` yields
//! the independence coupling `1/(n m)` directly; as `lambda` grows the
//! unregularized cost `<T_lambda, M>` decreases toward the LP optimum.
//!
//! When `lambda * max(M) > 30` the kernel underflows badly, so the scalings
//! are maintained in the log domain (`log u`, `log v`) with log-sum-exp
//! reductions; both paths use the same convergence criterion, the total L1
//! deviation of the plan's marginals from uniform.

use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::transport::{cost_matrix, CostMatrix, TransportPlan};

/// Default convergence tolerance on the L1 marginal residual.
pub const SINKHORN_TOL: f64 = 1e-9;
/// Default iteration cap.
pub const SINKHORN_MAX_ITER: usize = 10_000;

/// Exponent threshold beyond which scaling switches to the log domain.
const LOG_DOMAIN_THRESHOLD: f64 = 30.0;

/// Outcome of a Sinkhorn run.
#[derive(Debug, Clone)]
pub struct SinkhornSolution {
    plan: TransportPlan,
    u: Vec<f64>,
    v: Vec<f64>,
    lambda: f64,
    iterations: usize,
    converged: bool,
}

impl SinkhornSolution {
    /// The scaled coupling. When [`Self::converged`] is false its marginals
    /// may be off by more than the plan-validation tolerance.
    pub fn plan(&self) -> &TransportPlan {
        &self.plan
    }

    /// Row scaling vector (positive).
    pub fn u(&self) -> &[f64] {
        &self.u
    }

    /// Column scaling vector (positive).
    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Number of full row/column scaling sweeps performed.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    /// Unregularized transport cost `<T_lambda, M>` of the current plan.
    pub fn transport_cost(&self, cost: &CostMatrix) -> Result<f64> {
        self.plan.transport_cost(cost)
    }
}

/// Runs Sinkhorn scaling on `cost` with regularization `lambda`, stopping
/// when the L1 marginal residual drops to `tol` or after `max_iter` sweeps.
pub fn sinkhorn(
    cost: &CostMatrix,
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> Result<SinkhornSolution> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::InvalidRegularization { lambda });
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidTolerance { tol });
    }
    let (n, m) = (cost.n_rows(), cost.n_cols());
    if lambda == 0.0 {
        // exp(-0 M) is the all-ones kernel: the scaled coupling is the
        // independence plan regardless of the cost matrix.
        let coupling = vec![1.0 / (n * m) as f64; n * m];
        return Ok(SinkhornSolution {
            plan: TransportPlan::new(coupling, n, m)?,
            u: vec![1.0 / n as f64; n],
            v: vec![1.0 / m as f64; m],
            lambda,
            iterations: 0,
            converged: true,
        });
    }
    let (u, v, coupling, iterations, converged) = if lambda * cost.max_entry() > LOG_DOMAIN_THRESHOLD
    {
        log_domain_scaling(cost, lambda, tol, max_iter)
    } else {
        linear_domain_scaling(cost, lambda, tol, max_iter)
    };
    let plan = if converged {
        TransportPlan::new(coupling, n, m)?
    } else {
        TransportPlan::from_raw(coupling, n, m)?
    };
    Ok(SinkhornSolution {
        plan,
        u,
        v,
        lambda,
        iterations,
        converged,
    })
}

type ScalingOutcome = (Vec<f64>, Vec<f64>, Vec<f64>, usize, bool);

fn linear_domain_scaling(
    cost: &CostMatrix,
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> ScalingOutcome {
    let (n, m) = (cost.n_rows(), cost.n_cols());
    let kernel: Vec<f64> = cost.entries().iter().map(|c| (-lambda * c).exp()).collect();
    let (rn, cm) = (1.0 / n as f64, 1.0 / m as f64);
    let mut u = vec![1.0; n];
    let mut v = vec![1.0; m];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        for i in 0..n {
            let kv: f64 = (0..m).map(|j| kernel[i * m + j] * v[j]).sum();
            u[i] = rn / kv;
        }
        for j in 0..m {
            let ku: f64 = (0..n).map(|i| kernel[i * m + j] * u[i]).sum();
            v[j] = cm / ku;
        }
        let mut residual = 0.0;
        for i in 0..n {
            let row: f64 = (0..m).map(|j| u[i] * kernel[i * m + j] * v[j]).sum();
            residual += (row - rn).abs();
        }
        for j in 0..m {
            let col: f64 = (0..n).map(|i| u[i] * kernel[i * m + j] * v[j]).sum();
            residual += (col - cm).abs();
        }
        if residual <= tol {
            converged = true;
            break;
        }
    }
    let coupling: Vec<f64> = (0..n * m)
        .map(|idx| u[idx / m] * kernel[idx] * v[idx % m])
        .collect();
    (u, v, coupling, iterations, converged)
}

fn log_domain_scaling(
    cost: &CostMatrix,
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> ScalingOutcome {
    let (n, m) = (cost.n_rows(), cost.n_cols());
    let (log_rn, log_cm) = (-(n as f64).ln(), -(m as f64).ln());
    let mut log_u = vec![0.0; n];
    let mut log_v = vec![0.0; m];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        for i in 0..n {
            let lse = logsumexp_by(m, |j| log_v[j] - lambda * cost.at(i, j));
            log_u[i] = log_rn - lse;
        }
        for j in 0..m {
            let lse = logsumexp_by(n, |i| log_u[i] - lambda * cost.at(i, j));
            log_v[j] = log_cm - lse;
        }
        let mut residual = 0.0;
        for i in 0..n {
            let row = (log_u[i] + logsumexp_by(m, |j| log_v[j] - lambda * cost.at(i, j))).exp();
            residual += (row - 1.0 / n as f64).abs();
        }
        for j in 0..m {
            let col = (log_v[j] + logsumexp_by(n, |i| log_u[i] - lambda * cost.at(i, j))).exp();
            residual += (col - 1.0 / m as f64).abs();
        }
        if residual <= tol {
            converged = true;
            break;
        }
    }
    let coupling: Vec<f64> = (0..n * m)
        .map(|idx| (log_u[idx / m] - lambda * cost.entries()[idx] + log_v[idx % m]).exp())
        .collect();
    let u = log_u.iter().map(|lu| lu.exp()).collect();
    let v = log_v.iter().map(|lv| lv.exp()).collect();
    (u, v, coupling, iterations, converged)
}

/// `ln(sum_k exp(f(k)))` guarded against overflow.
fn logsumexp_by(len: usize, f: impl Fn(usize) -> f64) -> f64 {
    let mut max = f64::NEG_INFINITY;
    for k in 0..len {
        max = max.max(f(k));
    }
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = (0..len).map(|k| (f(k) - max).exp()).sum();
    max + sum.ln()
}

/// Smoothed transport divergence `S_lambda^p(x, y) = <T_lambda, M_xy>`: the
/// unregularized cost of the entropic optimizer for the order-`p` cost.
///
/// At `lambda = 0` this is the mean pairwise cost under the independence
/// coupling; as `lambda` grows it decreases toward the exact LP optimum.
pub fn sinkhorn_divergence(x: &Sample, y: &Sample, p: f64, lambda: f64) -> Result<f64> {
    let cost = cost_matrix(x, y, p)?;
    if lambda == 0.0 {
        return Ok(cost.total() / (cost.n_rows() as f64 * cost.n_cols() as f64));
    }
    let solution = sinkhorn(&cost, lambda, SINKHORN_TOL, SINKHORN_MAX_ITER)?;
    solution.transport_cost(&cost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transport::{exact_wasserstein_lp, MARGINAL_TOL};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::prelude::*;

    fn s(values: &[f64]) -> Sample {
        Sample::univariate(values).unwrap()
    }

    fn random_cost(rng: &mut impl Rng, n: usize, m: usize, hi: f64) -> CostMatrix {
        let entries: Vec<f64> = (0..n * m).map(|_| rng.gen_range(0.0..hi)).collect();
        CostMatrix::from_entries(entries, n, m, 1.0).unwrap()
    }

    #[test]
    fn lambda_zero_gives_independence_plan() {
        let cost = CostMatrix::from_entries(vec![3.0, 1.0, 4.0, 1.5], 2, 2, 1.0).unwrap();
        let sol = sinkhorn(&cost, 0.0, SINKHORN_TOL, SINKHORN_MAX_ITER).unwrap();
        assert_eq!(sol.plan().coupling(), &[0.25; 4]);
        assert!(sol.converged());
        assert_eq!(sol.iterations(), 0);
    }

    #[test]
    fn single_point_plan_is_one_for_any_lambda() {
        let cost = CostMatrix::from_entries(vec![2.5], 1, 1, 1.0).unwrap();
        for lambda in [0.0, 0.3, 5.0, 80.0] {
            let sol = sinkhorn(&cost, lambda, SINKHORN_TOL, SINKHORN_MAX_ITER).unwrap();
            assert_relative_eq!(sol.plan().coupling()[0], 1.0, epsilon = 1e-12);
            assert!(sol.converged());
        }
    }

    #[test]
    fn strong_regularization_concentrates_on_diagonal() {
        let cost = CostMatrix::from_entries(vec![0.0, 1.0, 1.0, 0.0], 2, 2, 1.0).unwrap();
        let sol = sinkhorn(&cost, 10.0, SINKHORN_TOL, SINKHORN_MAX_ITER).unwrap();
        assert!(sol.converged());
        let value = sol.transport_cost(&cost).unwrap();
        assert!(value < 0.05, "got {value}");
        assert!(sol.plan().at(0, 0) > 0.45);
        assert!(sol.plan().at(1, 1) > 0.45);
    }

    #[test]
    fn rejects_invalid_parameters() {
        let cost = CostMatrix::from_entries(vec![1.0], 1, 1, 1.0).unwrap();
        assert!(matches!(
            sinkhorn(&cost, -1.0, SINKHORN_TOL, SINKHORN_MAX_ITER),
            Err(Error::InvalidRegularization { .. })
        ));
        assert!(matches!(
            sinkhorn(&cost, f64::NAN, SINKHORN_TOL, SINKHORN_MAX_ITER),
            Err(Error::InvalidRegularization { .. })
        ));
        assert!(matches!(
            sinkhorn(&cost, 1.0, 0.0, SINKHORN_MAX_ITER),
            Err(Error::InvalidTolerance { .. })
        ));
    }

    #[test]
    fn converged_plans_are_feasible_and_factorized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..25 {
            let n = rng.gen_range(1..=7usize);
            let m = rng.gen_range(1..=7usize);
            let cost = random_cost(&mut rng, n, m, 5.0);
            let lambda = rng.gen_range(0.1..4.0);
            let sol = sinkhorn(&cost, lambda, SINKHORN_TOL, SINKHORN_MAX_ITER).unwrap();
            assert!(sol.converged());
            assert!(sol.plan().max_marginal_violation() <= MARGINAL_TOL);
            // T = D_u exp(-lambda M) D_v entrywise.
            for i in 0..n {
                for j in 0..m {
                    let expected = sol.u()[i] * (-lambda * cost.at(i, j)).exp() * sol.v()[j];
                    assert_abs_diff_eq!(sol.plan().at(i, j), expected, epsilon = 1e-8);
                }
            }
        }
    }

    #[test]
    fn log_and_linear_domains_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let n = rng.gen_range(2..=6usize);
            let m = rng.gen_range(2..=6usize);
            let cost = random_cost(&mut rng, n, m, 3.0);
            let lambda = 2.0;
            let (_, _, lin, _, c1) = linear_domain_scaling(&cost, lambda, 1e-11, 20_000);
            let (_, _, log, _, c2) = log_domain_scaling(&cost, lambda, 1e-11, 20_000);
            assert!(c1 && c2);
            for (a, b) in lin.iter().zip(&log) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn interpolates_monotonically_toward_lp_optimum() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        for _ in 0..15 {
            let n = rng.gen_range(2..=6usize);
            let m = rng.gen_range(2..=6usize);
            let cost = random_cost(&mut rng, n, m, 4.0);
            let (opt, _) = exact_wasserstein_lp(&cost).unwrap();
            let max = cost.max_entry();
            let mut prev = f64::INFINITY;
            for lambda in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0 / max] {
                let sol = sinkhorn(&cost, lambda, SINKHORN_TOL, SINKHORN_MAX_ITER).unwrap();
                let value = sol.transport_cost(&cost).unwrap();
                assert!(
                    value <= prev + 1e-8 * (1.0 + max),
                    "not monotone at lambda={lambda}: {value} > {prev}"
                );
                assert!(value >= opt - 1e-8 * (1.0 + max));
                prev = value;
            }
            let tight = sinkhorn(&cost, 50.0 / max, SINKHORN_TOL, SINKHORN_MAX_ITER).unwrap();
            let value = tight.transport_cost(&cost).unwrap();
            assert!(
                (value - opt).abs() <= 1e-2 * (1.0 + opt),
                "lambda = 50/max did not reach the optimum: {value} vs {opt}"
            );
        }
    }

    #[test]
    fn entropy_is_maximal_at_lambda_zero() {
        let cost = CostMatrix::from_entries(vec![0.2, 1.0, 0.7, 0.1, 2.0, 0.4], 2, 3, 1.0).unwrap();
        let free = sinkhorn(&cost, 0.0, SINKHORN_TOL, SINKHORN_MAX_ITER).unwrap();
        for lambda in [0.5, 2.0, 10.0] {
            let sol = sinkhorn(&cost, lambda, SINKHORN_TOL, SINKHORN_MAX_ITER).unwrap();
            assert!(sol.plan().entropy() <= free.plan().entropy() + 1e-12);
        }
    }

    #[test]
    fn divergence_at_lambda_zero_is_mean_pairwise_cost() {
        let x = s(&[0.0, 2.0]);
        let y = s(&[1.0, 3.0]);
        // Pairwise distances 1, 3, 1, 1.
        assert_eq!(sinkhorn_divergence(&x, &y, 1.0, 0.0).unwrap(), 1.5);
    }

    #[test]
    fn divergence_approaches_exact_distance() {
        let x = s(&[0.0, 2.0]);
        let y = s(&[1.0, 3.0]);
        let value = sinkhorn_divergence(&x, &y, 1.0, 50.0).unwrap();
        assert_abs_diff_eq!(value, 1.0, epsilon = 1e-3);
    }

    #[test]
    fn self_divergence_of_a_point_is_zero() {
        let x = s(&[1.5]);
        for lambda in [0.0, 1.0, 30.0] {
            assert_eq!(sinkhorn_divergence(&x, &x, 2.0, lambda).unwrap(), 0.0);
        }
    }
}

//! Null-distribution machinery: permutation calibration for any statistic,
//! Monte Carlo Brownian-bridge tables for the distribution-free statistics,
//! and the check that "distribution-free" actually holds.
//!
//! Everything here is deterministic given a seed. Trial `i` of any
//! resampling or simulation loop draws from its own substream seeded by
//! [`derive_seed`]`(seed, i)`, so parallel execution produces results
//! identical to sequential execution.

mod bridge;

pub use bridge::{
    asymptotic_pvalue, bridge_functional_for, distribution_free_check,
    simulate_bridge_functional, BridgeFunctional, QuantileTable,
};

use crate::error::{Error, Result};
use crate::sample::Sample;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Minimum number of permutation resamples or simulated paths.
pub const MIN_RESAMPLES: usize = 100;
/// Minimum bridge discretization grid.
pub const MIN_GRID: usize = 1000;
/// Default bridge discretization grid.
pub const DEFAULT_GRID: usize = 2048;

/// How a null distribution is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NullModelKind {
    /// Random relabelings of the pooled sample (without replacement).
    Permutation,
    /// `sup |B|` of a Brownian bridge: the scaled KS limit.
    BridgeSup,
    /// `integral B^2` of a Brownian bridge.
    BridgeL2,
    /// `integral B^2` as the limit of the scaled ODC-W2 statistic.
    OdcBridgeL2,
    /// `sup |B|` as the limit of the scaled ODC-sup statistic.
    OdcBridgeSup,
}

impl NullModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            NullModelKind::Permutation => "permutation",
            NullModelKind::BridgeSup => "bridge-sup",
            NullModelKind::BridgeL2 => "bridge-l2",
            NullModelKind::OdcBridgeL2 => "odc-bridge-l2",
            NullModelKind::OdcBridgeSup => "odc-bridge-sup",
        }
    }

    /// The bridge functional simulated for this null model, if any.
    pub fn functional(&self) -> Option<BridgeFunctional> {
        match self {
            NullModelKind::Permutation => None,
            NullModelKind::BridgeSup | NullModelKind::OdcBridgeSup => {
                Some(BridgeFunctional::SupAbs)
            }
            NullModelKind::BridgeL2 | NullModelKind::OdcBridgeL2 => Some(BridgeFunctional::L2),
        }
    }
}

/// A fully specified null-calibration scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NullModel {
    kind: NullModelKind,
    num_resamples_or_paths: usize,
    rng_seed: u64,
    grid_size: Option<usize>,
}

impl NullModel {
    /// Permutation calibration with `b` resamples.
    pub fn permutation(b: usize, seed: u64) -> Result<Self> {
        if b < MIN_RESAMPLES {
            return Err(Error::InsufficientResamples {
                got: b,
                min: MIN_RESAMPLES,
            });
        }
        Ok(Self {
            kind: NullModelKind::Permutation,
            num_resamples_or_paths: b,
            rng_seed: seed,
            grid_size: None,
        })
    }

    /// Brownian-bridge calibration with `paths` simulated paths on `grid`
    /// points.
    pub fn bridge(kind: NullModelKind, paths: usize, grid: usize, seed: u64) -> Result<Self> {
        if kind == NullModelKind::Permutation {
            return Err(Error::InvalidConfig(
                "bridge constructor requires a bridge kind".into(),
            ));
        }
        if paths < MIN_RESAMPLES {
            return Err(Error::InsufficientPaths {
                got: paths,
                min: MIN_RESAMPLES,
            });
        }
        if grid < MIN_GRID {
            return Err(Error::GridTooCoarse {
                got: grid,
                min: MIN_GRID,
            });
        }
        Ok(Self {
            kind,
            num_resamples_or_paths: paths,
            rng_seed: seed,
            grid_size: Some(grid),
        })
    }

    pub fn kind(&self) -> NullModelKind {
        self.kind
    }

    pub fn num_resamples_or_paths(&self) -> usize {
        self.num_resamples_or_paths
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }

    pub fn grid_size(&self) -> Option<usize> {
        self.grid_size
    }

    /// One-line human-readable description for reports.
    pub fn describe(&self) -> String {
        match self.grid_size {
            Some(grid) => format!(
                "{}: {} paths, grid {}, seed {}",
                self.kind.name(),
                self.num_resamples_or_paths,
                grid,
                self.rng_seed
            ),
            None => format!(
                "{}: {} resamples, seed {}",
                self.kind.name(),
                self.num_resamples_or_paths,
                self.rng_seed
            ),
        }
    }
}

/// The result of one calibrated test, flat and serializable.
///
/// `reject` is derived, never stored independently: it is true exactly when
/// `p_value <= alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    /// Report schema version; always "v1".
    pub schema: String,
    /// Statistic name, e.g. "ks" or "energy".
    pub statistic: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<f64>,
    pub raw_value: f64,
    pub scaled_value: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub reject: bool,
    /// Human-readable description of the null model.
    pub calibration: String,
    pub n: usize,
    pub m: usize,
    /// Echo of the run configuration for reproducibility.
    #[serde(default)]
    pub config: serde_json::Value,
}

impl TestReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        statistic: &str,
        raw_value: f64,
        scaled_value: f64,
        p_value: f64,
        alpha: f64,
        calibration: String,
        n: usize,
        m: usize,
    ) -> Result<Self> {
        if !(p_value > 0.0 && p_value <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "p-value must lie in (0, 1], got {p_value}"
            )));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        Ok(Self {
            schema: "v1".to_string(),
            statistic: statistic.to_string(),
            p: None,
            lambda: None,
            gamma: None,
            raw_value,
            scaled_value,
            p_value,
            alpha,
            reject: p_value <= alpha,
            calibration,
            n,
            m,
            config: serde_json::Value::Null,
        })
    }
}

/// Derives the substream seed for trial `index` from a base seed.
///
/// SplitMix64 over `seed + (index + 1) * golden_gamma`: cheap, stateless,
/// and collision-free in practice for any realistic trial count.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Permutation p-value driven by index relabelings.
///
/// `t_obs` is the statistic on the original labeling; `statistic` receives
/// the pooled-index sets assigned to the first and second group. This
/// index-level interface lets callers with precomputed pairwise matrices
/// avoid rebuilding samples per resample.
pub fn permutation_pvalue_indexed(
    n: usize,
    m: usize,
    t_obs: f64,
    statistic: impl Fn(&[usize], &[usize]) -> Result<f64> + Sync,
    b: usize,
    seed: u64,
) -> Result<f64> {
    if b < MIN_RESAMPLES {
        return Err(Error::InsufficientResamples {
            got: b,
            min: MIN_RESAMPLES,
        });
    }
    let total = n + m;
    let resampled: Vec<f64> = (0..b)
        .into_par_iter()
        .map_init(
            || (0..total).collect::<Vec<usize>>(),
            |indices, i| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
                indices.shuffle(&mut rng);
                statistic(&indices[..n], &indices[n..])
            },
        )
        .collect::<Result<Vec<f64>>>()?;
    let exceed = resampled.iter().filter(|&&t| t >= t_obs).count();
    Ok((1 + exceed) as f64 / (b + 1) as f64)
}

/// Permutation p-value for a statistic on two samples.
///
/// Pools the samples, relabels uniformly at random `b` times without
/// replacement, and returns `(1 + #{T_b >= T_obs}) / (b + 1)`. Deterministic
/// given `seed` and independent of thread count.
pub fn permutation_pvalue(
    x: &Sample,
    y: &Sample,
    statistic: impl Fn(&Sample, &Sample) -> Result<f64> + Sync,
    b: usize,
    seed: u64,
) -> Result<f64> {
    let t_obs = statistic(x, y)?;
    let pooled = x.concat(y)?;
    permutation_pvalue_indexed(
        x.len(),
        y.len(),
        t_obs,
        |ix, iy| {
            let rx = pooled.select(ix)?;
            let ry = pooled.select(iy)?;
            statistic(&rx, &ry)
        },
        b,
        seed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::univariate::{compute, UnivariateKind};
    use rand::Rng;
    use std::collections::HashSet;

    fn mean_gap(x: &Sample, y: &Sample) -> Result<f64> {
        let mx = x.values_1d()?.iter().sum::<f64>() / x.len() as f64;
        let my = y.values_1d()?.iter().sum::<f64>() / y.len() as f64;
        Ok(mx - my)
    }

    #[test]
    fn derived_seeds_are_distinct_and_stable() {
        let mut seen = HashSet::new();
        for i in 0..10_000u64 {
            assert!(seen.insert(derive_seed(42, i)));
        }
        assert_eq!(derive_seed(42, 7), derive_seed(42, 7));
        assert_ne!(derive_seed(42, 7), derive_seed(43, 7));
    }

    #[test]
    fn rejects_insufficient_resamples() {
        let x = Sample::univariate(&[1.0, 2.0]).unwrap();
        let y = Sample::univariate(&[3.0, 4.0]).unwrap();
        let err = permutation_pvalue(&x, &y, mean_gap, 99, 0).unwrap_err();
        assert!(err.to_string().contains("insufficient resamples"));
        assert!(NullModel::permutation(99, 0).is_err());
        assert!(NullModel::permutation(100, 0).is_ok());
    }

    #[test]
    fn dominant_statistic_gets_minimal_pvalue() {
        // X sits far above Y, so the identity labeling maximizes the mean
        // gap; no random relabeling of 40 pooled points reproduces it.
        let x = Sample::univariate(&(0..20).map(|i| 1000.0 + i as f64).collect::<Vec<_>>())
            .unwrap();
        let y = Sample::univariate(&(0..20).map(|i| i as f64).collect::<Vec<_>>()).unwrap();
        let p = permutation_pvalue(&x, &y, mean_gap, 200, 11).unwrap();
        assert_eq!(p, 1.0 / 201.0);
    }

    #[test]
    fn single_point_samples_enumerate_two_relabelings() {
        // Pool {5, 1}: the signed gap is +4 under the identity labeling and
        // -4 under the swap, so the exceedance count is exactly the number
        // of identity draws.
        let x = Sample::univariate(&[5.0]).unwrap();
        let y = Sample::univariate(&[1.0]).unwrap();
        let b = 1000;
        let p = permutation_pvalue(&x, &y, mean_gap, b, 3).unwrap();
        let count = (p * (b + 1) as f64 - 1.0).round() as i64;
        assert!((0..=b as i64).contains(&count));
        // The identity draw has probability 1/2 per resample.
        let dev = (count as f64 - b as f64 / 2.0).abs();
        assert!(dev < 4.0 * (b as f64 / 4.0).sqrt(), "count {count}");
    }

    #[test]
    fn pvalues_are_deterministic_and_seed_sensitive() {
        // Partial separation keeps the p-value mid-range, where the
        // exceedance count actually depends on the resampling stream.
        let x = Sample::univariate(&[0.3, 1.4, 2.2, 0.1, 0.9, 0.5]).unwrap();
        let y = Sample::univariate(&[1.1, 2.0, 1.8, 2.5, 0.7, 2.9]).unwrap();
        let stat = |a: &Sample, b: &Sample| mean_gap(a, b).map(f64::abs);
        let p1 = permutation_pvalue(&x, &y, stat, 300, 99).unwrap();
        let p2 = permutation_pvalue(&x, &y, stat, 300, 99).unwrap();
        assert_eq!(p1.to_bits(), p2.to_bits());
        let distinct = (100..105u64)
            .map(|seed| permutation_pvalue(&x, &y, stat, 300, seed).unwrap())
            .any(|p| p != p1);
        assert!(distinct, "five alternate seeds all reproduced p = {p1}");
    }

    #[test]
    fn null_pvalues_are_super_uniform() {
        // Both samples from the same distribution: P(p <= alpha) must not
        // exceed alpha by more than the add-one correction plus Monte Carlo
        // noise.
        let reps = 300;
        let alpha = 0.05;
        let b = 100;
        let stat =
            |a: &Sample, b: &Sample| Ok(compute(UnivariateKind::Ks, None, a, b)?.scaled_value());
        let rejections: usize = (0..reps)
            .filter(|&rep| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(777, rep as u64));
                let x = Sample::univariate(
                    &(0..12).map(|_| rng.gen::<f64>()).collect::<Vec<_>>(),
                )
                .unwrap();
                let y = Sample::univariate(
                    &(0..12).map(|_| rng.gen::<f64>()).collect::<Vec<_>>(),
                )
                .unwrap();
                permutation_pvalue(&x, &y, stat, b, derive_seed(778, rep as u64)).unwrap()
                    <= alpha
            })
            .count();
        let rate = rejections as f64 / reps as f64;
        let slack = 1.0 / (b + 1) as f64 + 3.0 * (alpha * (1.0 - alpha) / reps as f64).sqrt();
        assert!(rate <= alpha + slack, "rate {rate} > {}", alpha + slack);
    }

    #[test]
    fn indexed_and_sample_level_drivers_agree() {
        let x = Sample::univariate(&[0.0, 2.0, 4.0]).unwrap();
        let y = Sample::univariate(&[1.0, 3.0]).unwrap();
        let pooled = x.concat(&y).unwrap();
        let stat =
            |a: &Sample, b: &Sample| Ok(compute(UnivariateKind::Ks, None, a, b)?.scaled_value());
        let p_sample = permutation_pvalue(&x, &y, stat, 150, 5).unwrap();
        let t_obs = stat(&x, &y).unwrap();
        let p_indexed = permutation_pvalue_indexed(
            3,
            2,
            t_obs,
            |ix, iy| stat(&pooled.select(ix)?, &pooled.select(iy)?),
            150,
            5,
        )
        .unwrap();
        assert_eq!(p_sample.to_bits(), p_indexed.to_bits());
    }

    #[test]
    fn null_model_validation_and_description() {
        let perm = NullModel::permutation(999, 42).unwrap();
        assert_eq!(perm.describe(), "permutation: 999 resamples, seed 42");
        assert_eq!(perm.kind().functional(), None);

        let bridge = NullModel::bridge(NullModelKind::OdcBridgeL2, 5000, 2048, 7).unwrap();
        assert_eq!(bridge.describe(), "odc-bridge-l2: 5000 paths, grid 2048, seed 7");
        assert_eq!(bridge.kind().functional(), Some(BridgeFunctional::L2));

        assert!(NullModel::bridge(NullModelKind::BridgeSup, 5000, 999, 7).is_err());
        assert!(NullModel::bridge(NullModelKind::BridgeSup, 99, 2048, 7).is_err());
        assert!(NullModel::bridge(NullModelKind::Permutation, 5000, 2048, 7).is_err());
    }

    #[test]
    fn report_round_trips_through_json() {
        let mut report = TestReport::new(
            "ks",
            0.4,
            0.8944,
            0.031,
            0.05,
            "permutation: 999 resamples, seed 1".into(),
            10,
            10,
        )
        .unwrap();
        report.config = serde_json::json!({"stat": "ks", "seed": 1});
        assert!(report.reject);
        assert_eq!(report.schema, "v1");
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: TestReport = serde_json::from_str(&text).unwrap();
        assert_eq!(report, back);
    }

    #[test]
    fn report_rejects_out_of_range_inputs() {
        assert!(TestReport::new("ks", 0.0, 0.0, 0.0, 0.05, String::new(), 1, 1).is_err());
        assert!(TestReport::new("ks", 0.0, 0.0, 1.1, 0.05, String::new(), 1, 1).is_err());
        assert!(TestReport::new("ks", 0.0, 0.0, 0.5, 1.0, String::new(), 1, 1).is_err());
        let report = TestReport::new("ks", 0.0, 0.0, 1.0, 0.05, String::new(), 1, 1).unwrap();
        assert!(!report.reject);
    }
}

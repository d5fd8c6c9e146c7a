//! Power and convergence-rate benchmark harnesses.
//!
//! Both benches are pure functions of their configuration: trial `i` draws
//! data from the substream `derive_seed(seed, i)`, so results are
//! reproducible and independent of thread count.

use crate::calibration::{derive_seed, permutation_pvalue_indexed};
use crate::error::{Error, Result};
use crate::generators::{bench_pair, Generator};
use crate::multivariate::{
    energy_distance, mmd2, smoothed_wasserstein_statistic, KernelSpec,
};
use crate::sample::{euclidean_distance, Sample};
use crate::transport::{cost_matrix, exact_wasserstein_lp};
use crate::univariate::{compute, UnivariateKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest per-sample size accepted by the exact-LP rate experiment.
pub const EXACT_LP_BUDGET: usize = 256;

/// A statistic selectable by name in tests and benchmarks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StatChoice {
    Univariate(UnivariateKind),
    Energy,
    Mmd,
    SmoothedWasserstein,
}

impl StatChoice {
    /// Parses a statistic name as used on the command line.
    pub fn parse(name: &str) -> Result<Self> {
        let choice = match name {
            "ks" => StatChoice::Univariate(UnivariateKind::Ks),
            "pp-l2" => StatChoice::Univariate(UnivariateKind::PpL2),
            "qq-l2" => StatChoice::Univariate(UnivariateKind::QqL2),
            "qq-linf" => StatChoice::Univariate(UnivariateKind::QqLinf),
            "wasserstein" => StatChoice::Univariate(UnivariateKind::WassersteinP),
            "wasserstein-inf" => StatChoice::Univariate(UnivariateKind::WassersteinInf),
            "odc-w2" => StatChoice::Univariate(UnivariateKind::OdcW2),
            "odc-linf" => StatChoice::Univariate(UnivariateKind::OdcLinf),
            "energy" => StatChoice::Energy,
            "mmd" => StatChoice::Mmd,
            "smoothed-wasserstein" => StatChoice::SmoothedWasserstein,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown statistic '{other}' (see --help for the menu)"
                )))
            }
        };
        Ok(choice)
    }

    pub fn name(&self) -> &'static str {
        match self {
            StatChoice::Univariate(kind) => kind.name(),
            StatChoice::Energy => "energy",
            StatChoice::Mmd => "mmd",
            StatChoice::SmoothedWasserstein => "smoothed-wasserstein",
        }
    }

    /// Whether the statistic accepts input of dimension > 1.
    pub fn is_multivariate(&self) -> bool {
        !matches!(self, StatChoice::Univariate(_))
    }
}

/// Statistic parameters shared by the CLI and the benches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatContext {
    /// Order for the Wasserstein and smoothed statistics (default 1).
    pub p: Option<f64>,
    /// Regularization for the smoothed statistic.
    pub lambda: f64,
    /// Kernel bandwidth for MMD; `None` means the pooled median heuristic.
    pub gamma: Option<f64>,
}

impl Default for StatContext {
    fn default() -> Self {
        Self {
            p: None,
            lambda: 1.0,
            gamma: None,
        }
    }
}

/// A statistic and its observed value on the original labeling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluatedStat {
    pub raw: f64,
    pub scaled: f64,
    /// Kernel bandwidth actually used (MMD only).
    pub gamma: Option<f64>,
}

/// Computes the observed statistic through the canonical library functions.
pub fn evaluate_statistic(
    choice: StatChoice,
    ctx: &StatContext,
    x: &Sample,
    y: &Sample,
) -> Result<EvaluatedStat> {
    match choice {
        StatChoice::Univariate(kind) => {
            let stat = compute(kind, ctx.p, x, y)?;
            Ok(EvaluatedStat {
                raw: stat.raw_value(),
                scaled: stat.scaled_value(),
                gamma: None,
            })
        }
        StatChoice::Energy => {
            let value = energy_distance(x, y)?.value();
            Ok(EvaluatedStat {
                raw: value,
                scaled: value,
                gamma: None,
            })
        }
        StatChoice::Mmd => {
            let kernel = match ctx.gamma {
                Some(gamma) => KernelSpec::gaussian(gamma)?,
                None => KernelSpec::median_heuristic(x, y)?,
            };
            let value = mmd2(x, y, &kernel)?.value();
            Ok(EvaluatedStat {
                raw: value,
                scaled: value,
                gamma: Some(kernel.gamma()),
            })
        }
        StatChoice::SmoothedWasserstein => {
            let value =
                smoothed_wasserstein_statistic(x, y, ctx.p.unwrap_or(1.0), ctx.lambda)?.value();
            Ok(EvaluatedStat {
                raw: value,
                scaled: value,
                gamma: None,
            })
        }
    }
}

/// Evaluates one statistic on arbitrary relabelings of a pooled sample.
///
/// For the energy and MMD statistics the pooled pairwise matrix is built
/// once, so each relabeling costs only index sums; the MMD bandwidth comes
/// from the pooled sample and is therefore identical across relabelings.
pub struct PooledEvaluator {
    pooled: Sample,
    choice: StatChoice,
    ctx: StatContext,
    /// Pooled pairwise matrix: distances for energy, kernel values for MMD.
    gram: Option<Vec<f64>>,
}

impl PooledEvaluator {
    pub fn new(x: &Sample, y: &Sample, choice: StatChoice, ctx: &StatContext) -> Result<Self> {
        if !choice.is_multivariate() && x.dim() != 1 {
            return Err(Error::NotUnivariate { dim: x.dim() });
        }
        let pooled = x.concat(y)?;
        let gram = match choice {
            StatChoice::Energy => Some(pairwise(&pooled, |a, b| euclidean_distance(a, b))),
            StatChoice::Mmd => {
                let kernel = match ctx.gamma {
                    Some(gamma) => KernelSpec::gaussian(gamma)?,
                    None => KernelSpec::median_heuristic(x, y)?,
                };
                Some(pairwise(&pooled, |a, b| kernel.evaluate(a, b)))
            }
            _ => None,
        };
        Ok(Self {
            pooled,
            choice,
            ctx: *ctx,
            gram,
        })
    }

    /// Scaled statistic for the relabeling that assigns pooled indices `ix`
    /// to the first group and `iy` to the second.
    pub fn evaluate(&self, ix: &[usize], iy: &[usize]) -> Result<f64> {
        match self.choice {
            StatChoice::Energy => {
                let d = self.gram.as_ref().expect("gram built for energy");
                Ok(self.gram_energy(d, ix, iy))
            }
            StatChoice::Mmd => {
                let k = self.gram.as_ref().expect("gram built for mmd");
                Ok(quadrant_mean(k, self.pooled.len(), ix, ix)
                    + quadrant_mean(k, self.pooled.len(), iy, iy)
                    - 2.0 * quadrant_mean(k, self.pooled.len(), ix, iy))
            }
            StatChoice::Univariate(kind) => {
                let x = self.pooled.select(ix)?;
                let y = self.pooled.select(iy)?;
                Ok(compute(kind, self.ctx.p, &x, &y)?.scaled_value())
            }
            StatChoice::SmoothedWasserstein => {
                let x = self.pooled.select(ix)?;
                let y = self.pooled.select(iy)?;
                Ok(smoothed_wasserstein_statistic(
                    &x,
                    &y,
                    self.ctx.p.unwrap_or(1.0),
                    self.ctx.lambda,
                )?
                .value())
            }
        }
    }

    fn gram_energy(&self, d: &[f64], ix: &[usize], iy: &[usize]) -> f64 {
        let total = self.pooled.len();
        2.0 * quadrant_mean(d, total, ix, iy)
            - quadrant_mean(d, total, ix, ix)
            - quadrant_mean(d, total, iy, iy)
    }
}

fn pairwise(pooled: &Sample, f: impl Fn(&[f64], &[f64]) -> f64) -> Vec<f64> {
    let total = pooled.len();
    let mut entries = Vec::with_capacity(total * total);
    for i in 0..total {
        for j in 0..total {
            entries.push(f(pooled.point(i), pooled.point(j)));
        }
    }
    entries
}

fn quadrant_mean(matrix: &[f64], total: usize, rows: &[usize], cols: &[usize]) -> f64 {
    let mut sum = 0.0;
    for &i in rows {
        let row = &matrix[i * total..(i + 1) * total];
        for &j in cols {
            sum += row[j];
        }
    }
    sum / (rows.len() as f64 * cols.len() as f64)
}

/// Configuration for the power benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerBenchConfig {
    /// Generator pair name: `uniform-shift`, `normal-mean-shift`, or
    /// `normal-scale-shift`.
    pub pair: String,
    /// Separation parameter; 0 reproduces the null.
    pub delta: f64,
    pub dim: usize,
    /// Per-group sample sizes to sweep (n = m at each size).
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub alpha: f64,
    /// Permutation resamples per trial.
    pub permutations: usize,
    pub seed: u64,
    pub statistics: Vec<StatChoice>,
    pub context: StatContext,
}

/// One cell of the power table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerRow {
    pub statistic: String,
    pub n: usize,
    pub dim: usize,
    pub delta: f64,
    pub trials: usize,
    pub rejection_rate: f64,
}

/// Estimates rejection rates per (statistic, sample size) for a generator
/// pair at separation `delta`, using permutation calibration throughout.
///
/// All statistics within a trial see the same data and the same relabeling
/// stream, so cross-statistic comparisons are paired.
pub fn power_bench(config: &PowerBenchConfig) -> Result<Vec<PowerRow>> {
    if config.sizes.is_empty() || config.statistics.is_empty() {
        return Err(Error::InvalidConfig(
            "power bench needs at least one size and one statistic".into(),
        ));
    }
    if !(config.alpha > 0.0 && config.alpha < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "alpha must lie in (0, 1), got {}",
            config.alpha
        )));
    }
    if config.trials == 0 {
        return Err(Error::InvalidConfig("trials must be positive".into()));
    }
    if config.dim == 0 {
        return Err(Error::NotUnivariate { dim: 0 });
    }
    if config.dim > 1 {
        if let Some(choice) = config.statistics.iter().find(|c| !c.is_multivariate()) {
            return Err(Error::InvalidConfig(format!(
                "statistic '{}' is univariate but dim = {}",
                choice.name(),
                config.dim
            )));
        }
    }
    let pair = bench_pair(&config.pair, config.delta)?;
    let mut rows = Vec::new();
    for (si, &n) in config.sizes.iter().enumerate() {
        let identity: Vec<usize> = (0..2 * n).collect();
        let decisions: Vec<Vec<bool>> = (0..config.trials)
            .into_par_iter()
            .map(|t| {
                let trial = (si * config.trials + t) as u64;
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, 2 * trial));
                let x = pair.null.sample(&mut rng, n, config.dim)?;
                let y = pair.alternative.sample(&mut rng, n, config.dim)?;
                let perm_seed = derive_seed(config.seed, 2 * trial + 1);
                config
                    .statistics
                    .iter()
                    .map(|&choice| {
                        let evaluator = PooledEvaluator::new(&x, &y, choice, &config.context)?;
                        let t_obs = evaluator.evaluate(&identity[..n], &identity[n..])?;
                        let p = permutation_pvalue_indexed(
                            n,
                            n,
                            t_obs,
                            |ix, iy| evaluator.evaluate(ix, iy),
                            config.permutations,
                            perm_seed,
                        )?;
                        Ok(p <= config.alpha)
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for (k, choice) in config.statistics.iter().enumerate() {
            let rejections = decisions.iter().filter(|trial| trial[k]).count();
            rows.push(PowerRow {
                statistic: choice.name().to_string(),
                n,
                dim: config.dim,
                delta: config.delta,
                trials: config.trials,
                rejection_rate: rejections as f64 / config.trials as f64,
            });
        }
    }
    Ok(rows)
}

/// Configuration for the convergence-rate experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct RateBenchConfig {
    /// Base generator; both samples are drawn from it, so the population
    /// distance is zero and the mean empirical distance is pure
    /// finite-sample error.
    pub generator: Generator,
    /// Dimensions to sweep, each in 1..=4.
    pub dims: Vec<usize>,
    /// Per-sample sizes, each within the exact-LP budget; at least three
    /// for the slope fit.
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

/// One cell of the rate table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateCell {
    pub dim: usize,
    pub n: usize,
    pub mean_w1: f64,
}

/// Full rate report: per-(dim, n) means and the fitted log-log slope per
/// dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub cells: Vec<RateCell>,
    /// `(dim, slope)` pairs from least-squares on `ln n` vs `ln mean`.
    pub slopes: Vec<(usize, f64)>,
}

impl RateReport {
    pub fn slope_for(&self, dim: usize) -> Option<f64> {
        self.slopes
            .iter()
            .find(|(d, _)| *d == dim)
            .map(|(_, s)| *s)
    }
}

/// Measures how fast the exact empirical W1 distance between two samples of
/// the same law decays with n, per dimension.
///
/// Dimension 2 is reported like any other but its theoretical decay carries
/// a logarithmic factor, so its fitted pure-power slope is biased; treat it
/// as descriptive.
pub fn rate_bench(config: &RateBenchConfig) -> Result<RateReport> {
    if let Some(&n) = config.sizes.iter().find(|&&n| n > EXACT_LP_BUDGET) {
        return Err(Error::LpBudgetExceeded {
            n,
            limit: EXACT_LP_BUDGET,
        });
    }
    if config.sizes.len() < 3 {
        return Err(Error::SlopeGridTooSmall {
            got: config.sizes.len(),
        });
    }
    if config.sizes.iter().any(|&n| n == 0) {
        return Err(Error::EmptySample);
    }
    if config.dims.is_empty() || config.dims.iter().any(|&d| !(1..=4).contains(&d)) {
        return Err(Error::InvalidConfig(
            "rate bench dimensions must lie in 1..=4".into(),
        ));
    }
    if config.trials == 0 {
        return Err(Error::InvalidConfig("trials must be positive".into()));
    }
    let mut cells = Vec::new();
    let mut slopes = Vec::new();
    for (di, &dim) in config.dims.iter().enumerate() {
        let mut means = Vec::with_capacity(config.sizes.len());
        for (si, &n) in config.sizes.iter().enumerate() {
            let block = (di * config.sizes.len() + si) * config.trials;
            let values: Vec<f64> = (0..config.trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(derive_seed(config.seed, (block + t) as u64));
                    let x = config.generator.sample(&mut rng, n, dim)?;
                    let y = config.generator.sample(&mut rng, n, dim)?;
                    let cost = cost_matrix(&x, &y, 1.0)?;
                    Ok(exact_wasserstein_lp(&cost)?.0)
                })
                .collect::<Result<Vec<f64>>>()?;
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            means.push(mean);
            cells.push(RateCell { dim, n, mean_w1: mean });
        }
        slopes.push((dim, log_log_slope(&config.sizes, &means)));
    }
    Ok(RateReport { cells, slopes })
}

/// Least-squares slope of `ln(means)` against `ln(sizes)`.
fn log_log_slope(sizes: &[usize], means: &[f64]) -> f64 {
    let lx: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ly: Vec<f64> = means.iter().map(|&m| m.ln()).collect();
    let mx = lx.iter().sum::<f64>() / lx.len() as f64;
    let my = ly.iter().sum::<f64>() / ly.len() as f64;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

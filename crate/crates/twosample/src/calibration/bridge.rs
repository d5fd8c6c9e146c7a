//! Brownian-bridge functionals, simulated quantile tables, and the
//! distribution-freeness check.

use super::{derive_seed, MIN_GRID, MIN_RESAMPLES};
use crate::error::{Error, Result};
use crate::generators::Generator;
use crate::sample::Sample;
use crate::univariate::{compute, ks_statistic, UnivariateKind, UnivariateStatistic};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// A functional of the Brownian bridge whose law calibrates a scaled
/// distribution-free statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BridgeFunctional {
    /// `sup_{t in [0,1]} |B(t)|` — the limit of the scaled KS and ODC-sup
    /// statistics.
    SupAbs,
    /// `integral_0^1 B(t)^2 dt` — the limit of the scaled ODC-W2 statistic.
    L2,
}

impl BridgeFunctional {
    pub fn name(&self) -> &'static str {
        match self {
            BridgeFunctional::SupAbs => "sup-abs",
            BridgeFunctional::L2 => "l2",
        }
    }
}

/// Maps a statistic kind to the bridge functional of its null limit.
///
/// Only the distribution-free statistics have one; everything else must be
/// calibrated by permutation.
pub fn bridge_functional_for(kind: UnivariateKind) -> Result<BridgeFunctional> {
    match kind {
        UnivariateKind::Ks | UnivariateKind::OdcLinf => Ok(BridgeFunctional::SupAbs),
        UnivariateKind::OdcW2 => Ok(BridgeFunctional::L2),
        other => Err(Error::AsymptoticUnavailable {
            kind: other.name().to_string(),
        }),
    }
}

/// An empirical quantile table: the sorted values of a simulated null
/// distribution. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileTable {
    values: Vec<f64>,
}

impl QuantileTable {
    /// Builds a table from simulated values (sorted internally).
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientPaths { got: 0, min: 1 });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig(
                "quantile table values must be finite".into(),
            ));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sorted simulated values, ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Empirical `q`-quantile (left-continuous order statistic, `0 < q <= 1`).
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::QuantileLevelOutOfRange { t: q });
        }
        let n = self.values.len();
        let k = (q * n as f64).ceil() as usize;
        Ok(self.values[k.clamp(1, n) - 1])
    }

    /// Mean of the simulated values.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Add-one-corrected exceedance probability of `t` under the table:
    /// `(1 + #{v >= t}) / (len + 1)`.
    pub fn exceedance_pvalue(&self, t: f64) -> f64 {
        let below = self.values.partition_point(|&v| v < t);
        let exceed = self.values.len() - below;
        (1 + exceed) as f64 / (self.values.len() + 1) as f64
    }

    /// Writes the table as `alpha,quantile` rows, where row `k` (1-based)
    /// carries `alpha = k/len` and the `k`-th smallest value. The value
    /// formatting round-trips exactly, so `read_csv` reconstructs the table
    /// losslessly.
    pub fn write_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "alpha,quantile")?;
        let n = self.values.len() as f64;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{},{}", (i + 1) as f64 / n, v)?;
        }
        Ok(())
    }

    /// Reads a table written by [`write_csv`](Self::write_csv). `label` is
    /// used in error messages (typically the file path).
    pub fn read_csv(reader: impl BufRead, label: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::Parse {
                path: label.to_string(),
                line: idx + 1,
                reason: e.to_string(),
            })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || (idx == 0 && trimmed.starts_with("alpha")) {
                continue;
            }
            let mut parts = trimmed.split(',');
            let (alpha, value) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(v), None) => (a, v),
                _ => {
                    return Err(Error::Parse {
                        path: label.to_string(),
                        line: idx + 1,
                        reason: "expected two comma-separated columns".into(),
                    })
                }
            };
            alpha.trim().parse::<f64>().map_err(|_| Error::Parse {
                path: label.to_string(),
                line: idx + 1,
                reason: format!("invalid alpha '{}'", alpha.trim()),
            })?;
            let value: f64 = value.trim().parse().map_err(|_| Error::Parse {
                path: label.to_string(),
                line: idx + 1,
                reason: format!("invalid quantile '{}'", value.trim()),
            })?;
            values.push(value);
        }
        if values.is_empty() {
            return Err(Error::Parse {
                path: label.to_string(),
                line: 1,
                reason: "empty quantile table".into(),
            });
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parse {
                path: label.to_string(),
                line: 1,
                reason: "quantile column must be nondecreasing".into(),
            });
        }
        Self::new(values)
    }
}

/// Simulates `num_paths` Brownian-bridge paths on a uniform grid and returns
/// the empirical table of the requested functional.
///
/// Each path is `B(t) = W(t) - t W(1)` with `W` built from Gaussian
/// increments on `grid_size` steps. The sup functional is the max of `|B|`
/// over grid points; the L2 functional is the trapezoidal integral of `B^2`
/// (both endpoints are exactly zero). Path `i` uses the substream
/// `derive_seed(seed, i)`, so the table is independent of thread count.
pub fn simulate_bridge_functional(
    functional: BridgeFunctional,
    num_paths: usize,
    grid_size: usize,
    seed: u64,
) -> Result<QuantileTable> {
    if num_paths < MIN_RESAMPLES {
        return Err(Error::InsufficientPaths {
            got: num_paths,
            min: MIN_RESAMPLES,
        });
    }
    if grid_size < MIN_GRID {
        return Err(Error::GridTooCoarse {
            got: grid_size,
            min: MIN_GRID,
        });
    }
    let step = 1.0 / grid_size as f64;
    let sqrt_step = step.sqrt();
    let values: Vec<f64> = (0..num_paths)
        .into_par_iter()
        .map_init(
            || vec![0.0f64; grid_size + 1],
            |walk, i| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
                for k in 1..=grid_size {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    walk[k] = walk[k - 1] + z * sqrt_step;
                }
                let end = walk[grid_size];
                match functional {
                    BridgeFunctional::SupAbs => (0..=grid_size)
                        .map(|k| (walk[k] - k as f64 * step * end).abs())
                        .fold(0.0, f64::max),
                    BridgeFunctional::L2 => {
                        let bridge_sq =
                            |k: usize| (walk[k] - k as f64 * step * end).powi(2);
                        let mut acc = 0.0;
                        for k in 1..=grid_size {
                            acc += 0.5 * (bridge_sq(k - 1) + bridge_sq(k)) * step;
                        }
                        acc
                    }
                }
            },
        )
        .collect();
    QuantileTable::new(values)
}

/// Asymptotic p-value of a scaled distribution-free statistic against a
/// simulated bridge table.
///
/// Only KS and the ODC statistics converge to a pivotal bridge functional;
/// every other kind is rejected with a pointer to permutation calibration.
pub fn asymptotic_pvalue(stat: &UnivariateStatistic, table: &QuantileTable) -> Result<f64> {
    bridge_functional_for(stat.kind())?;
    Ok(table.exceedance_pvalue(stat.scaled_value()))
}

/// Measures how far a statistic's null distribution is from being
/// distribution-free.
///
/// Simulates `trials` null draws of the scaled statistic (both samples from
/// the same generator) under each generator and returns the maximum pairwise
/// Kolmogorov–Smirnov distance between the resulting empirical laws. For a
/// genuinely distribution-free statistic this is pure Monte Carlo noise.
pub fn distribution_free_check(
    kind: UnivariateKind,
    p: Option<f64>,
    generators: &[Generator],
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if generators.len() < 2 {
        return Err(Error::InvalidConfig(
            "distribution-free check needs at least two generators".into(),
        ));
    }
    let mut null_laws = Vec::with_capacity(generators.len());
    for (gi, generator) in generators.iter().enumerate() {
        let values: Vec<f64> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let trial = (gi * trials + t) as u64;
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, trial));
                let x = generator.sample(&mut rng, n, 1)?;
                let y = generator.sample(&mut rng, m, 1)?;
                Ok(compute(kind, p, &x, &y)?.scaled_value())
            })
            .collect::<Result<Vec<f64>>>()?;
        null_laws.push(Sample::univariate(&values)?);
    }
    let mut worst = 0.0f64;
    for i in 0..null_laws.len() {
        for j in (i + 1)..null_laws.len() {
            let gap = ks_statistic(&null_laws[i], &null_laws[j])?.raw_value();
            worst = worst.max(gap);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn quantile_table_conventions() {
        let table = QuantileTable::new(vec![3.0, 1.0, 4.0, 2.0]).unwrap();
        assert_eq!(table.values(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(table.quantile(0.25).unwrap(), 1.0);
        assert_eq!(table.quantile(0.5).unwrap(), 2.0);
        assert_eq!(table.quantile(0.95).unwrap(), 4.0);
        assert_eq!(table.quantile(1.0).unwrap(), 4.0);
        assert!(table.quantile(0.0).is_err());
        // Exceedance: values >= 2.5 are {3, 4}.
        assert_eq!(table.exceedance_pvalue(2.5), 3.0 / 5.0);
        assert_eq!(table.exceedance_pvalue(0.0), 1.0);
        assert_eq!(table.exceedance_pvalue(10.0), 1.0 / 5.0);
        assert_eq!(table.mean(), 2.5);
    }

    #[test]
    fn table_csv_round_trip_is_lossless() {
        let values: Vec<f64> = (0..500)
            .map(|i| (i as f64 * 0.7318).sin() * 1.3 + 2.0)
            .collect();
        let table = QuantileTable::new(values).unwrap();
        let mut buffer = Vec::new();
        table.write_csv(&mut buffer).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        assert!(text.starts_with("alpha,quantile\n"));
        let back = QuantileTable::read_csv(text.as_bytes(), "test").unwrap();
        assert_eq!(table.values().len(), back.values().len());
        for (a, b) in table.values().iter().zip(back.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn table_csv_rejects_malformed_input() {
        let err = QuantileTable::read_csv("alpha,quantile\n0.5,abc\n".as_bytes(), "t.csv")
            .unwrap_err();
        assert!(err.to_string().contains("t.csv:2"));
        assert!(QuantileTable::read_csv("alpha,quantile\n".as_bytes(), "t").is_err());
        assert!(QuantileTable::read_csv("0.5,2.0,9\n".as_bytes(), "t").is_err());
        // Decreasing quantile column.
        assert!(
            QuantileTable::read_csv("0.5,2.0\n1.0,1.0\n".as_bytes(), "t").is_err()
        );
    }

    #[test]
    fn bridge_simulation_validates_inputs() {
        assert!(simulate_bridge_functional(BridgeFunctional::SupAbs, 99, 2048, 0).is_err());
        assert!(simulate_bridge_functional(BridgeFunctional::SupAbs, 1000, 999, 0).is_err());
    }

    #[test]
    fn bridge_tables_are_deterministic() {
        let a = simulate_bridge_functional(BridgeFunctional::L2, 200, 1000, 9).unwrap();
        let b = simulate_bridge_functional(BridgeFunctional::L2, 200, 1000, 9).unwrap();
        assert_eq!(a, b);
        let c = simulate_bridge_functional(BridgeFunctional::L2, 200, 1000, 10).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn bridge_functionals_match_known_moments() {
        // Small-scale smoke check; the tight anchors run in the acceptance
        // suite with 10^5 paths.
        let sup = simulate_bridge_functional(BridgeFunctional::SupAbs, 20_000, 2048, 1).unwrap();
        assert_abs_diff_eq!(sup.quantile(0.95).unwrap(), 1.358, epsilon = 0.03);
        let l2 = simulate_bridge_functional(BridgeFunctional::L2, 20_000, 1024, 2).unwrap();
        assert_abs_diff_eq!(l2.mean(), 1.0 / 6.0, epsilon = 0.005);
        assert_abs_diff_eq!(l2.quantile(0.95).unwrap(), 0.461, epsilon = 0.015);
        // Every functional value is nonnegative.
        assert!(sup.values()[0] >= 0.0);
        assert!(l2.values()[0] >= 0.0);
    }

    #[test]
    fn asymptotic_pvalue_rules() {
        let x = Sample::univariate(&[0.1, 0.4, 0.8]).unwrap();
        let y = Sample::univariate(&[0.2, 0.5, 0.9]).unwrap();
        let table = simulate_bridge_functional(BridgeFunctional::SupAbs, 1000, 1000, 3).unwrap();

        // Distribution-dependent statistics are refused.
        let pp = compute(UnivariateKind::PpL2, None, &x, &y).unwrap();
        let err = asymptotic_pvalue(&pp, &table).unwrap_err();
        assert!(err
            .to_string()
            .contains("asymptotic calibration unavailable"));
        assert!(err.to_string().contains("use permutation"));

        // Zero statistic exceeds nothing: p = 1.
        let ks = compute(UnivariateKind::Ks, None, &x, &x).unwrap();
        assert_eq!(asymptotic_pvalue(&ks, &table).unwrap(), 1.0);

        // A value above the table max gets the add-one floor.
        let disjoint_x = Sample::univariate(&(0..80).map(f64::from).collect::<Vec<_>>()).unwrap();
        let disjoint_y =
            Sample::univariate(&(100..180).map(f64::from).collect::<Vec<_>>()).unwrap();
        let ks = compute(UnivariateKind::Ks, None, &disjoint_x, &disjoint_y).unwrap();
        assert_eq!(asymptotic_pvalue(&ks, &table).unwrap(), 1.0 / 1001.0);
    }

    #[test]
    fn pvalue_at_table_quantile_is_alpha() {
        let table = simulate_bridge_functional(BridgeFunctional::L2, 2000, 1000, 4).unwrap();
        let q95 = table.quantile(0.95).unwrap();
        let p = table.exceedance_pvalue(q95);
        assert_abs_diff_eq!(p, 0.05, epsilon = 0.01);
    }

    #[test]
    fn distribution_free_check_contrasts_ks_with_qq() {
        let generators = [Generator::Uniform, Generator::Exponential];
        // KS is exactly distribution-free: discrepancy is Monte Carlo noise.
        let free = distribution_free_check(UnivariateKind::Ks, None, &generators, 30, 30, 1000, 5)
            .unwrap();
        assert!(free < 0.07, "KS discrepancy {free}");
        // QQ-sup depends on the underlying distribution.
        let dependent = distribution_free_check(
            UnivariateKind::QqLinf,
            None,
            &generators,
            30,
            30,
            1000,
            5,
        )
        .unwrap();
        assert!(dependent > 0.05, "QQ-sup discrepancy {dependent}");
        assert!(dependent > free);
        // Need two generators.
        assert!(
            distribution_free_check(UnivariateKind::Ks, None, &generators[..1], 30, 30, 1000, 5)
                .is_err()
        );
    }
}

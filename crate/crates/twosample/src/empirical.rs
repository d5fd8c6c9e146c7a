//! Empirical distribution functions and the step-function curves built from
//! them.
//!
//! The conventions used throughout the crate are fixed here once:
//!
//! * the empirical CDF `F_n(x) = #{i : X_i <= x} / n` is right-continuous;
//! * the empirical quantile function is the left-continuous generalized
//!   inverse `F_n^{-1}(t) = X_(ceil(t n))` for `t` in `(0, 1]`, so that the
//!   Galois relation `F_n^{-1}(t) <= x  <=>  t <= F_n(x)` holds;
//! * curves on `[0, 1]` (ordinal dominance and ROC) are piecewise-constant
//!   step functions taking their interval value on `(t_lo, t_hi]`.

use crate::error::{Error, Result};
use crate::sample::Sample;

/// Sorted view of a univariate sample with CDF and quantile evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    sorted: Vec<f64>,
}

impl EmpiricalDistribution {
    /// Sorts a copy of `values` (duplicates preserved).
    pub fn new(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { row: pos + 1 });
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { sorted })
    }

    /// Builds from a univariate [`Sample`].
    pub fn from_sample(sample: &Sample) -> Result<Self> {
        Self::new(sample.values_1d()?)
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Order statistics in nondecreasing order.
    pub fn sorted_values(&self) -> &[f64] {
        &self.sorted
    }

    /// Right-continuous empirical CDF: the fraction of values `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        let below = self.sorted.partition_point(|v| *v <= x);
        below as f64 / self.sorted.len() as f64
    }

    /// Left-continuous empirical quantile `X_(ceil(t n))` for `t` in `(0, 1]`.
    pub fn quantile(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::QuantileLevelOutOfRange { t });
        }
        let n = self.sorted.len();
        let k = (t * n as f64).ceil() as usize;
        Ok(self.sorted[k.clamp(1, n) - 1])
    }

    pub fn min_value(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max_value(&self) -> f64 {
        *self.sorted.last().unwrap()
    }
}

/// Piecewise-constant function on `[0, 1]`.
///
/// `breakpoints` has one more entry than `values`, starts at `0`, ends at `1`
/// and is strictly increasing; piece `k` takes `values[k]` on
/// `(breakpoints[k], breakpoints[k + 1]]` (and at `t = 0` for the first
/// piece). This is the single exchange format for curve export.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidStepFunction {
            reason: reason.to_string(),
        };
        if breakpoints.len() != values.len() + 1 {
            return Err(invalid("need exactly one more breakpoint than values"));
        }
        if values.is_empty() {
            return Err(invalid("need at least one piece"));
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return Err(invalid("breakpoints must start at 0 and end at 1"));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(invalid("breakpoints must be strictly increasing"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("values must be finite"));
        }
        Ok(Self {
            breakpoints,
            values,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Evaluates the function at `t` (clamped to `[0, 1]`).
    pub fn value_at(&self, t: f64) -> f64 {
        let below = self.breakpoints.partition_point(|b| *b < t);
        let piece = below.saturating_sub(1).min(self.values.len() - 1);
        self.values[piece]
    }

    /// Iterates over `(t_lo, t_hi, value)` triples, one per piece.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, v)| (w[0], w[1], *v))
    }

    /// Exact integral over `[0, 1]`.
    pub fn integral(&self) -> f64 {
        self.pieces().map(|(lo, hi, v)| (hi - lo) * v).sum()
    }

    /// Writes the curve as CSV with header `t_lo,t_hi,value`.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "t_lo,t_hi,value")?;
        for (lo, hi, v) in self.pieces() {
            writeln!(w, "{lo},{hi},{v}")?;
        }
        Ok(())
    }
}

/// Ordinal dominance curve `t -> G_m(F_n^{-1}(t))` of two univariate samples.
///
/// The curve is constant on `((k - 1)/n, k/n]` with value `G_m(X_(k))`, where
/// `X_(k)` runs over the order statistics of the first sample.
pub fn odc_curve(x: &EmpiricalDistribution, y: &EmpiricalDistribution) -> StepFunction {
    let n = x.len();
    let breakpoints = (0..=n).map(|k| k as f64 / n as f64).collect();
    let values = x.sorted_values().iter().map(|&v| y.cdf(v)).collect();
    StepFunction::new(breakpoints, values).expect("ODC grid is always valid")
}

/// Empirical ROC curve `t -> 1 - F_n(G_m^{-1}(1 - t))`, the ordinal dominance
/// curve with both axes reversed.
pub fn roc_curve(x: &EmpiricalDistribution, y: &EmpiricalDistribution) -> StepFunction {
    let m = y.len();
    let breakpoints = (0..=m).map(|j| j as f64 / m as f64).collect();
    // Piece j covers t in ((j - 1)/m, j/m]; there 1 - t lies strictly inside
    // ((m - j)/m, (m - j + 1)/m), so the inner quantile is Y_(m - j + 1).
    let values = (1..=m)
        .map(|j| 1.0 - x.cdf(y.sorted_values()[m - j]))
        .collect();
    StepFunction::new(breakpoints, values).expect("ROC grid is always valid")
}

/// Area under a curve on `[0, 1]`: the exact integral of the step function.
///
/// For [`roc_curve`] this equals the pair-counting estimate
/// `#{(i, j) : Y_j < X_i} / (n m)`.
pub fn auc(curve: &StepFunction) -> f64 {
    curve.integral()
}

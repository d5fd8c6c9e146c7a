//! Univariate two-sample statistics.
//!
//! All statistics compare the empirical distributions of two real samples
//! either on the probability axis (Kolmogorov-Smirnov, PP-type integrals,
//! ordinal dominance deviations) or on the quantile axis (QQ-type suprema and
//! the order-`p` transport distance, which in one dimension is an exact
//! quantile-function integral).
//!
//! Every statistic records its *raw* value together with the sample-size
//! scale factor (`m n / (m + n)` or its square root) used by asymptotic
//! calibration; [`UnivariateStatistic::scaled_value`] combines the two.
//! Permutation calibration and the acceptance checks consume the scaled
//! value uniformly, which for fixed `(n, m)` orders relabelings exactly like
//! the raw value.

use crate::empirical::{odc_curve, EmpiricalDistribution};
use crate::error::{Error, Result};
use crate::sample::Sample;

/// Identifies a univariate statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnivariateKind {
    /// Scaled supremum of `|F_n - G_m|`.
    Ks,
    /// Scaled integral of `(F_n - G_m)^2` over the pooled range.
    PpL2,
    /// Scaled integral of `(F_n^{-1} - G_m^{-1})^2` over `(0, 1]`.
    QqL2,
    /// Scaled supremum of `|F_n^{-1} - G_m^{-1}|`.
    QqLinf,
    /// `W_p^p`: integral of `|F_n^{-1} - G_m^{-1}|^p` (unscaled).
    WassersteinP,
    /// `W_inf`: supremum of `|F_n^{-1} - G_m^{-1}|` (unscaled).
    WassersteinInf,
    /// Scaled integral of `(ODC(t) - t)^2`.
    OdcW2,
    /// Scaled supremum of `|ODC(t) - t|`.
    OdcLinf,
}

impl UnivariateKind {
    pub fn name(&self) -> &'static str {
        match self {
            UnivariateKind::Ks => "ks",
            UnivariateKind::PpL2 => "pp-l2",
            UnivariateKind::QqL2 => "qq-l2",
            UnivariateKind::QqLinf => "qq-linf",
            UnivariateKind::WassersteinP => "wasserstein",
            UnivariateKind::WassersteinInf => "wasserstein-inf",
            UnivariateKind::OdcW2 => "odc-w2",
            UnivariateKind::OdcLinf => "odc-linf",
        }
    }

    /// Kinds whose null distribution depends on the data only through ranks,
    /// hence is the same for every continuous generating distribution.
    pub fn is_distribution_free(&self) -> bool {
        matches!(
            self,
            UnivariateKind::Ks | UnivariateKind::OdcW2 | UnivariateKind::OdcLinf
        )
    }
}

/// A computed univariate statistic: raw value plus explicit scale factor.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariateStatistic {
    kind: UnivariateKind,
    p: Option<f64>,
    raw: f64,
    scale: f64,
}

impl UnivariateStatistic {
    pub fn kind(&self) -> UnivariateKind {
        self.kind
    }

    /// Transport order, for the `W_p` family.
    pub fn p(&self) -> Option<f64> {
        self.p
    }

    /// Statistic before sample-size scaling. Always nonnegative.
    pub fn raw_value(&self) -> f64 {
        self.raw
    }

    /// The factor `m n / (m + n)` (or its square root) recorded explicitly;
    /// `1` for the unscaled transport distances.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `raw_value * scale`, the quantity consumed by calibration.
    pub fn scaled_value(&self) -> f64 {
        self.raw * self.scale
    }
}

fn empirical_pair(
    x: &Sample,
    y: &Sample,
) -> Result<(EmpiricalDistribution, EmpiricalDistribution)> {
    Ok((
        EmpiricalDistribution::from_sample(x)?,
        EmpiricalDistribution::from_sample(y)?,
    ))
}

fn scale_linear(n: usize, m: usize) -> f64 {
    (n * m) as f64 / (n + m) as f64
}

fn scale_sqrt(n: usize, m: usize) -> f64 {
    scale_linear(n, m).sqrt()
}

/// Walks the common refinement `{k/n} U {j/m}` of the two quantile grids,
/// calling `f(t_lo, t_hi, x_quantile, y_quantile)` once per interval. Both
/// quantile functions are constant on each interval.
pub(crate) fn refinement_intervals(
    x: &EmpiricalDistribution,
    y: &EmpiricalDistribution,
    mut f: impl FnMut(f64, f64, f64, f64),
) {
    let (n, m) = (x.len(), y.len());
    let (mut k, mut j) = (1usize, 1usize);
    let mut t_prev = 0.0;
    while t_prev < 1.0 {
        let tk = k as f64 / n as f64;
        let tj = j as f64 / m as f64;
        let t_next = tk.min(tj);
        f(
            t_prev,
            t_next,
            x.sorted_values()[k - 1],
            y.sorted_values()[j - 1],
        );
        if tk == t_next {
            k += 1;
        }
        if tj == t_next {
            j += 1;
        }
        t_prev = t_next;
    }
}

/// Kolmogorov-Smirnov: `sqrt(mn/(m+n)) * sup_x |F_n(x) - G_m(x)|`.
///
/// The supremum over the whole line is attained at a pooled sample point
/// because both CDFs are right-continuous steps.
pub fn ks_statistic(x: &Sample, y: &Sample) -> Result<UnivariateStatistic> {
    let (ex, ey) = empirical_pair(x, y)?;
    let mut sup = 0.0f64;
    for &z in ex.sorted_values().iter().chain(ey.sorted_values()) {
        sup = sup.max((ex.cdf(z) - ey.cdf(z)).abs());
    }
    Ok(UnivariateStatistic {
        kind: UnivariateKind::Ks,
        p: None,
        raw: sup,
        scale: scale_sqrt(ex.len(), ey.len()),
    })
}

/// PP-type L2 statistic: `mn/(m+n) * integral of (F_n - G_m)^2` over the
/// pooled sample range `[min, max]` (outside it the difference vanishes).
pub fn pp_l2_statistic(x: &Sample, y: &Sample) -> Result<UnivariateStatistic> {
    let (ex, ey) = empirical_pair(x, y)?;
    let mut pooled: Vec<f64> = ex
        .sorted_values()
        .iter()
        .chain(ey.sorted_values())
        .copied()
        .collect();
    pooled.sort_by(f64::total_cmp);
    pooled.dedup();
    let mut integral = 0.0;
    for w in pooled.windows(2) {
        let diff = ex.cdf(w[0]) - ey.cdf(w[0]);
        integral += diff * diff * (w[1] - w[0]);
    }
    Ok(UnivariateStatistic {
        kind: UnivariateKind::PpL2,
        p: None,
        raw: integral,
        scale: scale_linear(ex.len(), ey.len()),
    })
}

/// `W_p^p` between the two empirical distributions: the exact integral
/// `int_0^1 |F_n^{-1}(t) - G_m^{-1}(t)|^p dt` over the common refinement of
/// the quantile grids. `W_p` itself is `raw_value^(1/p)`.
pub fn wasserstein_1d(x: &Sample, y: &Sample, p: f64) -> Result<UnivariateStatistic> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidOrder { p });
    }
    let (ex, ey) = empirical_pair(x, y)?;
    let mut integral = 0.0;
    refinement_intervals(&ex, &ey, |lo, hi, qx, qy| {
        let gap = (qx - qy).abs();
        let term = if p == 1.0 { gap } else { gap.powf(p) };
        integral += term * (hi - lo);
    });
    Ok(UnivariateStatistic {
        kind: UnivariateKind::WassersteinP,
        p: Some(p),
        raw: integral,
        scale: 1.0,
    })
}

/// `W_inf`: the supremum of `|F_n^{-1} - G_m^{-1}|` over `(0, 1]`.
pub fn wasserstein_inf_1d(x: &Sample, y: &Sample) -> Result<UnivariateStatistic> {
    let (ex, ey) = empirical_pair(x, y)?;
    let mut sup = 0.0f64;
    refinement_intervals(&ex, &ey, |_, _, qx, qy| {
        sup = sup.max((qx - qy).abs());
    });
    Ok(UnivariateStatistic {
        kind: UnivariateKind::WassersteinInf,
        p: None,
        raw: sup,
        scale: 1.0,
    })
}

/// QQ-type L2 statistic: the `W_2^2` integral with the `mn/(m+n)` scale.
pub fn qq_l2_statistic(x: &Sample, y: &Sample) -> Result<UnivariateStatistic> {
    let w = wasserstein_1d(x, y, 2.0)?;
    Ok(UnivariateStatistic {
        kind: UnivariateKind::QqL2,
        p: None,
        raw: w.raw,
        scale: scale_linear(x.len(), y.len()),
    })
}

/// QQ-type sup statistic: `sqrt(mn/(m+n)) * W_inf`.
pub fn qq_linf_statistic(x: &Sample, y: &Sample) -> Result<UnivariateStatistic> {
    let w = wasserstein_inf_1d(x, y)?;
    Ok(UnivariateStatistic {
        kind: UnivariateKind::QqLinf,
        p: None,
        raw: w.raw,
        scale: scale_sqrt(x.len(), y.len()),
    })
}

/// Ordinal dominance L2 statistic:
/// `mn/(m+n) * int_0^1 (ODC(t) - t)^2 dt`, evaluated in closed form on each
/// constant piece of the curve.
pub fn odc_w2_statistic(x: &Sample, y: &Sample) -> Result<UnivariateStatistic> {
    let (ex, ey) = empirical_pair(x, y)?;
    let odc = odc_curve(&ex, &ey);
    let mut integral = 0.0;
    for (lo, hi, v) in odc.pieces() {
        // int_lo^hi (v - t)^2 dt = ((v - lo)^3 - (v - hi)^3) / 3
        let a = v - lo;
        let b = v - hi;
        integral += (a * a * a - b * b * b) / 3.0;
    }
    Ok(UnivariateStatistic {
        kind: UnivariateKind::OdcW2,
        p: None,
        raw: integral,
        scale: scale_linear(ex.len(), ey.len()),
    })
}

/// Ordinal dominance sup statistic:
/// `sqrt(mn/(m+n)) * sup_t |ODC(t) - t|`. On each piece the deviation from
/// the diagonal is largest at an interval endpoint.
pub fn odc_linf_statistic(x: &Sample, y: &Sample) -> Result<UnivariateStatistic> {
    let (ex, ey) = empirical_pair(x, y)?;
    let odc = odc_curve(&ex, &ey);
    let mut sup = 0.0f64;
    for (lo, hi, v) in odc.pieces() {
        sup = sup.max((v - lo).abs()).max((v - hi).abs());
    }
    Ok(UnivariateStatistic {
        kind: UnivariateKind::OdcLinf,
        p: None,
        raw: sup,
        scale: scale_sqrt(ex.len(), ey.len()),
    })
}

/// Computes the statistic selected by `kind`. `p` is consulted only for
/// [`UnivariateKind::WassersteinP`] (defaulting to 1).
pub fn compute(
    kind: UnivariateKind,
    p: Option<f64>,
    x: &Sample,
    y: &Sample,
) -> Result<UnivariateStatistic> {
    match kind {
        UnivariateKind::Ks => ks_statistic(x, y),
        UnivariateKind::PpL2 => pp_l2_statistic(x, y),
        UnivariateKind::QqL2 => qq_l2_statistic(x, y),
        UnivariateKind::QqLinf => qq_linf_statistic(x, y),
        UnivariateKind::WassersteinP => wasserstein_1d(x, y, p.unwrap_or(1.0)),
        UnivariateKind::WassersteinInf => wasserstein_inf_1d(x, y),
        UnivariateKind::OdcW2 => odc_w2_statistic(x, y),
        UnivariateKind::OdcLinf => odc_linf_statistic(x, y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn s(values: &[f64]) -> Sample {
        Sample::univariate(values).unwrap()
    }

    /// Midpoint-rule oracle for integrals of a pointwise function of the two
    /// empirical CDFs over `[lo, hi]`, independent of the closed forms.
    fn grid_integral(lo: f64, hi: f64, steps: usize, f: impl Fn(f64) -> f64) -> f64 {
        let h = (hi - lo) / steps as f64;
        (0..steps).map(|i| f(lo + (i as f64 + 0.5) * h) * h).sum()
    }

    #[test]
    fn ks_identical_samples() {
        let stat = ks_statistic(&s(&[1.0, 2.0]), &s(&[1.0, 2.0])).unwrap();
        assert_eq!(stat.raw_value(), 0.0);
        assert_eq!(stat.scaled_value(), 0.0);
    }

    #[test]
    fn ks_disjoint_supports() {
        let stat = ks_statistic(&s(&[0.0, 1.0]), &s(&[2.0, 3.0])).unwrap();
        assert_eq!(stat.raw_value(), 1.0);
        assert_relative_eq!(stat.scale(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn ks_interleaved() {
        let stat = ks_statistic(&s(&[0.0, 2.0]), &s(&[1.0, 3.0])).unwrap();
        assert_eq!(stat.raw_value(), 0.5);
        assert_relative_eq!(stat.scaled_value(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn pp_l2_identical_is_zero() {
        let stat = pp_l2_statistic(&s(&[1.0, 5.0]), &s(&[1.0, 5.0])).unwrap();
        assert_eq!(stat.raw_value(), 0.0);
    }

    #[test]
    fn pp_l2_single_atoms() {
        // (F - G)^2 = 1 on [0, 1).
        let stat = pp_l2_statistic(&s(&[0.0]), &s(&[1.0])).unwrap();
        assert_eq!(stat.raw_value(), 1.0);
        assert_relative_eq!(stat.scale(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn pp_l2_interleaved() {
        // Pooled points 0 < 1 < 2 < 3. The CDF difference is 1/2 on [0, 1),
        // 0 on [1, 2) and 1/2 on [2, 3), so the integral is 1/4 + 0 + 1/4.
        let x = s(&[0.0, 2.0]);
        let y = s(&[1.0, 3.0]);
        let stat = pp_l2_statistic(&x, &y).unwrap();
        assert_eq!(stat.raw_value(), 0.5);
        let (ex, ey) = empirical_pair(&x, &y).unwrap();
        let oracle = grid_integral(0.0, 3.0, 300_000, |z| {
            let d = ex.cdf(z) - ey.cdf(z);
            d * d
        });
        assert_abs_diff_eq!(stat.raw_value(), oracle, epsilon = 1e-4);
    }

    #[test]
    fn wasserstein_single_atoms() {
        let stat = wasserstein_1d(&s(&[0.0]), &s(&[1.0]), 2.0).unwrap();
        assert_eq!(stat.raw_value(), 1.0);
    }

    #[test]
    fn wasserstein_identical_is_zero_for_all_p() {
        for p in [1.0, 2.0, 3.0] {
            let stat = wasserstein_1d(&s(&[4.0, -1.0]), &s(&[4.0, -1.0]), p).unwrap();
            assert_eq!(stat.raw_value(), 0.0);
        }
    }

    #[test]
    fn wasserstein_interleaved_p1() {
        // Quantile gap is 1 on both refinement pieces.
        let stat = wasserstein_1d(&s(&[0.0, 2.0]), &s(&[1.0, 3.0]), 1.0).unwrap();
        assert_eq!(stat.raw_value(), 1.0);
    }

    #[test]
    fn wasserstein_rejects_bad_order() {
        let err = wasserstein_1d(&s(&[0.0]), &s(&[1.0]), 0.5).unwrap_err();
        assert!(matches!(err, Error::InvalidOrder { .. }));
        assert!(wasserstein_1d(&s(&[0.0]), &s(&[1.0]), f64::NAN).is_err());
    }

    #[test]
    fn wasserstein_inf_examples() {
        assert_eq!(
            wasserstein_inf_1d(&s(&[1.0, 2.0]), &s(&[1.0, 2.0]))
                .unwrap()
                .raw_value(),
            0.0
        );
        assert_eq!(
            wasserstein_inf_1d(&s(&[0.0]), &s(&[-3.5])).unwrap().raw_value(),
            3.5
        );
        assert_eq!(
            wasserstein_inf_1d(&s(&[0.0, 2.0]), &s(&[1.0, 3.0]))
                .unwrap()
                .raw_value(),
            1.0
        );
    }

    #[test]
    fn qq_statistics_record_scales() {
        let x = s(&[0.0, 2.0]);
        let y = s(&[1.0, 3.0]);
        let linf = qq_linf_statistic(&x, &y).unwrap();
        assert_eq!(linf.raw_value(), 1.0);
        assert_relative_eq!(linf.scale(), 1.0, epsilon = 1e-15);
        let l2 = qq_l2_statistic(&x, &y).unwrap();
        assert_eq!(l2.raw_value(), 1.0);
        assert_relative_eq!(l2.scale(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn odc_w2_interleaved() {
        // ODC values are [0, 1/2]; each piece contributes 1/24.
        let stat = odc_w2_statistic(&s(&[1.0, 3.0]), &s(&[2.0, 4.0])).unwrap();
        assert_abs_diff_eq!(stat.raw_value(), 1.0 / 12.0, epsilon = 1e-15);
    }

    #[test]
    fn odc_w2_disjoint() {
        // X entirely below Y: ODC is 0, the integral of t^2 over [0, 1].
        let stat = odc_w2_statistic(&s(&[0.0, 1.0]), &s(&[5.0, 6.0])).unwrap();
        assert_abs_diff_eq!(stat.raw_value(), 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn odc_w2_identical_stairs() {
        // Equal samples of size n: the staircase ODC deviates from the
        // diagonal by the integral n * (1/3) * (1/n)^3 = 1/(3 n^2).
        for n in [1usize, 2, 5, 8] {
            let values: Vec<f64> = (0..n).map(|i| i as f64).collect();
            let stat = odc_w2_statistic(&s(&values), &s(&values)).unwrap();
            assert_abs_diff_eq!(
                stat.raw_value(),
                1.0 / (3.0 * (n * n) as f64),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn odc_w2_matches_grid_oracle() {
        let x = s(&[0.3, -1.2, 2.5, 0.9, -0.4]);
        let y = s(&[1.1, -0.8, 0.2]);
        let stat = odc_w2_statistic(&x, &y).unwrap();
        let (ex, ey) = empirical_pair(&x, &y).unwrap();
        let odc = odc_curve(&ex, &ey);
        let oracle = grid_integral(0.0, 1.0, 400_000, |t| {
            let d = odc.value_at(t) - t;
            d * d
        });
        assert_abs_diff_eq!(stat.raw_value(), oracle, epsilon = 1e-5);
    }

    #[test]
    fn odc_linf_examples() {
        // X below Y: sup over [0, 1] of |0 - t| approaches 1.
        let stat = odc_linf_statistic(&s(&[0.0]), &s(&[9.0])).unwrap();
        assert_eq!(stat.raw_value(), 1.0);
        // Identical samples: staircase deviation is 1/n.
        let stat = odc_linf_statistic(&s(&[1.0, 2.0, 3.0, 4.0]), &s(&[1.0, 2.0, 3.0, 4.0])).unwrap();
        assert_abs_diff_eq!(stat.raw_value(), 0.25, epsilon = 1e-15);
        // Interleaved example.
        let stat = odc_linf_statistic(&s(&[1.0, 3.0]), &s(&[2.0, 4.0])).unwrap();
        assert_eq!(stat.raw_value(), 0.5);
    }

    #[test]
    fn rejects_multivariate_input() {
        let x = Sample::new(vec![vec![0.0, 1.0]]).unwrap();
        let y = Sample::new(vec![vec![2.0, 3.0]]).unwrap();
        assert!(matches!(
            ks_statistic(&x, &y),
            Err(Error::NotUnivariate { dim: 2 })
        ));
    }

    #[test]
    fn dispatcher_covers_all_kinds() {
        let x = s(&[0.0, 2.0]);
        let y = s(&[1.0, 3.0]);
        for kind in [
            UnivariateKind::Ks,
            UnivariateKind::PpL2,
            UnivariateKind::QqL2,
            UnivariateKind::QqLinf,
            UnivariateKind::WassersteinP,
            UnivariateKind::WassersteinInf,
            UnivariateKind::OdcW2,
            UnivariateKind::OdcLinf,
        ] {
            let stat = compute(kind, Some(2.0), &x, &y).unwrap();
            assert_eq!(stat.kind(), kind);
            assert!(stat.raw_value() >= 0.0);
            assert!(stat.scale() > 0.0);
        }
    }

    fn monotone_transforms() -> Vec<fn(f64) -> f64> {
        vec![|v| v, |v| v.exp(), |v| v * v * v + 2.0 * v, |v| 0.1 * v - 7.0]
    }

    proptest! {
        /// For n = m the W_p^p integral reduces to the mean p-th power gap of
        /// the sorted matching.
        #[test]
        fn sorted_matching_when_sizes_equal(
            mut x in prop::collection::vec(-50.0f64..50.0, 1..25),
            mut y in prop::collection::vec(-50.0f64..50.0, 1..25),
            p in 1.0f64..3.0,
        ) {
            let n = x.len().min(y.len());
            x.truncate(n);
            y.truncate(n);
            let stat = wasserstein_1d(&s(&x), &s(&y), p).unwrap();
            x.sort_by(f64::total_cmp);
            y.sort_by(f64::total_cmp);
            let oracle: f64 = x
                .iter()
                .zip(&y)
                .map(|(a, b)| (a - b).abs().powf(p))
                .sum::<f64>()
                / n as f64;
            prop_assert!((stat.raw_value() - oracle).abs() <= 1e-9 * (1.0 + oracle));
        }

        /// Translating both samples by the same shift leaves every statistic
        /// unchanged (up to roundoff).
        #[test]
        fn translation_invariance(
            x in prop::collection::vec(-20.0f64..20.0, 1..15),
            y in prop::collection::vec(-20.0f64..20.0, 1..15),
            shift in -100.0f64..100.0,
        ) {
            let xs: Vec<f64> = x.iter().map(|v| v + shift).collect();
            let ys: Vec<f64> = y.iter().map(|v| v + shift).collect();
            for kind in [
                UnivariateKind::Ks,
                UnivariateKind::PpL2,
                UnivariateKind::WassersteinP,
                UnivariateKind::WassersteinInf,
                UnivariateKind::OdcW2,
                UnivariateKind::OdcLinf,
            ] {
                let a = compute(kind, Some(2.0), &s(&x), &s(&y)).unwrap().scaled_value();
                let b = compute(kind, Some(2.0), &s(&xs), &s(&ys)).unwrap().scaled_value();
                prop_assert!((a - b).abs() <= 1e-7 * (1.0 + a.abs()), "kind {:?}: {} vs {}", kind, a, b);
            }
        }

        /// Rank-based statistics are exactly invariant under any common
        /// strictly increasing transform.
        #[test]
        fn rank_statistics_are_transform_invariant(
            x in prop::collection::vec(-5.0f64..5.0, 1..15),
            y in prop::collection::vec(-5.0f64..5.0, 1..15),
            which in 0usize..4,
        ) {
            let t = monotone_transforms()[which];
            let xt: Vec<f64> = x.iter().map(|v| t(*v)).collect();
            let yt: Vec<f64> = y.iter().map(|v| t(*v)).collect();
            for kind in [UnivariateKind::Ks, UnivariateKind::OdcW2, UnivariateKind::OdcLinf] {
                let a = compute(kind, None, &s(&x), &s(&y)).unwrap().raw_value();
                let b = compute(kind, None, &s(&xt), &s(&yt)).unwrap().raw_value();
                prop_assert!((a - b).abs() < 1e-12, "kind {:?}: {} vs {}", kind, a, b);
            }
        }

        /// KS and the transport distances vanish exactly when the empirical
        /// distributions coincide as multisets.
        #[test]
        fn zero_iff_equal_multisets(
            x in prop::collection::vec(-9.0f64..9.0, 1..12),
            y in prop::collection::vec(-9.0f64..9.0, 1..12),
        ) {
            let mut xs = x.clone();
            let mut ys = y.clone();
            xs.sort_by(f64::total_cmp);
            ys.sort_by(f64::total_cmp);
            let same = xs == ys;
            for kind in [
                UnivariateKind::Ks,
                UnivariateKind::WassersteinP,
                UnivariateKind::WassersteinInf,
            ] {
                let v = compute(kind, Some(1.0), &s(&x), &s(&y)).unwrap().raw_value();
                if same {
                    prop_assert_eq!(v, 0.0);
                } else if x.len() == y.len() {
                    // Equal sizes: different multisets force a nonzero value.
                    prop_assert!(v > 0.0, "kind {:?}", kind);
                }
            }
        }
    }
}

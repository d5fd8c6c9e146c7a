//! Multivariate two-sample statistics: energy distance, kernel MMD, and the
//! smoothed transport statistic that interpolates between them and the exact
//! transport distance.
//!
//! All three default to V-statistic (biased) forms, with diagonal terms
//! included, so the algebraic identities among them hold exactly:
//!
//! * the smoothed transport statistic at `lambda = 0`, `p = 1` *equals* the
//!   energy distance (each of its three terms is the corresponding mean
//!   pairwise distance under the independence coupling);
//! * the generalized energy distance under the kernel-induced distance
//!   `d(x, y) = (k(x,x) + k(y,y))/2 - k(x,y)` equals squared MMD.
//!
//! U-statistic (unbiased) variants exist as a toggle but are not the
//! defaults. Cross sums are always accumulated with the two samples in a
//! canonical order, which makes every statistic exactly symmetric in its
//! arguments.

use crate::error::{Error, Result};
use crate::sample::{euclidean_distance, Sample};
use crate::transport::sinkhorn_divergence;

/// Kernel family for MMD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    Gaussian,
}

/// A positive-definite kernel with an explicit bandwidth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    kind: KernelKind,
    gamma: f64,
}

impl KernelSpec {
    /// Gaussian kernel `k(a, b) = exp(-||a - b||^2 / gamma^2)`.
    pub fn gaussian(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidBandwidth { gamma });
        }
        Ok(Self {
            kind: KernelKind::Gaussian,
            gamma,
        })
    }

    /// Gaussian kernel with the median heuristic bandwidth: the median of
    /// the pairwise Euclidean distances of the pooled sample (falling back
    /// to 1 when more than half of all pairs coincide).
    pub fn median_heuristic(x: &Sample, y: &Sample) -> Result<Self> {
        let pooled = x.concat(y)?;
        let total = pooled.len();
        let mut dists = Vec::with_capacity(total * (total - 1) / 2);
        for i in 0..total {
            for j in (i + 1)..total {
                dists.push(euclidean_distance(pooled.point(i), pooled.point(j)));
            }
        }
        let gamma = if dists.is_empty() {
            1.0
        } else {
            dists.sort_by(f64::total_cmp);
            let mid = dists.len() / 2;
            let median = if dists.len() % 2 == 1 {
                dists[mid]
            } else {
                0.5 * (dists[mid - 1] + dists[mid])
            };
            if median > 0.0 {
                median
            } else {
                1.0
            }
        };
        Self::gaussian(gamma)
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Evaluates the kernel on a pair of points.
    pub fn evaluate(&self, a: &[f64], b: &[f64]) -> f64 {
        match self.kind {
            KernelKind::Gaussian => {
                let d = euclidean_distance(a, b);
                (-(d * d) / (self.gamma * self.gamma)).exp()
            }
        }
    }
}

/// Identifies a multivariate statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MultivariateKind {
    EnergyDistance,
    Mmd2,
    SmoothedWasserstein,
}

impl MultivariateKind {
    pub fn name(&self) -> &'static str {
        match self {
            MultivariateKind::EnergyDistance => "energy",
            MultivariateKind::Mmd2 => "mmd",
            MultivariateKind::SmoothedWasserstein => "smoothed-wasserstein",
        }
    }
}

/// Parameters the statistic was computed with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StatParams {
    None,
    Kernel { gamma: f64 },
    Transport { p: f64, lambda: f64 },
}

/// A computed multivariate statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct MultivariateStatistic {
    kind: MultivariateKind,
    value: f64,
    params: StatParams,
}

impl MultivariateStatistic {
    pub fn kind(&self) -> MultivariateKind {
        self.kind
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn params(&self) -> StatParams {
        self.params
    }
}

/// Orders the pair canonically (by length, then dimension, then
/// lexicographically on coordinates) so symmetric formulas are evaluated
/// with an argument order independent of the caller's.
fn canonical<'a>(x: &'a Sample, y: &'a Sample) -> (&'a Sample, &'a Sample) {
    let key = |s: &Sample| (s.len(), s.dim());
    match key(x).cmp(&key(y)).then_with(|| {
        // Equal shapes: break ties on coordinates.
        for i in 0..x.len() {
            for (a, b) in x.point(i).iter().zip(y.point(i)) {
                let ord = a.total_cmp(b);
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
        }
        std::cmp::Ordering::Equal
    }) {
        std::cmp::Ordering::Greater => (y, x),
        _ => (x, y),
    }
}

fn check_dims(x: &Sample, y: &Sample) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(())
}

/// Mean of `f` over all ordered pairs (row-major accumulation).
fn mean_cross(a: &Sample, b: &Sample, f: &impl Fn(&[f64], &[f64]) -> f64) -> f64 {
    let mut sum = 0.0;
    for ai in a.points() {
        for bj in b.points() {
            sum += f(ai, bj);
        }
    }
    sum / (a.len() as f64 * b.len() as f64)
}

/// Mean of `f` over ordered pairs excluding the diagonal.
fn mean_cross_offdiag(a: &Sample, f: &impl Fn(&[f64], &[f64]) -> f64) -> f64 {
    let n = a.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += f(a.point(i), a.point(j));
            }
        }
    }
    sum / (n as f64 * (n as f64 - 1.0))
}

fn v_statistic(a: &Sample, b: &Sample, f: impl Fn(&[f64], &[f64]) -> f64) -> f64 {
    2.0 * mean_cross(a, b, &f) - mean_cross(a, a, &f) - mean_cross(b, b, &f)
}

/// Energy distance between two samples (V-statistic form):
/// `2 E||X - Y|| - E||X - X'|| - E||Y - Y'||` with all means taken over
/// ordered pairs including the diagonal.
pub fn energy_distance(x: &Sample, y: &Sample) -> Result<MultivariateStatistic> {
    check_dims(x, y)?;
    let (a, b) = canonical(x, y);
    Ok(MultivariateStatistic {
        kind: MultivariateKind::EnergyDistance,
        value: v_statistic(a, b, euclidean_distance),
        params: StatParams::None,
    })
}

/// Unbiased (U-statistic) energy distance: within-sample means skip the
/// diagonal. Requires at least two points per sample.
pub fn energy_distance_unbiased(x: &Sample, y: &Sample) -> Result<MultivariateStatistic> {
    check_dims(x, y)?;
    if x.len() < 2 || y.len() < 2 {
        return Err(Error::InsufficientResamples { got: 1, min: 2 });
    }
    let (a, b) = canonical(x, y);
    let value = 2.0 * mean_cross(a, b, &euclidean_distance)
        - mean_cross_offdiag(a, &euclidean_distance)
        - mean_cross_offdiag(b, &euclidean_distance);
    Ok(MultivariateStatistic {
        kind: MultivariateKind::EnergyDistance,
        value,
        params: StatParams::None,
    })
}

/// Generalized energy distance under a caller-supplied semimetric.
pub fn generalized_energy_distance(
    x: &Sample,
    y: &Sample,
    distance: impl Fn(&[f64], &[f64]) -> f64,
) -> Result<MultivariateStatistic> {
    check_dims(x, y)?;
    let (a, b) = canonical(x, y);
    Ok(MultivariateStatistic {
        kind: MultivariateKind::EnergyDistance,
        value: v_statistic(a, b, distance),
        params: StatParams::None,
    })
}

/// Squared maximum mean discrepancy (V-statistic form):
/// `E k(X, X') + E k(Y, Y') - 2 E k(X, Y)`, diagonal terms included.
pub fn mmd2(x: &Sample, y: &Sample, kernel: &KernelSpec) -> Result<MultivariateStatistic> {
    check_dims(x, y)?;
    let (a, b) = canonical(x, y);
    let k = |p: &[f64], q: &[f64]| kernel.evaluate(p, q);
    let value = mean_cross(a, a, &k) + mean_cross(b, b, &k) - 2.0 * mean_cross(a, b, &k);
    Ok(MultivariateStatistic {
        kind: MultivariateKind::Mmd2,
        value,
        params: StatParams::Kernel {
            gamma: kernel.gamma(),
        },
    })
}

/// Unbiased (U-statistic) squared MMD; may be slightly negative. Requires at
/// least two points per sample.
pub fn mmd2_unbiased(
    x: &Sample,
    y: &Sample,
    kernel: &KernelSpec,
) -> Result<MultivariateStatistic> {
    check_dims(x, y)?;
    if x.len() < 2 || y.len() < 2 {
        return Err(Error::InsufficientResamples { got: 1, min: 2 });
    }
    let (a, b) = canonical(x, y);
    let k = |p: &[f64], q: &[f64]| kernel.evaluate(p, q);
    let value = mean_cross_offdiag(a, &k) + mean_cross_offdiag(b, &k) - 2.0 * mean_cross(a, b, &k);
    Ok(MultivariateStatistic {
        kind: MultivariateKind::Mmd2,
        value,
        params: StatParams::Kernel {
            gamma: kernel.gamma(),
        },
    })
}

/// The semimetric induced by a kernel:
/// `d(x, y) = (k(x,x) + k(y,y)) / 2 - k(x,y)`.
///
/// For the Gaussian kernel this is `1 - exp(-||x - y||^2 / gamma^2)`;
/// plugging it into [`generalized_energy_distance`] reproduces [`mmd2`].
pub fn kernel_to_distance(kernel: &KernelSpec) -> impl Fn(&[f64], &[f64]) -> f64 {
    let kernel = *kernel;
    move |a: &[f64], b: &[f64]| {
        0.5 * (kernel.evaluate(a, a) + kernel.evaluate(b, b)) - kernel.evaluate(a, b)
    }
}

/// Smoothed transport statistic
/// `2 S_lambda(x, y) - S_lambda(x, x) - S_lambda(y, y)` built from the
/// Sinkhorn divergence of order `p`.
///
/// At `lambda = 0`, `p = 1` every term is a mean pairwise distance, and the
/// statistic equals [`energy_distance`] exactly.
pub fn smoothed_wasserstein_statistic(
    x: &Sample,
    y: &Sample,
    p: f64,
    lambda: f64,
) -> Result<MultivariateStatistic> {
    check_dims(x, y)?;
    let (a, b) = canonical(x, y);
    let cross = sinkhorn_divergence(a, b, p, lambda)?;
    let within_a = sinkhorn_divergence(a, a, p, lambda)?;
    let within_b = sinkhorn_divergence(b, b, p, lambda)?;
    Ok(MultivariateStatistic {
        kind: MultivariateKind::SmoothedWasserstein,
        value: 2.0 * cross - within_a - within_b,
        params: StatParams::Transport { p, lambda },
    })
}

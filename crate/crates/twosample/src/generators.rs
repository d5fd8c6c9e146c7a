//! Synthetic data generators for null simulations and power benchmarks.
//!
//! Every generator draws i.i.d. points with independent coordinates, so a
//! `dim`-dimensional draw of size `n` consumes exactly `n * dim` variates
//! from the stream. Alternative-hypothesis pairs perturb only the named
//! parameter, leaving everything else matched to the null.

use crate::error::{Error, Result};
use crate::sample::Sample;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

/// A one-dimensional marginal, applied independently per coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    /// Uniform on `[0, 1]`.
    Uniform,
    /// Standard normal.
    StandardNormal,
    /// Exponential with rate 1.
    Exponential,
    /// `logit(U)` for `U` uniform: a heavy-ish tailed continuous law.
    LogitUniform,
    /// Normal with the first coordinate shifted by `delta`.
    NormalMeanShift { delta: f64 },
    /// Normal with every coordinate scaled by `factor`.
    NormalScale { factor: f64 },
    /// Uniform on `[delta, 1 + delta]` in every coordinate.
    UniformShift { delta: f64 },
}

impl Generator {
    /// Parses a generator name as used on the command line. Shifted and
    /// scaled variants take their parameter separately, so only the base
    /// names are accepted here.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "uniform" => Ok(Generator::Uniform),
            "normal" => Ok(Generator::StandardNormal),
            "exponential" => Ok(Generator::Exponential),
            "logit-uniform" => Ok(Generator::LogitUniform),
            other => Err(Error::InvalidConfig(format!(
                "unknown generator '{other}' (expected uniform, normal, exponential, or logit-uniform)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Uniform => "uniform",
            Generator::StandardNormal => "normal",
            Generator::Exponential => "exponential",
            Generator::LogitUniform => "logit-uniform",
            Generator::NormalMeanShift { .. } => "normal-mean-shift",
            Generator::NormalScale { .. } => "normal-scale",
            Generator::UniformShift { .. } => "uniform-shift",
        }
    }

    /// Draws one coordinate. `coord` is the coordinate index within the
    /// point, so shifts that target a single coordinate know where they are.
    fn draw_coord(&self, rng: &mut impl Rng, coord: usize) -> f64 {
        match *self {
            Generator::Uniform => rng.gen::<f64>(),
            Generator::StandardNormal => StandardNormal.sample(rng),
            Generator::Exponential => Exp1.sample(rng),
            Generator::LogitUniform => {
                let u: f64 = rng.gen_range(1e-12..(1.0 - 1e-12));
                (u / (1.0 - u)).ln()
            }
            Generator::NormalMeanShift { delta } => {
                let z: f64 = StandardNormal.sample(rng);
                if coord == 0 {
                    z + delta
                } else {
                    z
                }
            }
            Generator::NormalScale { factor } => {
                let z: f64 = StandardNormal.sample(rng);
                z * factor
            }
            Generator::UniformShift { delta } => rng.gen::<f64>() + delta,
        }
    }

    /// Draws an `n`-point sample in `dim` dimensions.
    pub fn sample(&self, rng: &mut impl Rng, n: usize, dim: usize) -> Result<Sample> {
        if n == 0 {
            return Err(Error::EmptySample);
        }
        if dim == 0 {
            return Err(Error::NotUnivariate { dim });
        }
        let mut data = Vec::with_capacity(n * dim);
        for _ in 0..n {
            for coord in 0..dim {
                data.push(self.draw_coord(rng, coord));
            }
        }
        Sample::from_flat(data, dim)
    }
}

/// A (null, alternative) generator pair for power benchmarks, indexed by a
/// single separation parameter `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchPair {
    pub null: Generator,
    pub alternative: Generator,
}

/// Builds a named benchmark pair. `delta = 0` always reproduces the null.
pub fn bench_pair(name: &str, delta: f64) -> Result<BenchPair> {
    if !delta.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "separation parameter must be finite, got {delta}"
        )));
    }
    match name {
        "uniform-shift" => Ok(BenchPair {
            null: Generator::Uniform,
            alternative: Generator::UniformShift { delta },
        }),
        "normal-mean-shift" => Ok(BenchPair {
            null: Generator::StandardNormal,
            alternative: Generator::NormalMeanShift { delta },
        }),
        "normal-scale-shift" => Ok(BenchPair {
            null: Generator::StandardNormal,
            alternative: Generator::NormalScale {
                factor: 1.0 + delta,
            },
        }),
        other => Err(Error::InvalidConfig(format!(
            "unknown benchmark pair '{other}' (expected uniform-shift, normal-mean-shift, or normal-scale-shift)"
        ))),
    }
}

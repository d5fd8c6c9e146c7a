//! Finite samples of points in `R^d`.
//!
//! A [`Sample`] is an ordered list of observations with a common dimension.
//! All statistics in this crate consume samples; the univariate machinery
//! additionally requires `dim == 1`.

use crate::error::{Error, Result};

/// A non-empty list of `d`-dimensional observations, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    data: Vec<f64>,
    dim: usize,
}

impl Sample {
    /// Builds a sample from one row per observation.
    ///
    /// Fails on an empty list, on rows of unequal length, and on non-finite
    /// coordinates.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySample);
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::RaggedSample {
                row: 1,
                expected: 1,
                got: 0,
            });
        }
        let mut data = Vec::with_capacity(points.len() * dim);
        for (row, point) in points.iter().enumerate() {
            if point.len() != dim {
                return Err(Error::RaggedSample {
                    row: row + 1,
                    expected: dim,
                    got: point.len(),
                });
            }
            if point.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteValue { row: row + 1 });
            }
            data.extend_from_slice(point);
        }
        Ok(Self { data, dim })
    }

    /// Builds a univariate sample from a slice of values.
    pub fn univariate(values: &[f64]) -> Result<Self> {
        Self::from_flat(values.to_vec(), 1)
    }

    /// Builds a sample from a flat row-major buffer.
    pub fn from_flat(data: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 || data.len() % dim != 0 {
            return Err(Error::DimensionMismatch {
                left: data.len(),
                right: dim,
            });
        }
        if data.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { row: pos / dim + 1 });
        }
        Ok(Self { data, dim })
    }

    /// Number of observations.
    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    /// A sample is never empty; provided for idiom completeness.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Common dimension of all observations.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The `i`-th observation.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Iterates over observations in order.
    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    /// Raw values of a univariate sample, in insertion order.
    pub fn values_1d(&self) -> Result<&[f64]> {
        if self.dim != 1 {
            return Err(Error::NotUnivariate { dim: self.dim });
        }
        Ok(&self.data)
    }

    /// Concatenates two samples of equal dimension (`self` first).
    pub fn concat(&self, other: &Sample) -> Result<Sample> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Sample::from_flat(data, self.dim)
    }

    /// New sample holding the observations at `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Sample> {
        if indices.is_empty() {
            return Err(Error::EmptySample);
        }
        let mut data = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            data.extend_from_slice(self.point(i));
        }
        Sample::from_flat(data, self.dim)
    }
}

/// Euclidean distance between two points of equal dimension.
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    if a.len() == 1 {
        return (a[0] - b[0]).abs();
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

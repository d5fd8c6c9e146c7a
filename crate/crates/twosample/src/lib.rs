//! Nonparametric two-sample testing built around empirical transport
//! distances.
//!
//! The crate computes univariate statistics (Kolmogorov–Smirnov, PP/QQ
//! discrepancies, Wasserstein distances, ordinal-dominance-curve
//! functionals), multivariate statistics (energy distance, kernel MMD, and a
//! smoothed transport statistic that interpolates between them and the exact
//! transport distance), and calibrates them by permutation or, for the
//! distribution-free statistics, against Brownian-bridge asymptotics.
//!
//! ```
//! use twosample::sample::Sample;
//! use twosample::univariate::{compute, UnivariateKind};
//!
//! let x = Sample::univariate(&[0.0, 2.0]).unwrap();
//! let y = Sample::univariate(&[1.0, 3.0]).unwrap();
//! let w1 = compute(UnivariateKind::WassersteinP, Some(1.0), &x, &y).unwrap();
//! assert_eq!(w1.raw_value(), 1.0);
//! ```

pub mod bench;
pub mod calibration;
pub mod cli;
pub mod empirical;
pub mod error;
pub mod generators;
pub mod multivariate;
pub mod sample;
pub mod transport;
pub mod univariate;

pub use error::{Error, Result};
pub use sample::Sample;

//! Computes every univariate two-sample statistic on one pair of samples.
//!
//! Run with `cargo run --example univariate_statistics`.

use twosample::univariate::{compute, UnivariateKind};
use twosample::{Result, Sample};

fn main() -> Result<()> {
    // Two small location-shifted samples with a tie inside each group.
    let x = Sample::univariate(&[0.2, 0.5, 0.5, 0.9, 1.4, 1.7])?;
    let y = Sample::univariate(&[0.6, 1.1, 1.3, 1.3, 1.9, 2.4, 2.8])?;

    let kinds = [
        UnivariateKind::Ks,
        UnivariateKind::PpL2,
        UnivariateKind::QqL2,
        UnivariateKind::QqLinf,
        UnivariateKind::WassersteinP,
        UnivariateKind::WassersteinInf,
        UnivariateKind::OdcW2,
        UnivariateKind::OdcLinf,
    ];

    println!("{:<16} {:>12} {:>12}  distribution-free", "statistic", "raw", "scaled");
    for kind in kinds {
        // `p` is only consulted by the Wasserstein family.
        let stat = compute(kind, Some(1.0), &x, &y)?;
        println!(
            "{:<16} {:>12.6} {:>12.6}  {}",
            kind.name(),
            stat.raw_value(),
            stat.scaled_value(),
            if kind.is_distribution_free() { "yes" } else { "no" },
        );
    }

    // The transport order changes the Wasserstein statistic but nothing else.
    for p in [1.0, 2.0, 3.0] {
        let stat = compute(UnivariateKind::WassersteinP, Some(p), &x, &y)?;
        println!("wasserstein p={p}: W_p^p = {:.6}", stat.raw_value());
    }
    Ok(())
}

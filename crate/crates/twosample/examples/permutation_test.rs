//! A complete permutation-calibrated two-sample test on 2-D data, ending in
//! the versioned report consumed by downstream tooling.
//!
//! Run with `cargo run --example permutation_test`.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use twosample::calibration::{permutation_pvalue, NullModel, TestReport};
use twosample::multivariate::energy_distance;
use twosample::{Result, Sample};

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut draw = |n: usize, shift: f64| -> Result<Sample> {
        let points = (0..n)
            .map(|_| {
                vec![
                    rng.sample::<f64, _>(StandardNormal) + shift,
                    rng.sample::<f64, _>(StandardNormal),
                ]
            })
            .collect();
        Sample::new(points)
    };
    let x = draw(60, 0.0)?;
    let y = draw(60, 0.9)?;

    let observed = energy_distance(&x, &y)?;
    let model = NullModel::permutation(999, 42)?;
    let p_value = permutation_pvalue(
        &x,
        &y,
        |a, b| Ok(energy_distance(a, b)?.value()),
        999,
        42,
    )?;

    println!("observed energy distance = {:.6}", observed.value());
    println!("permutation p-value      = {p_value:.4} ({})", model.describe());

    let mut report = TestReport::new(
        "energy",
        observed.value(),
        observed.value(),
        p_value,
        0.05,
        model.describe(),
        x.len(),
        y.len(),
    )?;
    report.config = serde_json::json!({ "example": "permutation_test", "seed": 42 });
    println!("\n{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

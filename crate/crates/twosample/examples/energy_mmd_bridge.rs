//! The three multivariate statistics and the identities connecting them:
//! the smoothed transport statistic at lambda = 0 *is* the energy distance,
//! and the energy distance computed in a kernel-induced metric *is* MMD^2.
//!
//! Run with `cargo run --example energy_mmd_bridge`.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use twosample::multivariate::{
    energy_distance, generalized_energy_distance, kernel_to_distance, mmd2,
    smoothed_wasserstein_statistic, KernelSpec,
};
use twosample::{Result, Sample};

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut draw = |n: usize, shift: f64| -> Result<Sample> {
        let points = (0..n)
            .map(|_| {
                (0..3)
                    .map(|c| {
                        let z: f64 = rng.sample(StandardNormal);
                        if c == 0 { z + shift } else { z }
                    })
                    .collect()
            })
            .collect();
        Sample::new(points)
    };
    let x = draw(40, 0.0)?;
    let y = draw(35, 0.75)?; // mean shift in the first coordinate

    let energy = energy_distance(&x, &y)?;
    println!("energy distance          = {:.6}", energy.value());

    let smoothed = smoothed_wasserstein_statistic(&x, &y, 1.0, 0.0)?;
    println!("smoothed stat, lambda=0  = {:.6}", smoothed.value());
    assert_eq!(smoothed.value(), energy.value(), "identity is bit-exact");

    let kernel = KernelSpec::median_heuristic(&x, &y)?;
    let mmd = mmd2(&x, &y, &kernel)?;
    println!("MMD^2 (median heuristic) = {:.6}", mmd.value());

    // d_k(a, b) = k(a,a)/2 + k(b,b)/2 - k(a,b) turns MMD^2 into an energy
    // distance in the kernel metric.
    let bridged = generalized_energy_distance(&x, &y, kernel_to_distance(&kernel))?;
    println!("energy in kernel metric  = {:.6}", bridged.value());
    assert!((bridged.value() - mmd.value()).abs() <= 1e-12);

    // A positive lambda starts pulling the smoothed statistic toward the
    // (much more expensive) exact transport distance.
    for lambda in [0.5, 2.0, 8.0] {
        let stat = smoothed_wasserstein_statistic(&x, &y, 1.0, lambda)?;
        println!("smoothed stat, lambda={lambda:<4} = {:.6}", stat.value());
    }
    Ok(())
}

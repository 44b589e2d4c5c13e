// One-step estimator: the average of ½ log det(Gᴴ Σ G) over i.i.d. draws.
// A single column in d = 1 shows the −γ/2 normalization directly.

use lyapunov::mc::{single_step_estimate, single_step_estimate_with, RngStream, SigmaFactor};
use lyapunov::{CovarianceSpectrum, Field};

const EULER: f64 = 0.577_215_664_901_532_9;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let one = CovarianceSpectrum::new(vec![1.0])?;
    let e = single_step_estimate(1, &one, Field::Complex, 200_000, &RngStream::new(1, 0))?;
    println!("E log|g| = {:.5} ± {:.5}, −γ/2 = {:.5}", e.mean, e.stderr, -EULER / 2.0);

    // same covariance, diagonal vs randomly rotated
    let y = CovarianceSpectrum::new(vec![1.0, 0.25, 3.0])?;
    let diag = single_step_estimate(2, &y, Field::Complex, 100_000, &RngStream::new(1, 1))?;
    let rotated = SigmaFactor::conjugated(&y, &RngStream::new(1, 2));
    let dense = single_step_estimate_with(2, &rotated, Field::Complex, 100_000, &RngStream::new(1, 3))?;
    println!("k=2 diagonal Σ: {:.5} ± {:.5}", diag.mean, diag.stderr);
    println!("k=2 rotated Σ:  {:.5} ± {:.5}", dense.mean, dense.stderr);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

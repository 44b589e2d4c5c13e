// Product-chain Monte Carlo with QR renormalization, compared with the
// exact partial sums.

use lyapunov::exact::complex_spectrum;
use lyapunov::mc::{product_estimate, ChainConfig, RngStream};
use lyapunov::{CovarianceSpectrum, Field, PrecisionContext};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PrecisionContext::default();
    let y = CovarianceSpectrum::new(vec![1.0, 0.25])?;
    let exact = complex_spectrum(&y, &ctx)?.to_f64();
    let mut partial = 0.0;
    for k in 1..=y.dim() {
        partial += exact[k - 1];
        let cfg = ChainConfig::new(100_000, k, Field::Complex);
        let est = product_estimate(&cfg, &y, &RngStream::new(42, k as u64))?;
        println!(
            "k={k}: {:.5} ± {:.5} (batches of {}), exact {partial:.5}, z = {:+.2}",
            est.mean,
            est.stderr,
            est.batch_size,
            est.z_score(partial)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

// Continuum limit: exact linear spectrum and a short simulation of the
// product of exponentials of GUE increments.

use lyapunov::exact::diffusive_spectrum;
use lyapunov::mc::{diffusive_estimate, RngStream};
use lyapunov::DiffusionParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = DiffusionParams::new(4, 1.0, 0.0)?;
    println!("exact d=4: {:?}", diffusive_spectrum(&p).to_f64());

    for sigma2 in [0.0, 3.0] {
        let p = DiffusionParams::new(2, 1.0, sigma2)?;
        let e = diffusive_estimate(&p, 1, 100, 200, &RngStream::new(5, 0))?;
        println!("d=2 sigma2={sigma2}: mu_1 ≈ {:.3} ± {:.3} (exact 1)", e.mean, e.stderr);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

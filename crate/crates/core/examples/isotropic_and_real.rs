// Isotropic spectra for complex and real Gaussian factors, plus the real
// d = 2 top exponent for an anisotropic covariance.

use lyapunov::exact::{isotropic_complex_spectrum, isotropic_real_spectrum, real_mu1_d2, sum_rule_real};
use lyapunov::{CovarianceSpectrum, PrecisionContext};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PrecisionContext::default();
    let d = 5;
    let complex = isotropic_complex_spectrum(d, &ctx)?.to_f64();
    let real = isotropic_real_spectrum(d, &ctx)?.to_f64();
    println!("{:>3} {:>20} {:>20}", "k", "complex", "real");
    for k in 0..d {
        println!("{:>3} {:>20.15} {:>20.15}", k + 1, complex[k], real[k]);
    }

    let y = CovarianceSpectrum::new(vec![1.0, 0.25])?;
    println!("real d=2, y = (1, 1/4): mu_1 = {:.15}", real_mu1_d2(&y, &ctx)?.to_f64());
    println!("real sum rule:          {:.15}", sum_rule_real(&y, &ctx)?.to_f64());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

// Full complex Lyapunov spectrum for a general covariance, checked
// against the sum rule and the closed-form edge exponents.

use lyapunov::exact::{complex_spectrum, mu_max_closed, mu_min_closed, sum_rule_complex};
use lyapunov::{CovarianceSpectrum, PrecisionContext};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PrecisionContext::default();
    // y_j are eigenvalues of Σ⁻¹
    let y = CovarianceSpectrum::new(vec![1.0, 0.25, 3.0])?;
    let spec = complex_spectrum(&y, &ctx)?;
    for (k, mu) in spec.mu.iter().enumerate() {
        println!("mu_{} = {}", k + 1, lyapunov::precision::to_decimal(mu, 25));
    }
    println!("sum      {:.15}", spec.sum().to_f64());
    println!("sum rule {:.15}", sum_rule_complex(&y, &ctx).to_f64());
    println!("mu_max closed form {:.15}", mu_max_closed(&y, &ctx)?.to_f64());
    println!("mu_min closed form {:.15}", mu_min_closed(&y, &ctx)?.to_f64());
    println!("digits used: {}", spec.digits_used);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

// The generalized maximum exponent L(q) and its slope at q = 0.

use lyapunov::exact::{complex_exponent, glq_general, glq_isotropic};
use lyapunov::{CovarianceSpectrum, PrecisionContext};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PrecisionContext::default();
    let y = CovarianceSpectrum::new(vec![1.0, 0.25])?;
    println!("{:>5} {:>20} {:>20}", "q", "L(q), y=(1,1/4)", "L(q), isotropic d=2");
    for i in 0..=8 {
        let q = 0.5 * i as f64;
        let general = glq_general(q, &y, &ctx)?.l.to_f64();
        let iso = glq_isotropic(q, 2, &ctx)?.l.to_f64();
        println!("{q:>5.1} {general:>20.15} {iso:>20.15}");
    }

    // Richardson extrapolation of L(h)/h towards h = 0
    let (h1, h2) = (1e-4, 1e-6);
    let f1 = glq_general(h1, &y, &ctx)?.l.to_f64() / h1;
    let f2 = glq_general(h2, &y, &ctx)?.l.to_f64() / h2;
    let slope = (h1 * f2 - h2 * f1) / (h1 - h2);
    println!("slope at 0 = {slope:.12}, mu_1 = {:.12}", complex_exponent(1, &y, &ctx)?.to_f64());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

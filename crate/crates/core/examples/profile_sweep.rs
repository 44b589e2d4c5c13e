// Top exponent for covariance spectra sampled from a linear profile as d
// grows. Working precision escalates with d.

use lyapunov::exact::{Profile, Sweep};
use lyapunov::PrecisionContext;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let profile: Profile = "linear:1,1".parse()?;
    let sweep = Sweep::run(&profile, &[25, 50, 100, 200], &PrecisionContext::default())?;
    for p in &sweep.points {
        println!("d={:>4} mu_1={:.10} digits={}", p.d, p.mu1.to_f64(), p.digits_used);
    }
    println!("increments {:?}", sweep.increments());
    println!("monotone: {}", sweep.is_monotone());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

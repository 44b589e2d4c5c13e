// Building a report by hand: inputs, a table, a check, JSON and CSV.

use lyapunov::exact::{complex_spectrum, sum_rule_complex};
use lyapunov::report::{Cell, Check, Format, RunReport, Table};
use lyapunov::{CovarianceSpectrum, PrecisionContext};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PrecisionContext::default();
    let y = CovarianceSpectrum::new(vec![2.0, 0.5])?;
    let spec = complex_spectrum(&y, &ctx)?;

    let mut r = RunReport::new("custom");
    r.input("y", y.y().to_vec());
    r.table = Table::new(&["k", "mu"]);
    for (k, mu) in spec.mu.iter().enumerate() {
        r.table.push(vec![Cell::Int(k as i64 + 1), Cell::big(mu, 20)]);
    }
    let residual = (spec.sum() - sum_rule_complex(&y, &ctx)).abs().to_f64();
    r.check(Check::at_most("sum_rule", residual, 1e-25, ""));

    print!("{}", r.render(Format::Csv));
    print!("{}", r.render(Format::Json));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

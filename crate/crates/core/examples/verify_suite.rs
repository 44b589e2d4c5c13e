// The built-in verification suite, rendered as JSON and as a check table.

use lyapunov::report::Format;
use lyapunov::verify::{run_suite, VerifyOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let opts = VerifyOptions {
        quick: true,
        ..VerifyOptions::default()
    };
    let report = run_suite(&opts)?;
    print!("{report}");
    let json = report.render(Format::Json);
    println!("{} bytes of JSON, all passed: {}", json.len(), report.all_passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

mod exact_spectrum {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exact_spectrum.rs"));
}

#[test]
fn exact_spectrum_example_runs() {
    exact_spectrum::run_example().expect("exact_spectrum example should run");
}

mod isotropic_and_real {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/isotropic_and_real.rs"));
}

#[test]
fn isotropic_and_real_example_runs() {
    isotropic_and_real::run_example().expect("isotropic_and_real example should run");
}

mod generalized_exponent {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/generalized_exponent.rs"));
}

#[test]
fn generalized_exponent_example_runs() {
    generalized_exponent::run_example().expect("generalized_exponent example should run");
}

mod product_chain {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/product_chain.rs"));
}

#[test]
fn product_chain_example_runs() {
    product_chain::run_example().expect("product_chain example should run");
}

mod single_step {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/single_step.rs"));
}

#[test]
fn single_step_example_runs() {
    single_step::run_example().expect("single_step example should run");
}

mod diffusive {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/diffusive.rs"));
}

#[test]
fn diffusive_example_runs() {
    diffusive::run_example().expect("diffusive example should run");
}

mod profile_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/profile_sweep.rs"));
}

#[test]
fn profile_sweep_example_runs() {
    profile_sweep::run_example().expect("profile_sweep example should run");
}

mod verify_suite {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_suite.rs"));
}

#[test]
fn verify_suite_example_runs() {
    verify_suite::run_example().expect("verify_suite example should run");
}

mod reports {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/reports.rs"));
}

#[test]
fn reports_example_runs() {
    reports::run_example().expect("reports example should run");
}

// Every built-in identity check, as the `verify` subcommand runs them.

use lmo_kernel::pipeline::{verify_suite, Suite};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let results = verify_suite(Suite::All, 3)?;
    for r in &results {
        println!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.name);
    }
    assert!(results.iter().all(|r| r.passed));
    Ok(())
}

fn main() {
    run_example().expect("verify identities");
}

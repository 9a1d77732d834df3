// Surgery on the unknot: both sides of the comparison for small lens spaces.

use lmo_kernel::pipeline::{Pipeline, Route, SurgeryInput};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for lie in ["A1", "A2"] {
        let mut p = Pipeline::new(lie, 3)?;
        for f in [1, -1, 2, -2, 3] {
            let report = p.compare(&SurgeryInput::unknot(f)?, None, Route::Both)?;
            println!(
                "{lie} f={f:+}: lmo = {}, |H1|^|Phi+| = {}, equal: {}",
                report.lmo_side, report.h1_power, report.equal
            );
            assert!(report.equal && report.all_passed());
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("lens spaces");
}

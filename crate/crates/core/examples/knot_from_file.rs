// A knot given as a diagram series file, with and without companion root data.

use lmo_kernel::balg::omega;
use lmo_kernel::diagrams::{DiagramSeries, TruncationPolicy};
use lmo_kernel::pipeline::{KnotInput, Pipeline, Route, SurgeryInput};
use lmo_kernel::rootsys::{quantum_dim_sq_shifted, ExponentialWeightSum};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // the unknot written out by hand, as an external tool would supply it
    let dir = std::env::temp_dir().join(format!("lmo-kernel-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let knot_path = dir.join("unknot.json");
    std::fs::write(&knot_path, omega(4).to_json())?;

    let text = std::fs::read_to_string(&knot_path)?;
    let series = DiagramSeries::from_json(&text, TruncationPolicy::new(usize::MAX, usize::MAX))?;
    let input = SurgeryInput::new(KnotInput::Series(series), 2, 2)?;

    let mut p = Pipeline::new("A1", 3)?;
    let lmo_only = p.compare(&input, None, Route::Definition)?;
    println!("{}: certified to h^{}, lmo = {}", lmo_only.mode, lmo_only.certified_order, lmo_only.lmo_side);

    let qdata = dir.join("qdata.json");
    std::fs::write(&qdata, quantum_dim_sq_shifted(p.root_system(), 2).to_json())?;
    let e = ExponentialWeightSum::from_json(&std::fs::read_to_string(&qdata)?)?;
    let full = p.compare(&input, Some(&e), Route::Both)?;
    println!("{}: equal = {}", full.mode, full.equal);
    assert!(full.equal);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() {
    run_example().expect("knot from file");
}

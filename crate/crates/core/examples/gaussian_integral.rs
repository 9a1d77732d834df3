// Formal Gaussian integration two ways: gluing struts before weighting,
// and Wick contraction after weighting.

use lmo_kernel::balg::fg_integral;
use lmo_kernel::diagrams::TruncationPolicy;
use lmo_kernel::liews::{wick, WeightSystem};
use lmo_kernel::pipeline::bridge_family;
use lmo_kernel::qseries::int;
use lmo_kernel::rootsys::RootSystem;

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let rs = RootSystem::build("A2")?;
    let g = rs.lie_algebra();
    let mut ws = WeightSystem::new(g.clone());
    let policy = TruncationPolicy::new(6, 6);
    for (name, y) in bridge_family(policy) {
        let t = ws.hat_weight(&y).exponent_coordinates();
        for f in [1, -2, 3] {
            let glued = ws.hat_scalar(&fg_integral(&y, Some(&int(f)))?);
            let contracted = wick(&t, &g, &int(f))?;
            assert_eq!(glued, contracted, "{name} f={f}");
        }
        println!("{name}: f = 3 gives {}", ws.hat_scalar(&fg_integral(&y, Some(&int(3)))?));
    }
    Ok(())
}

fn main() {
    run_example().expect("gaussian integral");
}

// Lie algebra weights of diagrams in sl(n), with several contraction schedules.

use lmo_kernel::balg::{theta, wheel};
use lmo_kernel::liews::{weight_tensor, weight_tensor_scheduled, LieAlgebraData, Schedule};
use lmo_kernel::pipeline::Pipeline;

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in [2, 3] {
        let g = LieAlgebraData::build_sl(n)?;
        let w = weight_tensor(&theta(), &g);
        println!("sl{n}: dim {}, W(theta) = {}", g.dim(), w.scalar_part());
        let w4 = weight_tensor(&wheel(2), &g);
        for seed in [1, 2, 3] {
            assert_eq!(weight_tensor_scheduled(&wheel(2), &g, Schedule::Random(seed)), w4);
        }
        println!("  W(w4) has {} symmetric monomials", w4.terms().count());
    }

    let mut p = Pipeline::new("A1", 4)?;
    println!("A1: W<Omega,Omega> = {}", p.omega_pairing()?);
    println!("A1: W(theta) = {}", p.hat_theta());
    Ok(())
}

fn main() {
    run_example().expect("weight system");
}

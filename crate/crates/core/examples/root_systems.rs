// Root systems, Weyl groups, the denominator identity and Le's formula.

use lmo_kernel::rootsys::{quantum_dim_sq_shifted, tau_pg, weyl_denominator, RootSystem};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for label in ["A1", "A2", "A3"] {
        let rs = RootSystem::build(label)?;
        let rep = weyl_denominator(&rs);
        println!(
            "{label}: |W| = {}, |Phi+| = {}, |rho|^2 = {}, denominator identity {}, squared {}",
            rs.weyl_group().len(),
            rs.positive_roots().len(),
            rs.norm_sq(rs.rho()),
            rep.holds,
            rep.square_holds
        );
    }

    let rs = RootSystem::build("A1")?;
    let e = quantum_dim_sq_shifted(&rs, 3);
    println!("A1 unknot data: {}", e.to_json());
    for f in [1, 2, 3] {
        let t = tau_pg(&rs, &e, f)?;
        println!("A1 tau f={f}: {}", t.value);
    }
    Ok(())
}

fn main() {
    run_example().expect("root systems");
}

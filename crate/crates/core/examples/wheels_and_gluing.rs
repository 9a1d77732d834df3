// The wheels series, pairing by gluing legs, and its inverse action.

use lmo_kernel::balg::{omega, pair, partial, wheel, wheeling_inverse};
use lmo_kernel::diagrams::{DiagramSeries, TruncationPolicy};
use lmo_kernel::qseries::rat;

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let om = omega(4);
    println!("Omega to 4 internal vertices:");
    for (k, c) in om.terms() {
        println!("  {c} * {k}");
    }

    let policy = TruncationPolicy::new(8, 8);
    let w1 = DiagramSeries::from_diagram(&lmo_kernel::balg::strut(), rat(1, 1), policy);
    let w2 = DiagramSeries::from_diagram(&wheel(1), rat(1, 1), policy);
    let glued = pair(&w1, &w2)?;
    println!("<strut, w2> = {} term(s)", glued.len());
    assert!(glued.terms().all(|(k, _)| k.is_closed()));

    let partial_glue = partial(&w1, &w2)?;
    println!("partial(strut, w2) has {} term(s)", partial_glue.len());

    let wi = wheeling_inverse(&om)?;
    println!("Omega-hat^-1(Omega) has {} term(s), truncated: {}", wi.len(), wi.is_truncated());
    Ok(())
}

fn main() {
    run_example().expect("wheels and gluing");
}

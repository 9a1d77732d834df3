// Jacobi diagrams, canonical forms under AS, and the JSON format.

use lmo_kernel::diagrams::{Canonical, DiagramSeries, JacobiDiagram, TruncationPolicy};
use lmo_kernel::qseries::rat;

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let w2 = JacobiDiagram::polygon_wheel(2);
    let flipped = w2.flip_orientation(0);
    let (a, b) = (w2.canonicalize(), flipped.canonicalize());
    println!("w2: {a:?}\nflipped: {b:?}");
    assert_eq!(a.key(), b.key());
    assert_eq!(a.sign(), -b.sign());

    // odd wheels are their own negatives
    assert!(matches!(JacobiDiagram::polygon_wheel(3).canonicalize(), Canonical::Zero));
    println!("w3 vanishes");

    let policy = TruncationPolicy::new(8, 8);
    let mut s = DiagramSeries::from_diagram(&w2, rat(1, 48), policy);
    s.add_diagram(&flipped, rat(1, 96));
    println!("w2/48 + flip(w2)/96 = {} term(s)", s.len());
    let json = s.to_json();
    println!("{json}");
    assert_eq!(DiagramSeries::from_json(&json, policy)?, s);
    Ok(())
}

fn main() {
    run_example().expect("canonical diagrams");
}

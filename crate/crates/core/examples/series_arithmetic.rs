// Truncated Laurent series in `h`: caps, exp/log, and the sinh ratio.

use lmo_kernel::qseries::{modified_bernoulli, rat, sinh_ratio, HSeries};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s = sinh_ratio(&rat(1, 1), 6);
    println!("sinh(h/2)/(h/2) = {s}");

    // log of the sinh ratio has the modified Bernoulli numbers as coefficients
    let log = s.try_log()?;
    println!("log = {log}");
    assert_eq!(log.at(2), modified_bernoulli(1) * rat(2, 1));

    // a pole and its cap
    let x = HSeries::monomial(rat(1, 1), 1, 4);
    let inv = x.try_add(&HSeries::monomial(rat(1, 2), 2, 4))?.try_inverse()?;
    println!("1/(h + h^2/2) = {inv}, known through h^{}", inv.cap());
    assert_eq!(inv.valuation(), Some(-1));

    let q = HSeries::q_power(&rat(3, 2), 4);
    println!("q^(3/2) = {q}");
    assert_eq!(q.try_log()?, HSeries::monomial(rat(3, 2), 1, 4));
    Ok(())
}

fn main() {
    run_example().expect("series arithmetic");
}

// eta * sqrt(delta) for the certified bound and for the baseline, against
// the limiting constant 2 sqrt(ln 2).

use expander_cert::asymptotics::{alpha_trend, baseline_alpha, TWO_SQRT_LN2};
use expander_cert::certifier::DEFAULT_MARGIN;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let deltas = [10usize, 20, 40, 80];
    let points = alpha_trend(&deltas, DEFAULT_MARGIN, 3)?;
    println!("limit 2 sqrt(ln 2) = {TWO_SQRT_LN2:.5}");
    for p in &points {
        println!(
            "delta {:>3}: eta {:.3}  alpha {:.4}  baseline {:.4}  theta {:.4}  P1 {:.4}",
            p.delta,
            p.eta,
            p.alpha,
            baseline_alpha(p.delta),
            p.theta,
            p.p1
        );
    }
    println!("baseline alpha at delta 10^4: {:.5}", baseline_alpha(10_000));
    Ok(())
}

fn main() {
    run_example().expect("trend example failed");
}

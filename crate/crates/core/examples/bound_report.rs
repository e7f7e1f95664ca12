// Scan the exponent of each degree-cap split for delta = 6 around the
// certified threshold, where the sign flips.

use expander_cert::certifier::{evaluate_pairs, PairRecord};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let delta = 6;
    for eta in [0.600, 0.640, 0.645, 0.648, 0.700, 0.900] {
        let pairs = evaluate_pairs(delta, eta)?;
        let mut worst = f64::NEG_INFINITY;
        print!("eta {eta:.3}:");
        for record in &pairs {
            match record {
                PairRecord::Feasible(p) => {
                    worst = worst.max(p.rhs);
                    print!("  ({},{}) {:+.5}", p.d, p.d_prime, p.rhs);
                }
                PairRecord::Vacuous(v) => print!("  ({},{}) vacuous", v.d, v.d_prime),
            }
        }
        println!("  -> {}", if worst < 0.0 { "certified" } else { "open" });
    }
    Ok(())
}

fn main() {
    run_example().expect("bound report failed");
}

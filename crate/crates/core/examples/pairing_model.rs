// Sample 3-regular pairing-model graphs on 4 vertices and compare how often
// S = {0, 1} sees each out-degree configuration with the exact formula.

use std::collections::BTreeMap;

use expander_cert::graphlab::{cut_state, log_config_prob, sample_pairing};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (delta, n, samples) = (3usize, 4usize, 20_000u64);
    let mut counts = BTreeMap::new();
    for seed in 0..samples {
        let g = sample_pairing(delta, n, seed)?;
        let state = cut_state(&g, vec![true, true, false, false])?;
        *counts
            .entry((state.hist_s().clone(), state.hist_comp().clone()))
            .or_insert(0u64) += 1;
    }
    let mut total = 0.0;
    for ((s, s_prime), count) in &counts {
        let p = log_config_prob(delta, n, s, s_prime)?.exp();
        total += p;
        println!(
            "s = {:?}  s' = {:?}  observed {:.4}  exact {:.4}",
            s.counts(),
            s_prime.counts(),
            *count as f64 / samples as f64,
            p
        );
    }
    println!("exact mass of observed configurations: {total:.6}");
    Ok(())
}

fn main() {
    run_example().expect("pairing example failed");
}

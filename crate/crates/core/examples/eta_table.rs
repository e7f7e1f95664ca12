// Certify the smallest eta for delta = 4..=10 and print the table with the
// per-split side parameters.
//
// ```bash
// cargo run --example eta_table
// ```

use expander_cert::certifier::{build_table, DEFAULT_MARGIN, DEFAULT_PRECISION};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let certs = build_table(4, 10, DEFAULT_MARGIN, DEFAULT_PRECISION)?;
    println!("delta    eta      i   prev_i");
    for cert in &certs {
        println!(
            "{:>5} {:>6.3} {:>6.3} {:>8.3}",
            cert.delta, cert.eta, cert.expansion_bound, cert.baseline_bound
        );
        for p in cert.feasible_pairs() {
            println!(
                "        ({}, {})  beta {:.5} gamma {:.5}  beta' {:.5} gamma' {:.5}",
                p.d, p.d_prime, p.side.beta, p.side.gamma, p.side_prime.beta, p.side_prime.gamma
            );
        }
        assert!(cert.expansion_bound > cert.baseline_bound);
    }
    Ok(())
}

fn main() {
    run_example().expect("table example failed");
}

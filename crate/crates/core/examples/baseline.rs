// The uncapped baseline next to the certified bound for a few degrees.

use expander_cert::certifier::{baseline_eta, baseline_root, min_eta, DEFAULT_MARGIN};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("delta  root      eta    bound   certified");
    for delta in [3usize, 4, 6, 10, 20] {
        let (eta, bound) = baseline_eta(delta, 3)?;
        let cert = min_eta(delta, DEFAULT_MARGIN, 3)?;
        println!(
            "{delta:>5}  {:.6}  {eta:.3}  {bound:>6.3}  {:>6.3}",
            baseline_root(delta),
            cert.expansion_bound
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("baseline example failed");
}

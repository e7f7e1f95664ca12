// A small expansion experiment: 6-regular graphs on 600 vertices, compared
// with the certified bound.

use expander_cert::graphlab::{expansion_experiment, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut config = ExperimentConfig::new(6, 600, 12, 7);
    config.restarts = 1;
    let report = expansion_experiment(&config)?;
    print!("{}", report.to_csv());
    let s = &report.summary;
    println!(
        "min {:.4}, mean {:.4}, bound {:?}, share reaching it {:?}",
        s.min_expansion, s.mean_expansion, s.certified_bound, s.fraction_at_or_above_bound
    );
    Ok(())
}

fn main() {
    run_example().expect("experiment failed");
}

// Swap descent on the 8-cycle from the alternating set, and on a random
// 5-regular graph from a random half.

use expander_cert::graphlab::{local_descent, sample_pairing, CutState, RegularMultigraph, TieRule};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    let c8 = RegularMultigraph::from_edges(2, 8, &edges)?;
    let out = local_descent(CutState::from_set(&c8, &[0, 2, 4, 6])?, TieRule::BestImprovement);
    println!(
        "C8: cut {:?} after {} swaps, S = {:?}",
        out.cut_history,
        out.swaps,
        out.state.members()
    );

    let g = sample_pairing(5, 400, 2024)?;
    let start: Vec<usize> = (0..200).collect();
    for rule in [TieRule::BestImprovement, TieRule::FirstImprovement] {
        let out = local_descent(CutState::from_set(&g, &start)?, rule);
        let s = &out.state;
        println!(
            "{rule:?}: cut {} -> {} in {} swaps, d = {}, d' = {}",
            out.cut_history[0],
            s.cut(),
            out.swaps,
            s.d(),
            s.d_prime()
        );
        assert!(s.is_locally_optimal());
    }
    Ok(())
}

fn main() {
    run_example().expect("descent example failed");
}

// Exact edge expansion of the Petersen graph and of a small random graph.

use expander_cert::graphlab::{brute_force_expansion, sample_pairing, RegularMultigraph};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let edges: Vec<_> = outer.chain(spokes).chain(inner).collect();
    let petersen = RegularMultigraph::from_edges(3, 10, &edges)?;
    let e = brute_force_expansion(&petersen)?;
    println!("Petersen: i = {} via S = {:?}", e.value, e.argmin);

    let g = sample_pairing(4, 18, 5)?;
    let e = brute_force_expansion(&g)?;
    println!("random 4-regular, n = 18: i = {} (cut {} over {:?})", e.value, e.cut, e.argmin);
    Ok(())
}

fn main() {
    run_example().expect("oracle example failed");
}

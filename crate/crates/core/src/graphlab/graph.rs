use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GraphError;

/// A `delta`-regular multigraph from the pairing model: `delta * n` points,
/// a perfect matching on them, and vertex `v` owning points
/// `v * delta .. (v + 1) * delta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularMultigraph {
    delta: usize,
    n: usize,
    pairing: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    loops: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleOptions {
    /// Reject pairings until the multigraph has no loops or parallel edges.
    pub simple_only: bool,
    pub max_attempts: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        Self {
            simple_only: false,
            max_attempts: 100_000,
        }
    }
}

impl RegularMultigraph {
    /// Build from an explicit pairing, checking that it is a perfect matching.
    pub fn from_pairing(delta: usize, n: usize, pairing: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        check_dimensions(delta, n)?;
        let points = delta * n;
        if pairing.len() * 2 != points {
            return Err(GraphError::InvalidPairing(format!(
                "{} pairs cannot cover {points} points",
                pairing.len()
            )));
        }
        let mut seen = vec![false; points];
        for &(a, b) in &pairing {
            for q in [a, b] {
                if q >= points {
                    return Err(GraphError::InvalidPairing(format!("point {q} out of range")));
                }
                if seen[q] {
                    return Err(GraphError::InvalidPairing(format!("point {q} matched twice")));
                }
                seen[q] = true;
            }
        }
        let mut adjacency = vec![Vec::with_capacity(delta); n];
        let mut loops = vec![0; n];
        for &(a, b) in &pairing {
            let (u, v) = (a / delta, b / delta);
            adjacency[u].push(v);
            adjacency[v].push(u);
            if u == v {
                loops[u] += 1;
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            delta,
            n,
            pairing,
            adjacency,
            loops,
        })
    }

    /// Build from an edge list in which every vertex appears exactly `delta`
    /// times (loops twice). Points are assigned to edges in order.
    pub fn from_edges(delta: usize, n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        check_dimensions(delta, n)?;
        let mut next = vec![0usize; n];
        let mut pairing = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::InvalidPairing(format!("edge ({u}, {v}) out of range")));
            }
            let mut take = |x: usize| -> Result<usize, GraphError> {
                if next[x] == delta {
                    return Err(GraphError::InvalidPairing(format!("vertex {x} exceeds degree {delta}")));
                }
                next[x] += 1;
                Ok(x * delta + next[x] - 1)
            };
            let a = take(u)?;
            let b = take(v)?;
            pairing.push((a, b));
        }
        Self::from_pairing(delta, n, pairing)
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairing(&self) -> &[(usize, usize)] {
        &self.pairing
    }

    /// Neighbour multiset of `v`, sorted; a loop contributes `v` twice.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn loops(&self, v: usize) -> usize {
        self.loops[v]
    }

    /// Number of parallel edges between distinct `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        if u == v {
            return self.loops[u];
        }
        let list = &self.adjacency[u];
        let start = list.partition_point(|&w| w < v);
        list[start..].iter().take_while(|&&w| w == v).count()
    }

    pub fn vertex_of(&self, point: usize) -> usize {
        point / self.delta
    }

    pub fn is_simple(&self) -> bool {
        self.loops.iter().all(|&l| l == 0)
            && self
                .adjacency
                .iter()
                .all(|list| list.windows(2).all(|w| w[0] != w[1]))
    }

    /// Matching in canonical form (each pair ordered, pairs sorted).
    pub fn canonical_pairing(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = self
            .pairing
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        pairs.sort_unstable();
        pairs
    }
}

fn check_dimensions(delta: usize, n: usize) -> Result<(), GraphError> {
    if delta == 0 || n == 0 {
        return Err(GraphError::Empty { delta, n });
    }
    if (delta * n) % 2 == 1 {
        return Err(GraphError::OddPointCount { delta, n });
    }
    Ok(())
}

/// Uniform random pairing: the lowest unmatched point is matched with a
/// uniformly chosen other unmatched point, until none remain.
pub fn sample_pairing(delta: usize, n: usize, seed: u64) -> Result<RegularMultigraph, GraphError> {
    sample_pairing_with(delta, n, seed, SampleOptions::default())
}

pub fn sample_pairing_with(
    delta: usize,
    n: usize,
    seed: u64,
    options: SampleOptions,
) -> Result<RegularMultigraph, GraphError> {
    check_dimensions(delta, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..options.max_attempts.max(1) {
        let graph = RegularMultigraph::from_pairing(delta, n, random_matching(delta * n, &mut rng))?;
        if !options.simple_only || graph.is_simple() {
            return Ok(graph);
        }
    }
    Err(GraphError::RejectionLimit {
        attempts: options.max_attempts,
    })
}

fn random_matching<R: Rng>(points: usize, rng: &mut R) -> Vec<(usize, usize)> {
    // `pool` holds the unmatched points; `slot[q]` is q's index in it.
    let mut pool: Vec<usize> = (0..points).collect();
    let mut slot: Vec<usize> = (0..points).collect();
    let mut matched = vec![false; points];
    let remove = |pool: &mut Vec<usize>, slot: &mut Vec<usize>, q: usize| {
        let i = slot[q];
        let last = *pool.last().expect("pool is non-empty");
        pool.swap_remove(i);
        if last != q {
            slot[last] = i;
        }
    };
    let mut pairs = Vec::with_capacity(points / 2);
    for p in 0..points {
        if matched[p] {
            continue;
        }
        remove(&mut pool, &mut slot, p);
        let q = pool[rng.gen_range(0..pool.len())];
        remove(&mut pool, &mut slot, q);
        matched[p] = true;
        matched[q] = true;
        pairs.push((p, q));
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = sample_pairing(1, 2, 99).unwrap();
        assert_eq!(g.canonical_pairing(), vec![(0, 1)]);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn degrees_are_regular() {
        let g = sample_pairing(3, 100, 7).unwrap();
        for v in 0..100 {
            assert_eq!(g.neighbors(v).len(), 3);
        }
    }

    #[test]
    fn odd_point_count_rejected() {
        assert_eq!(
            sample_pairing(3, 5, 1).unwrap_err(),
            GraphError::OddPointCount { delta: 3, n: 5 }
        );
        assert!(sample_pairing(0, 4, 1).is_err());
    }

    #[test]
    fn reproducible_per_seed() {
        let a = sample_pairing(4, 50, 12345).unwrap();
        let b = sample_pairing(4, 50, 12345).unwrap();
        let c = sample_pairing(4, 50, 12346).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn simple_mode() {
        let g = sample_pairing_with(3, 30, 5, SampleOptions { simple_only: true, ..Default::default() }).unwrap();
        assert!(g.is_simple());
    }

    #[test]
    fn loops_and_multiplicity() {
        // Two vertices of degree 3: a double edge and one loop each.
        let g = RegularMultigraph::from_edges(4, 2, &[(0, 1), (0, 1), (0, 0), (1, 1)]).unwrap();
        assert_eq!(g.multiplicity(0, 1), 2);
        assert_eq!(g.loops(0), 1);
        assert_eq!(g.neighbors(0), &[0, 0, 1, 1]);
        assert!(!g.is_simple());
    }

    #[test]
    fn bad_pairings() {
        assert!(RegularMultigraph::from_pairing(1, 2, vec![(0, 0)]).is_err());
        assert!(RegularMultigraph::from_pairing(1, 2, vec![(0, 2)]).is_err());
        assert!(RegularMultigraph::from_edges(2, 3, &[(0, 1), (0, 1), (0, 2)]).is_err());
    }
}

use serde::{Deserialize, Serialize};

/// Counts of vertices by out-degree on one side of a cut: entry `i` is the
/// number of vertices with exactly `i` neighbours across the cut.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OutDegreeVector {
    counts: Vec<u64>,
}

impl OutDegreeVector {
    /// All-zero vector for degree `delta` (length `delta + 1`).
    pub fn zeros(delta: usize) -> Self {
        Self {
            counts: vec![0; delta + 1],
        }
    }

    /// Panics on an empty vector: the length must be `delta + 1 >= 1`.
    pub fn from_counts(counts: Vec<u64>) -> Self {
        assert!(!counts.is_empty(), "out-degree vector needs delta + 1 entries");
        Self { counts }
    }

    pub fn delta(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, i: usize) -> u64 {
        self.counts.get(i).copied().unwrap_or(0)
    }

    pub(crate) fn increment(&mut self, i: usize) {
        self.counts[i] += 1;
    }

    pub(crate) fn decrement(&mut self, i: usize) {
        self.counts[i] -= 1;
    }

    /// Number of vertices counted.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `sum_i i * s_i`, the number of cut edges seen from this side.
    pub fn weighted_sum(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| i as u64 * c)
            .sum()
    }

    /// Largest out-degree that occurs, if any vertex is counted.
    pub fn max_degree(&self) -> Option<usize> {
        self.counts.iter().rposition(|&c| c > 0)
    }
}

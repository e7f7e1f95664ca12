use super::{GraphError, OutDegreeVector, RegularMultigraph};

/// A vertex set `S` in a fixed graph together with its cut size, per-vertex
/// out-degrees and the out-degree histograms of both sides.
///
/// Loops never cross the cut; `m` parallel edges across it count `m` times.
#[derive(Debug, Clone)]
pub struct CutState<'g> {
    graph: &'g RegularMultigraph,
    membership: Vec<bool>,
    size_s: usize,
    cut: u64,
    out: Vec<usize>,
    hist_s: OutDegreeVector,
    hist_comp: OutDegreeVector,
}

pub fn cut_state(graph: &RegularMultigraph, membership: Vec<bool>) -> Result<CutState<'_>, GraphError> {
    let n = graph.n();
    if membership.len() != n {
        return Err(GraphError::MembershipLength {
            expected: n,
            got: membership.len(),
        });
    }
    let delta = graph.delta();
    let mut out = vec![0; n];
    let mut hist_s = OutDegreeVector::zeros(delta);
    let mut hist_comp = OutDegreeVector::zeros(delta);
    let mut crossing_ends = 0u64;
    for v in 0..n {
        out[v] = graph
            .neighbors(v)
            .iter()
            .filter(|&&w| membership[w] != membership[v])
            .count();
        crossing_ends += out[v] as u64;
        if membership[v] {
            hist_s.increment(out[v]);
        } else {
            hist_comp.increment(out[v]);
        }
    }
    let size_s = membership.iter().filter(|&&b| b).count();
    Ok(CutState {
        graph,
        membership,
        size_s,
        cut: crossing_ends / 2,
        out,
        hist_s,
        hist_comp,
    })
}

impl<'g> CutState<'g> {
    /// `S` given as a list of vertex ids.
    pub fn from_set(graph: &'g RegularMultigraph, set: &[usize]) -> Result<Self, GraphError> {
        let mut membership = vec![false; graph.n()];
        for &v in set {
            if v >= graph.n() {
                return Err(GraphError::MembershipLength {
                    expected: graph.n(),
                    got: v + 1,
                });
            }
            membership[v] = true;
        }
        cut_state(graph, membership)
    }

    pub fn graph(&self) -> &'g RegularMultigraph {
        self.graph
    }

    pub fn membership(&self) -> &[bool] {
        &self.membership
    }

    pub fn contains(&self, v: usize) -> bool {
        self.membership[v]
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.membership.len()).filter(|&v| self.membership[v]).collect()
    }

    pub fn size_s(&self) -> usize {
        self.size_s
    }

    pub fn cut(&self) -> u64 {
        self.cut
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v]
    }

    pub fn hist_s(&self) -> &OutDegreeVector {
        &self.hist_s
    }

    pub fn hist_comp(&self) -> &OutDegreeVector {
        &self.hist_comp
    }

    /// Largest out-degree inside `S` (0 when `S` is empty).
    pub fn d(&self) -> usize {
        self.hist_s.max_degree().unwrap_or(0)
    }

    /// Largest out-degree outside `S` (0 when `S` is everything).
    pub fn d_prime(&self) -> usize {
        self.hist_comp.max_degree().unwrap_or(0)
    }

    /// Move `v` to the other side, updating everything in `O(delta)`.
    pub fn toggle(&mut self, v: usize) {
        let graph = self.graph;
        let side = self.membership[v];
        for &w in graph.neighbors(v) {
            if w == v {
                continue;
            }
            let hist = if self.membership[w] { &mut self.hist_s } else { &mut self.hist_comp };
            hist.decrement(self.out[w]);
            if self.membership[w] != side {
                self.out[w] -= 1;
                self.cut -= 1;
            } else {
                self.out[w] += 1;
                self.cut += 1;
            }
            let hist = if self.membership[w] { &mut self.hist_s } else { &mut self.hist_comp };
            hist.increment(self.out[w]);
        }
        let non_loop = graph.delta() - 2 * graph.loops(v);
        if side {
            self.hist_s.decrement(self.out[v]);
            self.size_s -= 1;
        } else {
            self.hist_comp.decrement(self.out[v]);
            self.size_s += 1;
        }
        self.out[v] = non_loop - self.out[v];
        self.membership[v] = !side;
        if side {
            self.hist_comp.increment(self.out[v]);
        } else {
            self.hist_s.increment(self.out[v]);
        }
    }

    fn check_swap(&self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.membership.len();
        if u >= n || v >= n || !self.membership[u] || self.membership[v] {
            return Err(GraphError::SwapSides { u, v });
        }
        Ok(())
    }

    /// Change in the cut if `u` (in `S`) and `v` (outside) trade places:
    /// `2 delta - 2 (a + b) + 2 m - 2 (loops(u) + loops(v))` with `a`, `b` the
    /// out-degrees and `m` the number of `u`-`v` edges.
    pub fn swap_delta(&self, u: usize, v: usize) -> Result<i64, GraphError> {
        self.check_swap(u, v)?;
        Ok(self.swap_delta_unchecked(u, v))
    }

    pub(crate) fn swap_delta_unchecked(&self, u: usize, v: usize) -> i64 {
        let g = self.graph;
        let delta = g.delta() as i64;
        let a = self.out[u] as i64;
        let b = self.out[v] as i64;
        let m = g.multiplicity(u, v) as i64;
        let loops = (g.loops(u) + g.loops(v)) as i64;
        2 * delta - 2 * (a + b) + 2 * m - 2 * loops
    }

    /// Exchange `u` (in `S`) and `v` (outside); returns the cut change.
    pub fn apply_swap(&mut self, u: usize, v: usize) -> Result<i64, GraphError> {
        self.check_swap(u, v)?;
        let before = self.cut as i64;
        self.toggle(u);
        self.toggle(v);
        Ok(self.cut as i64 - before)
    }

    /// Exhaustive search for a strictly improving swap, lowest `(u, v)` first.
    pub fn find_improving_swap(&self) -> Option<(usize, usize)> {
        let n = self.membership.len();
        for u in (0..n).filter(|&u| self.membership[u]) {
            for v in (0..n).filter(|&v| !self.membership[v]) {
                if self.swap_delta_unchecked(u, v) < 0 {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_locally_optimal(&self) -> bool {
        self.find_improving_swap().is_none()
    }

    /// Compare every cached quantity with a from-scratch recomputation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let fresh = cut_state(self.graph, self.membership.clone()).map_err(|e| e.to_string())?;
        if fresh.cut != self.cut {
            return Err(format!("cut {} but recomputed {}", self.cut, fresh.cut));
        }
        if fresh.out != self.out {
            return Err("per-vertex out-degrees drifted".into());
        }
        if fresh.hist_s != self.hist_s || fresh.hist_comp != self.hist_comp {
            return Err("histograms drifted".into());
        }
        if fresh.size_s != self.size_s {
            return Err(format!("size {} but recomputed {}", self.size_s, fresh.size_s));
        }
        let n = self.membership.len() as u64;
        if self.hist_s.total() != self.size_s as u64 || self.hist_comp.total() != n - self.size_s as u64 {
            return Err("histogram totals disagree with |S|".into());
        }
        if self.hist_s.weighted_sum() != self.cut || self.hist_comp.weighted_sum() != self.cut {
            return Err("histogram weighted sums disagree with the cut".into());
        }
        Ok(())
    }
}

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::CutState;

/// Which improving swap the descent takes when several exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    /// Largest cut decrease; ties go to the lowest `u`, then the lowest `v`.
    #[default]
    BestImprovement,
    /// Lowest `u` in `S` with any improving partner, then its lowest `v`.
    FirstImprovement,
}

#[derive(Debug, Clone)]
pub struct DescentOutcome<'g> {
    pub state: CutState<'g>,
    pub swaps: usize,
    /// Cut size before the first swap and after each one.
    pub cut_history: Vec<u64>,
}

/// Vertices bucketed by swap key `out-degree + loops`, per side.
///
/// Swapping `u` and `v` lowers the cut by `2 (key(u) + key(v) - m - delta)`,
/// `m` being the `u`-`v` multiplicity, so candidate pairs can be read off the
/// high buckets without scanning all of `S x (V \ S)`.
struct Buckets {
    inside: Vec<BTreeSet<usize>>,
    outside: Vec<BTreeSet<usize>>,
}

impl Buckets {
    fn new(state: &CutState<'_>) -> Self {
        let delta = state.graph().delta();
        let mut buckets = Self {
            inside: vec![BTreeSet::new(); delta + 1],
            outside: vec![BTreeSet::new(); delta + 1],
        };
        for v in 0..state.graph().n() {
            buckets.insert(state, v);
        }
        buckets
    }

    fn key(state: &CutState<'_>, v: usize) -> usize {
        state.out_degree(v) + state.graph().loops(v)
    }

    fn side(&mut self, inside: bool) -> &mut Vec<BTreeSet<usize>> {
        if inside {
            &mut self.inside
        } else {
            &mut self.outside
        }
    }

    fn insert(&mut self, state: &CutState<'_>, v: usize) {
        let k = Self::key(state, v);
        self.side(state.contains(v))[k].insert(v);
    }

    fn remove(&mut self, state: &CutState<'_>, v: usize) {
        let k = Self::key(state, v);
        self.side(state.contains(v))[k].remove(&v);
    }

    fn max_key(sets: &[BTreeSet<usize>]) -> Option<usize> {
        sets.iter().rposition(|b| !b.is_empty())
    }

    /// Lowest `v` outside `S` pairing with `u` at gain at least `min_gain`.
    fn partner(&self, state: &CutState<'_>, u: usize, ku: usize, min_gain: usize) -> Option<usize> {
        let graph = state.graph();
        let delta = graph.delta();
        let lowest_kv = (delta + min_gain).saturating_sub(ku);
        let mut best: Option<usize> = None;
        for kv in lowest_kv..=delta {
            let slack = ku + kv - delta - min_gain;
            let found = self.outside[kv]
                .iter()
                .take_while(|&&v| best.map_or(true, |b| v < b))
                .find(|&&v| graph.multiplicity(u, v) <= slack);
            if let Some(&v) = found {
                best = Some(v);
            }
        }
        best
    }

    /// Lexicographically lowest `(u, v)` with gain at least `min_gain`.
    fn find(&self, state: &CutState<'_>, min_gain: usize) -> Option<(usize, usize)> {
        let delta = state.graph().delta();
        let top_out = Self::max_key(&self.outside)?;
        let lowest_ku = (delta + min_gain).saturating_sub(top_out);
        let mut best: Option<(usize, usize)> = None;
        for ku in lowest_ku..=delta {
            for &u in &self.inside[ku] {
                if best.is_some_and(|(b, _)| u >= b) {
                    break;
                }
                if let Some(v) = self.partner(state, u, ku, min_gain) {
                    best = Some((u, v));
                    break;
                }
            }
        }
        best
    }
}

fn choose(buckets: &Buckets, state: &CutState<'_>, rule: TieRule) -> Option<(usize, usize)> {
    match rule {
        TieRule::FirstImprovement => buckets.find(state, 1),
        TieRule::BestImprovement => {
            let delta = state.graph().delta();
            (1..=delta).rev().find_map(|gain| buckets.find(state, gain))
        }
    }
}

/// Swap until no exchange of an inside and an outside vertex lowers the cut.
///
/// `|S|` never changes, each accepted swap lowers the cut by at least 2, and
/// the result depends only on the input state and `rule`.
pub fn local_descent(state: CutState<'_>, rule: TieRule) -> DescentOutcome<'_> {
    let mut state = state;
    let mut buckets = Buckets::new(&state);
    let mut cut_history = vec![state.cut()];
    let mut swaps = 0;
    while let Some((u, v)) = choose(&buckets, &state, rule) {
        let graph = state.graph();
        let mut touched: Vec<usize> = graph.neighbors(u).iter().chain(graph.neighbors(v)).copied().collect();
        touched.extend([u, v]);
        touched.sort_unstable();
        touched.dedup();
        for &w in &touched {
            buckets.remove(&state, w);
        }
        let before = state.cut();
        state.toggle(u);
        state.toggle(v);
        debug_assert!(state.cut() < before, "accepted swap must lower the cut");
        for &w in &touched {
            buckets.insert(&state, w);
        }
        swaps += 1;
        cut_history.push(state.cut());
    }
    DescentOutcome {
        state,
        swaps,
        cut_history,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphlab::{sample_pairing, RegularMultigraph};

    fn cycle(n: usize) -> RegularMultigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        RegularMultigraph::from_edges(2, n, &edges).unwrap()
    }

    #[test]
    fn optimal_input_is_fixed() {
        let g = cycle(8);
        let s = CutState::from_set(&g, &[0, 1, 2, 3]).unwrap();
        let out = local_descent(s, TieRule::BestImprovement);
        assert_eq!(out.swaps, 0);
        assert_eq!(out.state.members(), vec![0, 1, 2, 3]);
        assert_eq!(out.cut_history, vec![2]);
    }

    #[test]
    fn alternating_cycle_descends_to_an_arc() {
        let g = cycle(8);
        for rule in [TieRule::BestImprovement, TieRule::FirstImprovement] {
            let s = CutState::from_set(&g, &[0, 2, 4, 6]).unwrap();
            let out = local_descent(s, rule);
            assert_eq!(out.state.size_s(), 4);
            assert_eq!(out.state.cut(), 2, "{rule:?}");
            assert!(out.state.is_locally_optimal());
        }
    }

    #[test]
    fn matches_exhaustive_choice() {
        // The bucket search must pick the same swap as a plain scan.
        for seed in 0..20 {
            let g = sample_pairing(4, 16, seed).unwrap();
            let mut s = CutState::from_set(&g, &[0, 1, 2, 3, 4, 5, 6, 7]).unwrap();
            loop {
                let buckets = Buckets::new(&s);
                let first = buckets.find(&s, 1);
                assert_eq!(first, s.find_improving_swap());
                let best = choose(&buckets, &s, TieRule::BestImprovement);
                let scan = s
                    .members()
                    .into_iter()
                    .flat_map(|u| (0..16).filter(|&v| !s.contains(v)).map(move |v| (u, v)))
                    .map(|(u, v)| (s.swap_delta(u, v).unwrap(), u, v))
                    .filter(|t| t.0 < 0)
                    .min();
                assert_eq!(best, scan.map(|t| (t.1, t.2)));
                match first {
                    Some((u, v)) => {
                        s.apply_swap(u, v).unwrap();
                    }
                    None => break,
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        let g = sample_pairing(5, 60, 3).unwrap();
        let start: Vec<usize> = (0..30).collect();
        let a = local_descent(CutState::from_set(&g, &start).unwrap(), TieRule::FirstImprovement);
        let b = local_descent(CutState::from_set(&g, &start).unwrap(), TieRule::FirstImprovement);
        assert_eq!(a.cut_history, b.cut_history);
        assert_eq!(a.state.members(), b.state.members());
        a.state.check_invariants().unwrap();
    }
}

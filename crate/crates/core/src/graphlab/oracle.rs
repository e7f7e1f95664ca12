use num_rational::Ratio;

use super::{GraphError, RegularMultigraph};

/// Largest `n` accepted by [`brute_force_expansion`].
pub const ORACLE_MAX_N: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactExpansion {
    /// `min_{1 <= |S| <= n/2} c(S) / |S|`, reduced.
    pub value: Ratio<u64>,
    /// Lexicographically smallest minimiser, as sorted vertex ids.
    pub argmin: Vec<usize>,
    pub cut: u64,
}

/// `true` when set `a` precedes set `b` in the order of their sorted
/// element lists.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let x = diff & diff.wrapping_neg();
    if a & x != 0 {
        // `a` holds the first difference; `b` is smaller only if it stops there.
        b & !(x | (x - 1)) != 0
    } else {
        a & !(x | (x - 1)) == 0
    }
}

/// Exact edge expansion by enumerating every subset of the first `n - 1`
/// vertices in Gray-code order; each set also stands in for its complement.
pub fn brute_force_expansion(graph: &RegularMultigraph) -> Result<ExactExpansion, GraphError> {
    let n = graph.n();
    if n > ORACLE_MAX_N {
        return Err(GraphError::TooLarge { n, max: ORACLE_MAX_N });
    }
    if n < 2 {
        return Err(GraphError::Configuration("expansion needs at least two vertices".into()));
    }
    let full: u64 = (1 << n) - 1;
    let half = n / 2;

    let mut best: Option<(u64, usize, u64)> = None; // (cut, size, mask)
    let mut consider = |cut: u64, size: usize, mask: u64| {
        if size == 0 || size > half {
            return;
        }
        let better = match best {
            None => true,
            Some((bc, bs, bm)) => {
                let lhs = cut * bs as u64;
                let rhs = bc * size as u64;
                lhs < rhs || (lhs == rhs && lex_less(mask, bm))
            }
        };
        if better {
            best = Some((cut, size, mask));
        }
    };

    let mut mask = 0u64;
    let mut size = 0usize;
    let mut cut = 0u64;
    for k in 1u64..(1 << (n - 1)) {
        let v = k.trailing_zeros() as usize;
        let inside = mask >> v & 1 == 1;
        let mut crossing = 0u64;
        for &w in graph.neighbors(v) {
            if w != v && (mask >> w & 1 == 1) != inside {
                crossing += 1;
            }
        }
        let other = (graph.delta() - 2 * graph.loops(v)) as u64 - crossing;
        cut = cut + other - crossing;
        mask ^= 1 << v;
        if inside {
            size -= 1;
        } else {
            size += 1;
        }
        consider(cut, size, mask);
        consider(cut, n - size, full ^ mask);
    }

    let (cut, size, mask) = best.expect("n >= 2 leaves a set of size 1");
    Ok(ExactExpansion {
        value: Ratio::new(cut, size as u64),
        argmin: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
        cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order() {
        // {0, 2} < {1}, {0} < {0, 1}, {0, 1} < {0, 2}
        assert!(lex_less(0b101, 0b010));
        assert!(lex_less(0b001, 0b011));
        assert!(!lex_less(0b011, 0b001));
        assert!(lex_less(0b011, 0b101));
        assert!(!lex_less(0b101, 0b011));
        assert!(!lex_less(0b11, 0b11));
    }

    #[test]
    fn complete_graph_k4() {
        let g = RegularMultigraph::from_edges(3, 4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let e = brute_force_expansion(&g).unwrap();
        assert_eq!(e.value, Ratio::from_integer(2));
        assert_eq!(e.argmin, vec![0, 1]);
    }

    #[test]
    fn cycle_c8() {
        let edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        let g = RegularMultigraph::from_edges(2, 8, &edges).unwrap();
        let e = brute_force_expansion(&g).unwrap();
        assert_eq!(e.value, Ratio::new(1, 2));
        assert_eq!(e.argmin, vec![0, 1, 2, 3]);
    }

    #[test]
    fn guard() {
        let g = crate::graphlab::sample_pairing(3, 28, 1).unwrap();
        assert_eq!(
            brute_force_expansion(&g).unwrap_err(),
            GraphError::TooLarge { n: 28, max: ORACLE_MAX_N }
        );
    }
}

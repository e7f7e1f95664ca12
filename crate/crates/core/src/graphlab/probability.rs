use super::{GraphError, OutDegreeVector};
use crate::combinatorics::{log_binomial, log_factorial, log_odd_double_factorial};

/// Natural log of the probability that a fixed set `S` of `u` vertices in a
/// pairing-model graph has out-degree vector `svec` and its complement has
/// `svec_prime`:
///
/// ```text
/// u! / prod s_i!  * prod C(delta, i)^{s_i}
///   * (n-u)! / prod s'_i!  * prod C(delta, i)^{s'_i}
///   * c! (delta u - c)!! (delta (n-u) - c)!! / (delta n)!!
/// ```
///
/// where `m!!` is the product of the odd integers up to `m` (the number of
/// perfect matchings on `m` points).
pub fn log_config_prob(
    delta: usize,
    n: usize,
    svec: &OutDegreeVector,
    svec_prime: &OutDegreeVector,
) -> Result<f64, GraphError> {
    let bad = |msg: String| Err(GraphError::Configuration(msg));
    if svec.delta() != delta || svec_prime.delta() != delta {
        return bad(format!("vectors must have {} entries", delta + 1));
    }
    let u = svec.total();
    if u + svec_prime.total() != n as u64 {
        return bad(format!("sides hold {} + {} vertices, not {n}", u, svec_prime.total()));
    }
    let c = svec.weighted_sum();
    if svec_prime.weighted_sum() != c {
        return bad(format!(
            "cut seen from S is {c}, from the complement {}",
            svec_prime.weighted_sum()
        ));
    }
    let delta64 = delta as u64;
    let inner = delta64 * u;
    let outer = delta64 * (n as u64 - u);
    if c > inner || c > outer {
        return bad(format!("cut {c} exceeds the points available on one side"));
    }
    if (inner - c) % 2 == 1 || (outer - c) % 2 == 1 {
        return bad(format!("cut {c} leaves an odd number of unmatched points on a side"));
    }

    let side = |v: &OutDegreeVector| -> f64 {
        log_factorial(v.total())
            + v.counts()
                .iter()
                .enumerate()
                .map(|(i, &s)| s as f64 * log_binomial(delta64, i as i64) - log_factorial(s))
                .sum::<f64>()
    };
    let matchings = |m: u64| log_odd_double_factorial(m).expect("parity checked above");
    Ok(side(svec) + side(svec_prime) + log_factorial(c) + matchings(inner - c) + matchings(outer - c)
        - matchings(delta64 * n as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u64]) -> OutDegreeVector {
        OutDegreeVector::from_counts(c.to_vec())
    }

    #[test]
    fn forced_matching() {
        assert!(log_config_prob(1, 2, &v(&[0, 1]), &v(&[0, 1])).unwrap().abs() < 1e-15);
    }

    #[test]
    fn internal_pairing() {
        let lp = log_config_prob(1, 4, &v(&[2, 0]), &v(&[2, 0])).unwrap();
        assert!((lp - (1.0f64 / 3.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn rejects_impossible_vectors() {
        assert!(log_config_prob(1, 4, &v(&[1, 1]), &v(&[2, 0])).is_err());
        assert!(log_config_prob(2, 3, &v(&[0, 1, 0]), &v(&[1, 1, 0])).is_err());
        assert!(log_config_prob(2, 4, &v(&[0, 1, 0]), &v(&[1, 1])).is_err());
        assert!(log_config_prob(2, 4, &v(&[1, 0, 0]), &v(&[2, 1, 0])).is_err());
        assert!(log_config_prob(2, 4, &v(&[1, 0, 0]), &v(&[3, 0, 0])).is_ok());
    }
}

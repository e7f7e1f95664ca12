//! Library results against independent computations: exact big-integer and
//! rational arithmetic, naive enumeration, and recomputation from scratch.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use expander_cert::asymptotics::{cap_probabilities, check_p1p3_identity};
use expander_cert::certifier::{bound_rhs, rhs_from_params};
use expander_cert::combinatorics::{
    binomial_tail, log_binomial, log_odd_double_factorial, truncated_moments, TruncatedBinomialProfile,
};
use expander_cert::graphlab::{brute_force_expansion, cut_state, sample_pairing, OutDegreeVector, RegularMultigraph};
use expander_cert::side_solver::{log_f, solve_side};

fn big_binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Natural log of a big integer from its top 64 bits.
fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().unwrap() as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn rational_ln(x: &BigRational) -> f64 {
    big_ln(&x.numer().to_biguint().unwrap()) - big_ln(&x.denom().to_biguint().unwrap())
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn log_binomial_against_exact_integers() {
    for (n, k) in [(1000u64, 500u64), (1000, 1), (1000, 999), (200, 73), (5000, 2500), (17, 8)] {
        let exact = big_ln(&big_binomial(n, k));
        assert!(rel(log_binomial(n, k as i64), exact) < 1e-13, "C({n}, {k})");
    }
}

#[test]
fn ladder_sum_for_central_binomial() {
    // ln C(1000, 500) = sum_{i=1}^{500} ln((500 + i) / i)
    let ladder: f64 = (1..=500).map(|i| ((500 + i) as f64 / i as f64).ln()).sum();
    assert!(rel(log_binomial(1000, 500), ladder) < 1e-13);
}

#[test]
fn odd_double_factorial_of_100() {
    let mut exact = BigUint::one();
    for k in (1..100u64).step_by(2) {
        exact *= BigUint::from(k);
    }
    assert!(rel(log_odd_double_factorial(100).unwrap(), big_ln(&exact)) < 1e-14);
}

#[test]
fn truncated_moments_against_rationals() {
    // delta = 40, cap = 20, gamma = 4/5
    let gamma = ratio(4, 5);
    let mut s0 = BigRational::zero();
    let mut s1 = BigRational::zero();
    let mut power = BigRational::one();
    for i in 0..=20u64 {
        let term = BigRational::from_integer(big_binomial(40, i).into()) * &power;
        s1 += &term * BigRational::from_integer(i.into());
        s0 += term;
        power *= &gamma;
    }
    let profile = TruncatedBinomialProfile::new(40, 20, 0.8).unwrap();
    let m = truncated_moments(&profile);
    assert!(rel(m.log_s0, rational_ln(&s0)) < 1e-13);
    assert!(rel(m.log_s1, rational_ln(&s1)) < 1e-13);
    let mean = (s1 / s0).to_f64().unwrap();
    assert!(rel(m.mean, mean) < 1e-13);
}

fn exact_tail(n: u64, p: &BigRational, cap: u64) -> BigRational {
    let q = BigRational::one() - p;
    (0..=cap)
        .map(|k| {
            BigRational::from_integer(big_binomial(n, k).into())
                * num_traits::pow(p.clone(), k as usize)
                * num_traits::pow(q.clone(), (n - k) as usize)
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

#[test]
fn binomial_tail_against_rationals() {
    let exact = exact_tail(100, &ratio(9, 20), 50).to_f64().unwrap();
    assert!((binomial_tail(100, 0.45, 50) - exact).abs() < 1e-13);
    let exact = exact_tail(60, &ratio(1, 10), 2).to_f64().unwrap();
    assert!(rel(binomial_tail(60, 0.1, 2), exact) < 1e-12);
}

#[test]
fn cap_probabilities_against_rationals() {
    // gamma = 93/100, so p = 93/193; delta = 101, d = 50.
    let p = ratio(93, 193);
    let q = BigRational::one() - &p;
    let p1 = exact_tail(101, &p, 50);
    let p2 = exact_tail(100, &p, 49);
    let p3 = BigRational::from_integer(big_binomial(101, 50).into())
        * num_traits::pow(p.clone(), 50)
        * num_traits::pow(q, 51);
    // The identity holds exactly in rationals.
    assert_eq!(&p1 - &p2 - &p3 * ratio(51, 101), BigRational::zero());

    let probs = cap_probabilities(101, 50, 0.93).unwrap();
    assert!(rel(probs.p1, p1.to_f64().unwrap()) < 1e-12);
    assert!(rel(probs.p2, p2.to_f64().unwrap()) < 1e-12);
    assert!(rel(probs.p3, p3.to_f64().unwrap()) < 1e-12);
    assert!(check_p1p3_identity(101, 50, 0.93).unwrap() <= 1e-12);
}

#[test]
fn exponent_from_rounded_parameters() {
    // delta = 4, pair (2, 2) at eta = 0.778 with beta = 0.61807 and
    // gamma = 0.12938 rounded to five places.
    let (delta, eta) = (4.0f64, 0.778f64);
    let (beta, gamma) = (0.61807f64, 0.12938f64);
    let by_hand = 1.0 - beta.log2() - (1.0 - eta) * (delta / 4.0) * 2.0 * gamma.log2() - delta
        + (1.0 + eta) * delta / 4.0 * (1.0 + eta).log2()
        + (1.0 - eta) * delta / 4.0 * (1.0 - eta).log2();
    let from_params = rhs_from_params(4, eta, (beta.ln(), gamma), (beta.ln(), gamma));
    assert!((from_params - by_hand).abs() < 1e-12);
    let solved = bound_rhs(4, 2, 2, eta).unwrap();
    // Five-digit rounding of beta and gamma moves the exponent by ~1e-4.
    assert!((solved - by_hand).abs() < 2e-4, "{solved} vs {by_hand}");
    assert!(solved < 0.0);
}

fn naive_expansion(g: &RegularMultigraph) -> (u64, u64, Vec<usize>) {
    let n = g.n();
    let mut best: Option<(u64, u64, Vec<usize>)> = None;
    for mask in 1u64..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if set.len() > n / 2 {
            continue;
        }
        let cut = g
            .pairing()
            .iter()
            .filter(|&&(a, b)| (mask >> g.vertex_of(a) & 1) != (mask >> g.vertex_of(b) & 1))
            .count() as u64;
        let size = set.len() as u64;
        let better = match &best {
            None => true,
            Some((bc, bs, bset)) => cut * bs < bc * size || (cut * bs == bc * size && set < *bset),
        };
        if better {
            best = Some((cut, size, set));
        }
    }
    best.unwrap()
}

fn petersen() -> RegularMultigraph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let edges: Vec<_> = outer.chain(spokes).chain(inner).collect();
    RegularMultigraph::from_edges(3, 10, &edges).unwrap()
}

#[test]
fn exact_expansion_of_named_graphs() {
    let c8_edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    let k4 = RegularMultigraph::from_edges(3, 4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let cases = [
        (petersen(), 1u64, 1u64),
        (RegularMultigraph::from_edges(2, 8, &c8_edges).unwrap(), 1, 2),
        (k4, 2, 1),
    ];
    for (g, num, den) in cases {
        let e = brute_force_expansion(&g).unwrap();
        assert_eq!((*e.value.numer(), *e.value.denom()), (num, den));
        let (cut, size, set) = naive_expansion(&g);
        assert_eq!(e.value, num_rational::Ratio::new(cut, size));
        assert_eq!(e.argmin, set);
    }
}

#[test]
fn gray_code_oracle_matches_naive_enumeration() {
    for seed in 0..60u64 {
        let delta = 1 + (seed % 5) as usize;
        let n = if delta % 2 == 1 { 4 + 2 * (seed % 5) as usize } else { 3 + (seed % 9) as usize };
        let g = sample_pairing(delta, n, seed).unwrap();
        let e = brute_force_expansion(&g).unwrap();
        let (cut, size, set) = naive_expansion(&g);
        assert_eq!(e.value, num_rational::Ratio::new(cut, size), "seed {seed}");
        assert_eq!(e.argmin, set, "seed {seed}");
        assert_eq!(e.cut * size, cut * e.argmin.len() as u64);
    }
}

#[test]
fn swap_delta_against_recomputation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    let mut checked = 0;
    while checked < 10_000 {
        let delta = rng.gen_range(1..=8usize);
        let mut n = rng.gen_range(2..=30usize);
        if delta * n % 2 == 1 {
            n += 1;
        }
        let g = sample_pairing(delta, n, rng.gen()).unwrap();
        let membership: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let state = cut_state(&g, membership.clone()).unwrap();
        let inside: Vec<usize> = (0..n).filter(|&v| membership[v]).collect();
        let outside: Vec<usize> = (0..n).filter(|&v| !membership[v]).collect();
        if inside.is_empty() || outside.is_empty() {
            continue;
        }
        let u = inside[rng.gen_range(0..inside.len())];
        let v = outside[rng.gen_range(0..outside.len())];
        let predicted = state.swap_delta(u, v).unwrap();
        let mut swapped = membership;
        swapped.swap(u, v);
        let after = cut_state(&g, swapped).unwrap();
        assert_eq!(after.cut() as i64 - state.cut() as i64, predicted);
        let mut applied = state.clone();
        applied.apply_swap(u, v).unwrap();
        applied.check_invariants().unwrap();
        assert_eq!(applied.cut(), after.cut());
        checked += 1;
    }
}

/// Round `u * weights` to integers summing to `u` by largest remainders.
fn largest_remainder(u: u64, weights: &[f64]) -> Vec<u64> {
    let raw: Vec<f64> = weights.iter().map(|w| w * u as f64).collect();
    let mut counts: Vec<u64> = raw.iter().map(|x| x.floor() as u64).collect();
    let short = u - counts.iter().sum::<u64>();
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| (raw[b] - raw[b].floor()).total_cmp(&(raw[a] - raw[a].floor())));
    for &i in order.iter().take(short as usize) {
        counts[i] += 1;
    }
    counts
}

#[test]
fn rounded_profile_is_a_near_maximum_of_f() {
    // The binomial-shaped profile, scaled to u = 10^6 vertices and rounded,
    // must not be beaten by more than O(delta^2 / sqrt(u)) (in ln F) by any
    // move that keeps both sum s_i and sum i s_i fixed.
    let u = 1_000_000u64;
    for (delta, cap, eta) in [(4usize, 2usize, 0.778), (4, 4, 0.6), (6, 3, 0.648), (8, 5, 0.565)] {
        let side = solve_side(delta, cap, eta).unwrap();
        let weights: Vec<f64> = (0..=delta)
            .map(|i| {
                if i > cap {
                    0.0
                } else {
                    side.beta * side.gamma.powi(i as i32) * (log_binomial(delta as u64, i as i64)).exp()
                }
            })
            .collect();
        let base = largest_remainder(u, &weights);
        let base_f = log_f(&OutDegreeVector::from_counts(base.clone()));
        let slack = 10.0 * (delta * delta) as f64 / (u as f64).sqrt();
        for a in 0..=cap {
            for b in a + 1..=cap {
                for c in b + 1..=cap {
                    // (c - b) e_a - (c - a) e_b + (b - a) e_c keeps both sums.
                    let step = [(a, (c - b) as i64), (b, -((c - a) as i64)), (c, (b - a) as i64)];
                    for k in [-100i64, -10, -1, 1, 10, 100] {
                        let mut moved: Vec<i64> = base.iter().map(|&x| x as i64).collect();
                        for &(i, w) in &step {
                            moved[i] += k * w;
                        }
                        let moved = OutDegreeVector::from_counts(moved.into_iter().map(|x| x as u64).collect());
                        let f = log_f(&moved);
                        assert!(
                            f <= base_f + slack,
                            "delta {delta} cap {cap}: move {step:?} x {k} gains {}",
                            f - base_f
                        );
                    }
                }
            }
        }
    }
}

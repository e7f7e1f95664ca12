use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{cut_state, local_descent, sample_pairing_with, GraphError, SampleOptions, TieRule};
use crate::certifier::{min_eta, DEFAULT_MARGIN, DEFAULT_PRECISION};

pub const CSV_HEADER: &str = "trial,n,delta,best_expansion_num,best_expansion_den,d,d_prime,swaps,restarts";

/// Required share of trials whose best-found expansion reaches the
/// certified bound before the run is considered consistent with it.
pub const BOUND_SHARE: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub delta: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Extra descents per graph from fresh random balanced starts.
    pub restarts: usize,
    pub simple_only: bool,
    pub tie_rule: TieRule,
    pub margin: f64,
    pub precision: u32,
}

impl ExperimentConfig {
    pub fn new(delta: usize, n: usize, trials: usize, seed: u64) -> Self {
        Self {
            delta,
            n,
            trials,
            seed,
            restarts: 0,
            simple_only: false,
            tie_rule: TieRule::BestImprovement,
            margin: DEFAULT_MARGIN,
            precision: DEFAULT_PRECISION,
        }
    }

    fn validate(&self) -> Result<(), GraphError> {
        let bad = |msg: String| Err(GraphError::Experiment(msg));
        if !(1..=20).contains(&self.delta) {
            return bad(format!("delta {} outside 1..=20", self.delta));
        }
        if !(2..=100_000).contains(&self.n) {
            return bad(format!("n {} outside 2..=100000", self.n));
        }
        if !(1..=10_000).contains(&self.trials) {
            return bad(format!("trials {} outside 1..=10000", self.trials));
        }
        if (self.delta * self.n) % 2 == 1 {
            return Err(GraphError::OddPointCount {
                delta: self.delta,
                n: self.n,
            });
        }
        Ok(())
    }
}

/// Per-trial seed, a SplitMix64 mix of the run seed and the trial index, so
/// results do not depend on how trials are scheduled.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    let mut z = seed ^ (trial as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub n: usize,
    pub delta: usize,
    pub best_expansion_num: u64,
    pub best_expansion_den: u64,
    pub d: usize,
    pub d_prime: usize,
    pub swaps: usize,
    pub restarts: usize,
    /// Descents in this trial that stopped with `d + d' > delta + 1`.
    pub cap_sum_violations: usize,
    /// Descents that stopped with `d + d' <= delta`.
    pub within_delta: usize,
}

impl TrialRecord {
    pub fn best_expansion(&self) -> f64 {
        self.best_expansion_num as f64 / self.best_expansion_den as f64
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.trial,
            self.n,
            self.delta,
            self.best_expansion_num,
            self.best_expansion_den,
            self.d,
            self.d_prime,
            self.swaps,
            self.restarts
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub delta: usize,
    pub n: usize,
    pub trials: usize,
    pub restarts: usize,
    pub seed: u64,
    pub min_expansion: f64,
    pub mean_expansion: f64,
    /// Share of all descents ending with `d + d' <= delta`.
    pub fraction_within_delta: f64,
    pub cap_sum_violations: usize,
    /// Certified lower bound for this `delta`, when one exists.
    pub certified_bound: Option<f64>,
    pub fraction_at_or_above_bound: Option<f64>,
    /// Trials whose best-found expansion is below the certified bound.
    pub exceptions: Vec<usize>,
}

impl ExperimentSummary {
    /// `None` when there is no bound to compare against.
    pub fn consistent_with_bound(&self) -> Option<bool> {
        self.fraction_at_or_above_bound.map(|f| f >= BOUND_SHARE)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub trials: Vec<TrialRecord>,
    pub summary: ExperimentSummary,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for t in &self.trials {
            out.push_str(&t.csv_row());
            out.push('\n');
        }
        out
    }

    /// One JSON object per trial, then the summary.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for t in &self.trials {
            out.push_str(&serde_json::to_string(t).expect("trial records serialise"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("summary serialises"));
        out.push('\n');
        out
    }
}

fn run_trial(config: &ExperimentConfig, trial: usize) -> Result<TrialRecord, GraphError> {
    let seed = trial_seed(config.seed, trial);
    let options = SampleOptions {
        simple_only: config.simple_only,
        ..SampleOptions::default()
    };
    let graph = sample_pairing_with(config.delta, config.n, seed, options)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED_5EED_5EED_5EED);
    let half = config.n / 2;
    let mut order: Vec<usize> = (0..config.n).collect();

    let mut best: Option<(Ratio<u64>, usize, usize, usize)> = None;
    let mut violations = 0;
    let mut within = 0;
    for _ in 0..=config.restarts {
        order.shuffle(&mut rng);
        let mut membership = vec![false; config.n];
        for &v in &order[..half] {
            membership[v] = true;
        }
        let outcome = local_descent(cut_state(&graph, membership)?, config.tie_rule);
        let state = &outcome.state;
        let (d, d_prime) = (state.d(), state.d_prime());
        if d + d_prime > config.delta + 1 {
            violations += 1;
        }
        if d + d_prime <= config.delta {
            within += 1;
        }
        let expansion = Ratio::new(state.cut(), half as u64);
        if best.as_ref().map_or(true, |b| expansion < b.0) {
            best = Some((expansion, d, d_prime, outcome.swaps));
        }
    }
    let (expansion, d, d_prime, swaps) = best.expect("at least one descent runs");
    Ok(TrialRecord {
        trial,
        n: config.n,
        delta: config.delta,
        best_expansion_num: *expansion.numer(),
        best_expansion_den: *expansion.denom(),
        d,
        d_prime,
        swaps,
        restarts: config.restarts,
        cap_sum_violations: violations,
        within_delta: within,
    })
}

/// Sample graphs, descend from random balanced sets and compare what is
/// found with the certified bound for `delta`.
pub fn expansion_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, GraphError> {
    config.validate()?;
    let trials: Vec<TrialRecord> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect::<Result<_, _>>()?;

    let certified_bound = if config.delta >= 3 {
        min_eta(config.delta, config.margin, config.precision)
            .ok()
            .map(|c| c.expansion_bound)
    } else {
        None
    };
    let values: Vec<f64> = trials.iter().map(TrialRecord::best_expansion).collect();
    let descents = (trials.len() * (config.restarts + 1)) as f64;
    let exceptions: Vec<usize> = match certified_bound {
        Some(b) => trials
            .iter()
            .filter(|t| t.best_expansion() < b)
            .map(|t| t.trial)
            .collect(),
        None => Vec::new(),
    };
    let summary = ExperimentSummary {
        delta: config.delta,
        n: config.n,
        trials: trials.len(),
        restarts: config.restarts,
        seed: config.seed,
        min_expansion: values.iter().copied().fold(f64::INFINITY, f64::min),
        mean_expansion: values.iter().sum::<f64>() / values.len() as f64,
        fraction_within_delta: trials.iter().map(|t| t.within_delta).sum::<usize>() as f64 / descents,
        cap_sum_violations: trials.iter().map(|t| t.cap_sum_violations).sum(),
        certified_bound,
        fraction_at_or_above_bound: certified_bound
            .map(|_| 1.0 - exceptions.len() as f64 / trials.len() as f64),
        exceptions,
    };
    Ok(ExperimentReport {
        config: config.clone(),
        trials,
        summary,
    })
}

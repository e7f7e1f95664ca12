//! Pairing-model graphs and the machinery for looking at their cuts: a
//! sampler, incremental cut bookkeeping, swap descent, an exact small-`n`
//! expansion oracle, the configuration probability, and an experiment
//! harness tying them together.

use thiserror::Error;

mod cut;
mod degree;
mod descent;
mod experiment;
mod graph;
mod oracle;
mod probability;

pub use cut::{cut_state, CutState};
pub use degree::OutDegreeVector;
pub use descent::{local_descent, DescentOutcome, TieRule};
pub use experiment::{
    expansion_experiment, trial_seed, ExperimentConfig, ExperimentReport, ExperimentSummary, TrialRecord,
    CSV_HEADER,
};
pub use graph::{sample_pairing, sample_pairing_with, RegularMultigraph, SampleOptions};
pub use oracle::{brute_force_expansion, ExactExpansion, ORACLE_MAX_N};
pub use probability::log_config_prob;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph needs delta >= 1 and n >= 1 (got delta = {delta}, n = {n})")]
    Empty { delta: usize, n: usize },
    #[error("delta * n must be even (got delta = {delta}, n = {n})")]
    OddPointCount { delta: usize, n: usize },
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("no simple graph after {attempts} attempts")]
    RejectionLimit { attempts: usize },
    #[error("membership has {got} entries for {expected} vertices")]
    MembershipLength { expected: usize, got: usize },
    #[error("swap needs u in S and v outside S (u = {u}, v = {v})")]
    SwapSides { u: usize, v: usize },
    #[error("exact expansion is limited to n <= {max} (got {n}); sample with local_descent instead")]
    TooLarge { n: usize, max: usize },
    #[error("impossible configuration: {0}")]
    Configuration(String),
    #[error("experiment parameters out of range: {0}")]
    Experiment(String),
}

//! Search procedures over a fixed landscape.
//!
//! All four algorithms share one accounting contract: a step is the
//! algorithm's atomic decision (a full neighborhood sweep for steepest
//! ascent, one proposal for centralized search and muddling through, one
//! generation for parallel updating) and `evaluations` counts candidate
//! configurations whose fitness or cluster aggregate was computed.

mod centralized;
mod muddling;
mod parallel;
mod partition;
mod steepest;
mod walker;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::landscape::{Configuration, Landscape};

pub use centralized::centralized_search;
pub use muddling::{
    cluster_comember_aggregate, mt_candidate_moves, muddling_through, AcceptanceScope, MaxChanges,
    MtParams,
};
pub use parallel::{parallel_update, parallel_update_sweep, PuParams, DEFAULT_TAU_GRID};
pub use partition::{build_cluster_partition, ClusterPartition, PartitionMode};
pub use steepest::steepest_ascent;

/// Time-step limit, plus whether to keep a per-step trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    max_steps: u64,
    record_trace: bool,
}

impl SearchBudget {
    pub fn new(max_steps: u64) -> Result<Self> {
        if max_steps == 0 {
            return Err(invalid("search budget must allow at least one step"));
        }
        Ok(Self {
            max_steps,
            record_trace: false,
        })
    }

    /// Effectively unbounded; used by oracle checks on small instances.
    pub fn unlimited() -> Self {
        Self {
            max_steps: u64::MAX,
            record_trace: false,
        }
    }

    pub fn traced(mut self) -> Self {
        self.record_trace = true;
        self
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }

    pub fn records_trace(&self) -> bool {
        self.record_trace
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_steps: 1000,
            record_trace: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    BudgetExhausted,
    LocalStop,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::BudgetExhausted => "budget_exhausted",
            Termination::LocalStop => "local_stop",
        })
    }
}

/// One line of a per-run trace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRecord {
    pub step: u64,
    /// Nodes flipped by the proposal, joined with `+`; empty when nothing was proposed.
    pub proposal: String,
    pub accepted: bool,
    pub current_fitness: f64,
    pub best_fitness: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub best_config: Configuration,
    pub best_fitness: f64,
    pub final_config: Configuration,
    pub steps_used: u64,
    pub evaluations: u64,
    pub hamming_init_to_best: usize,
    pub termination: Termination,
    pub trajectory: Option<Vec<TraceRecord>>,
}

/// Bookkeeping shared by every algorithm: step and evaluation counters,
/// the running best and the optional trace.
pub(crate) struct Tracker {
    pub steps: u64,
    pub evaluations: u64,
    best_bits: Vec<bool>,
    best_fitness: f64,
    trace: Option<Vec<TraceRecord>>,
}

impl Tracker {
    pub(crate) fn new(start: &[bool], fitness: f64, budget: &SearchBudget) -> Self {
        Self {
            steps: 0,
            evaluations: 0,
            best_bits: start.to_vec(),
            best_fitness: fitness,
            trace: budget.records_trace().then(Vec::new),
        }
    }

    /// Offers a visited configuration as a new running best (strict `>`).
    pub(crate) fn offer(&mut self, bits: &[bool], fitness: f64) {
        if fitness > self.best_fitness {
            self.best_fitness = fitness;
            self.best_bits.clear();
            self.best_bits.extend_from_slice(bits);
        }
    }

    pub(crate) fn best_fitness(&self) -> f64 {
        self.best_fitness
    }

    pub(crate) fn tracing(&self) -> bool {
        self.trace.is_some()
    }

    pub(crate) fn record(&mut self, proposal: &[usize], accepted: bool, current_fitness: f64) {
        if let Some(trace) = self.trace.as_mut() {
            trace.push(TraceRecord {
                step: self.steps,
                proposal: proposal
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join("+"),
                accepted,
                current_fitness,
                best_fitness: self.best_fitness,
            });
        }
    }

    pub(crate) fn finish(
        self,
        landscape: &Landscape,
        init: &Configuration,
        final_config: Configuration,
        termination: Termination,
    ) -> SearchOutcome {
        let best_config = Configuration::new(self.best_bits);
        let best_fitness = landscape
            .total_fitness(&best_config)
            .expect("best configuration has the landscape's length");
        debug_assert_eq!(best_fitness, self.best_fitness);
        let hamming_init_to_best = init
            .hamming_distance(&best_config)
            .expect("same length as init");
        SearchOutcome {
            best_config,
            best_fitness,
            final_config,
            steps_used: self.steps,
            evaluations: self.evaluations,
            hamming_init_to_best,
            termination,
            trajectory: self.trace,
        }
    }
}

pub(crate) fn check_init(landscape: &Landscape, init: &Configuration) -> Result<()> {
    if init.len() != landscape.n() {
        return Err(crate::error::NkError::LengthMismatch {
            expected: landscape.n(),
            actual: init.len(),
        });
    }
    Ok(())
}

/// Uniform random starting point: each bit is 1 with probability one half.
pub fn random_initial_config<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Configuration {
    Configuration::random(rng, n)
}

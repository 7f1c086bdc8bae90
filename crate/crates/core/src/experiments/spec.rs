use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::algorithm::Algorithm;
use crate::error::{invalid, Result};
use crate::landscape::{InteractionScheme, MAX_K};
use crate::search::SearchBudget;

pub const DEFAULT_K_VALUES: [usize; 11] = [0, 1, 2, 3, 4, 6, 8, 10, 12, 15, 19];

fn default_n() -> usize {
    20
}

fn default_k_values() -> Vec<usize> {
    DEFAULT_K_VALUES.to_vec()
}

fn default_replications() -> usize {
    500
}

fn default_budget() -> u64 {
    1000
}

/// A batch of searches: every algorithm on `replications` fresh landscapes
/// for each `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_k_values")]
    pub k_values: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_replications")]
    pub replications: usize,
    /// Time steps per search (per tau value for parallel updating).
    #[serde(default = "default_budget")]
    pub budget: u64,
    pub master_seed: u64,
    #[serde(default)]
    pub scheme: InteractionScheme,
}

impl ExperimentSpec {
    /// The comparison design used throughout: n = 20, 1000 steps, four clusters.
    pub fn standard(
        k_values: Vec<usize>,
        algorithms: &[&str],
        replications: usize,
        master_seed: u64,
    ) -> Result<Self> {
        let spec = Self {
            n: default_n(),
            k_values,
            algorithms: algorithms
                .iter()
                .map(|a| a.parse())
                .collect::<Result<Vec<_>>>()?,
            replications,
            budget: default_budget(),
            master_seed,
            scheme: InteractionScheme::Random,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn search_budget(&self) -> Result<SearchBudget> {
        SearchBudget::new(self.budget).map_err(|_| invalid("budget: must be at least 1"))
    }

    /// Checks every cross-field constraint; messages name the offending key.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(invalid("n: must be at least 1"));
        }
        if self.replications == 0 {
            return Err(invalid("replications: must be at least 1"));
        }
        if self.budget == 0 {
            return Err(invalid("budget: must be at least 1"));
        }
        if self.k_values.is_empty() {
            return Err(invalid("k_values: must not be empty"));
        }
        let mut seen = HashSet::new();
        for (i, &k) in self.k_values.iter().enumerate() {
            if k > self.n - 1 {
                return Err(invalid(format!(
                    "k_values[{i}]: k = {k} violates k <= n - 1 = {}",
                    self.n - 1
                )));
            }
            if k > MAX_K {
                return Err(invalid(format!(
                    "k_values[{i}]: k = {k} exceeds the supported maximum {MAX_K}"
                )));
            }
            if !seen.insert(k) {
                return Err(invalid(format!("k_values[{i}]: duplicate k = {k}")));
            }
        }
        if self.algorithms.is_empty() {
            return Err(invalid("algorithms: must not be empty"));
        }
        let mut ids = HashSet::new();
        for (i, a) in self.algorithms.iter().enumerate() {
            a.validate_for(self.n)
                .map_err(|e| invalid(format!("algorithms[{i}]: {e}")))?;
            if !ids.insert(a.id()) {
                return Err(invalid(format!("algorithms[{i}]: duplicate `{}`", a.id())));
            }
        }
        Ok(())
    }
}

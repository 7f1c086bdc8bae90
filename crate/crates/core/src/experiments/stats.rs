use serde::{Deserialize, Serialize};

use super::{ExperimentSpec, ReplicationRecord};
use crate::search::Termination;

/// Sample mean and its standard error (sample standard deviation over
/// the square root of the count; zero for a single observation).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
}

impl MeanSe {
    pub fn of(values: &[f64]) -> Self {
        let count = values.len();
        if count == 0 {
            return Self {
                mean: f64::NAN,
                se: f64::NAN,
            };
        }
        let mean = values.iter().sum::<f64>() / count as f64;
        if count == 1 {
            return Self { mean, se: 0.0 };
        }
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        let sd = (ss / (count - 1) as f64).sqrt();
        Self {
            mean,
            se: sd / (count as f64).sqrt(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub k: usize,
    pub algorithm: String,
    pub count: usize,
    pub fitness: MeanSe,
    pub hamming: MeanSe,
    pub evaluations: MeanSe,
    pub local_stop_fraction: f64,
    /// Best fitness divided by the landscape's global maximum.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normalized_fitness: Option<MeanSe>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AggregateStats {
    pub rows: Vec<AggregateRow>,
}

impl AggregateStats {
    pub fn get(&self, k: usize, algorithm: &str) -> Option<&AggregateRow> {
        self.rows
            .iter()
            .find(|r| r.k == k && r.algorithm == algorithm)
    }
}

/// Reduces records (already sorted by k, algorithm, replication) to one
/// row per (k, algorithm) in spec order.
pub fn aggregate(spec: &ExperimentSpec, records: &[ReplicationRecord]) -> AggregateStats {
    let mut rows = Vec::new();
    for &k in &spec.k_values {
        for alg in &spec.algorithms {
            let group: Vec<&ReplicationRecord> = records
                .iter()
                .filter(|r| r.k == k && r.algorithm == alg.id())
                .collect();
            if group.is_empty() {
                continue;
            }
            let collect = |f: &dyn Fn(&ReplicationRecord) -> f64| -> Vec<f64> {
                group.iter().map(|r| f(r)).collect()
            };
            let normalized: Option<Vec<f64>> = group
                .iter()
                .map(|r| r.global_max.map(|g| r.best_fitness / g))
                .collect();
            let local_stops = group
                .iter()
                .filter(|r| r.termination == Termination::LocalStop)
                .count();
            rows.push(AggregateRow {
                k,
                algorithm: alg.id().to_string(),
                count: group.len(),
                fitness: MeanSe::of(&collect(&|r| r.best_fitness)),
                hamming: MeanSe::of(&collect(&|r| r.hamming as f64)),
                evaluations: MeanSe::of(&collect(&|r| r.evaluations as f64)),
                local_stop_fraction: local_stops as f64 / group.len() as f64,
                normalized_fitness: normalized.map(|v| MeanSe::of(&v)),
            });
        }
    }
    AggregateStats { rows }
}

/// Per-replication difference `a - b` of a metric at one `k`, summarized as
/// mean and standard error. Replications missing either side are skipped.
pub fn paired_difference(
    records: &[ReplicationRecord],
    k: usize,
    a: &str,
    b: &str,
    metric: impl Fn(&ReplicationRecord) -> f64,
) -> MeanSe {
    let side = |alg: &str| {
        let mut v: Vec<(usize, f64)> = records
            .iter()
            .filter(|r| r.k == k && r.algorithm == alg)
            .map(|r| (r.replication, metric(r)))
            .collect();
        v.sort_by_key(|&(rep, _)| rep);
        v
    };
    let (left, right) = (side(a), side(b));
    let mut diffs = Vec::with_capacity(left.len());
    let mut j = 0;
    for &(rep, x) in &left {
        while j < right.len() && right[j].0 < rep {
            j += 1;
        }
        if j < right.len() && right[j].0 == rep {
            diffs.push(x - right[j].1);
        }
    }
    MeanSe::of(&diffs)
}

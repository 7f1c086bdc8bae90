//! Batch harness: many fresh landscapes per `k`, every algorithm run from
//! the same initial configuration on the same landscape (paired design),
//! and reduction to per-(k, algorithm) means and standard errors.

mod algorithm;
mod spec;
mod stats;
mod streams;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

pub use algorithm::{Algorithm, AlgorithmKind};
pub use spec::{ExperimentSpec, DEFAULT_K_VALUES};
pub use stats::{aggregate, paired_difference, AggregateRow, AggregateStats, MeanSe};
pub use streams::{derive_seed, derive_stream, StreamPurpose};

use crate::error::{invalid, NkError, Result};
use crate::landscape::{Configuration, Landscape};
use crate::oracle::{brute_force_optimum, OracleReport, MAX_ORACLE_N};
use crate::search::{random_initial_config, Termination, TraceRecord};

/// Outcome of one algorithm on one replication.
#[derive(Clone, Debug, PartialEq)]
pub struct ReplicationRecord {
    pub replication: usize,
    pub k: usize,
    pub algorithm: String,
    pub landscape_seed: u64,
    pub best_fitness: f64,
    pub hamming: usize,
    pub evaluations: u64,
    pub steps: u64,
    pub termination: Termination,
    /// Digest of the landscape and starting configuration; equal across
    /// the algorithms of one replication.
    pub instance_fingerprint: u64,
    /// Global maximum of the landscape, when normalization was requested.
    pub global_max: Option<f64>,
    pub trace: Option<Vec<TraceRecord>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub workers: usize,
    /// Enumerate every landscape and report fitness relative to its optimum.
    pub normalize: bool,
    pub trace: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            normalize: false,
            trace: false,
        }
    }
}

impl RunOptions {
    pub fn with_workers(workers: usize) -> Self {
        Self {
            workers,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleEntry {
    pub replication: usize,
    pub k: usize,
    pub landscape_seed: u64,
    #[serde(flatten)]
    pub report: OracleReport,
}

#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub spec: ExperimentSpec,
    /// Sorted by k (spec order), algorithm (spec order), replication.
    pub records: Vec<ReplicationRecord>,
    pub aggregates: AggregateStats,
    pub oracle: Option<Vec<OracleEntry>>,
    pub wall_time: Duration,
}

struct Cell {
    records: Vec<ReplicationRecord>,
    oracle: Option<OracleEntry>,
}

fn run_cell(
    spec: &ExperimentSpec,
    replication: usize,
    k: usize,
    options: &RunOptions,
) -> Result<Cell> {
    let landscape_seed = derive_seed(
        spec.master_seed,
        replication,
        k,
        "",
        StreamPurpose::Landscape,
    );
    let landscape = Landscape::build(landscape_seed, spec.n, k, spec.scheme)?;
    let init = random_initial_config(
        &mut derive_stream(spec.master_seed, replication, k, "", StreamPurpose::Init),
        spec.n,
    );
    let instance_fingerprint = instance_fingerprint(&landscape, &init);

    let oracle = if options.normalize {
        Some(OracleEntry {
            replication,
            k,
            landscape_seed,
            report: brute_force_optimum(&landscape)?,
        })
    } else {
        None
    };
    let global_max = oracle.as_ref().map(|o| o.report.global_max_fitness);

    let mut budget = spec.search_budget()?;
    if options.trace {
        budget = budget.traced();
    }

    let records = spec
        .algorithms
        .iter()
        .map(|alg| {
            let out = alg
                .run(&landscape, &init, budget, spec.master_seed, replication)
                .map_err(|e| NkError::Replication {
                    replication,
                    k,
                    algorithm: alg.id().to_string(),
                    source: Box::new(e),
                })?;
            Ok(ReplicationRecord {
                replication,
                k,
                algorithm: alg.id().to_string(),
                landscape_seed,
                best_fitness: out.best_fitness,
                hamming: out.hamming_init_to_best,
                evaluations: out.evaluations,
                steps: out.steps_used,
                termination: out.termination,
                instance_fingerprint,
                global_max,
                trace: out.trajectory,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Cell { records, oracle })
}

fn instance_fingerprint(landscape: &Landscape, init: &Configuration) -> u64 {
    streams::fingerprint(
        [landscape.seed(), landscape.n() as u64, landscape.k() as u64]
            .into_iter()
            .chain(init.bits().iter().map(|&b| b as u64)),
    )
}

/// Runs every algorithm of `spec` on replication `replication` at `k`,
/// sharing one landscape and one starting configuration.
pub fn run_replication(
    spec: &ExperimentSpec,
    replication: usize,
    k: usize,
) -> Result<Vec<ReplicationRecord>> {
    spec.validate()?;
    Ok(run_cell(spec, replication, k, &RunOptions::default())?.records)
}

/// Runs the full grid of replications on a pool of `options.workers`
/// threads. Results do not depend on the worker count.
pub fn run_experiment(spec: &ExperimentSpec, options: RunOptions) -> Result<ExperimentResult> {
    spec.validate()?;
    if options.workers == 0 {
        return Err(invalid("worker count must be at least 1"));
    }
    if options.normalize && spec.n > MAX_ORACLE_N {
        return Err(invalid(format!(
            "normalization enumerates every configuration and needs n <= {MAX_ORACLE_N}, got n = {}",
            spec.n
        )));
    }
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| invalid(format!("cannot start worker pool: {e}")))?;

    let cells: Vec<(usize, usize)> = spec
        .k_values
        .iter()
        .flat_map(|&k| (0..spec.replications).map(move |r| (r, k)))
        .collect();
    let results: Vec<Cell> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(r, k)| run_cell(spec, r, k, &options))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut oracle = options.normalize.then(Vec::new);
    let mut records = Vec::with_capacity(results.len() * spec.algorithms.len());
    for cell in results {
        records.extend(cell.records);
        if let (Some(all), Some(entry)) = (oracle.as_mut(), cell.oracle) {
            all.push(entry);
        }
    }
    let k_rank = |k: usize| spec.k_values.iter().position(|&x| x == k);
    let alg_rank = |id: &str| spec.algorithms.iter().position(|a| a.id() == id);
    records.sort_by_key(|r| (k_rank(r.k), alg_rank(&r.algorithm), r.replication));

    let aggregates = aggregate(spec, &records);
    Ok(ExperimentResult {
        spec: spec.clone(),
        records,
        aggregates,
        oracle,
        wall_time: started.elapsed(),
    })
}

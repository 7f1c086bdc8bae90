//! Reading experiment specs and writing result files.
//!
//! Output directory layout:
//!
//! - `records.csv`: one row per (replication, k, algorithm)
//! - `aggregates.csv` / `aggregates.json`: per-(k, algorithm) summaries
//! - `metadata.json`: spec echo, version and timing
//! - `oracle.json`: per-landscape brute-force reports (normalized runs only)
//! - `traces.csv`: per-step traces (traced runs only)

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{NkError, Result};
use crate::experiments::{
    AggregateStats, ExperimentResult, ExperimentSpec, ReplicationRecord, DEFAULT_K_VALUES,
};
use crate::search::DEFAULT_TAU_GRID;

pub const RECORDS_FILE: &str = "records.csv";
pub const AGGREGATES_CSV_FILE: &str = "aggregates.csv";
pub const AGGREGATES_JSON_FILE: &str = "aggregates.json";
pub const METADATA_FILE: &str = "metadata.json";
pub const ORACLE_FILE: &str = "oracle.json";
pub const TRACES_FILE: &str = "traces.csv";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> NkError + '_ {
    move |source| NkError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Parses and validates a JSON experiment spec, filling defaults.
pub fn parse_spec(path: &Path) -> Result<ExperimentSpec> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    spec_from_str(&text).map_err(|e| match e {
        NkError::Json { source, .. } => NkError::Json {
            context: path.display().to_string(),
            source,
        },
        other => other,
    })
}

pub fn spec_from_str(text: &str) -> Result<ExperimentSpec> {
    let spec: ExperimentSpec = serde_json::from_str(text).map_err(|source| NkError::Json {
        context: "experiment spec".into(),
        source,
    })?;
    spec.validate()?;
    Ok(spec)
}

#[derive(Serialize)]
struct RecordRow<'a> {
    replication: usize,
    k: usize,
    algorithm: &'a str,
    landscape_seed: u64,
    best_fitness: f64,
    hamming: usize,
    evaluations: u64,
    steps: u64,
    termination: String,
}

pub fn write_records_csv<W: Write>(out: W, records: &[ReplicationRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(RecordRow {
            replication: r.replication,
            k: r.k,
            algorithm: &r.algorithm,
            landscape_seed: r.landscape_seed,
            best_fitness: r.best_fitness,
            hamming: r.hamming,
            evaluations: r.evaluations,
            steps: r.steps,
            termination: r.termination.to_string(),
        })?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Flat form of one aggregate row, as stored in `aggregates.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateCsvRow {
    pub k: usize,
    pub algorithm: String,
    pub count: usize,
    pub fitness_mean: f64,
    pub fitness_se: f64,
    pub hamming_mean: f64,
    pub hamming_se: f64,
    pub evaluations_mean: f64,
    pub evaluations_se: f64,
    pub local_stop_fraction: f64,
    pub normalized_fitness_mean: Option<f64>,
    pub normalized_fitness_se: Option<f64>,
}

pub fn write_aggregates_csv<W: Write>(out: W, stats: &AggregateStats) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in &stats.rows {
        w.serialize(AggregateCsvRow {
            k: r.k,
            algorithm: r.algorithm.clone(),
            count: r.count,
            fitness_mean: r.fitness.mean,
            fitness_se: r.fitness.se,
            hamming_mean: r.hamming.mean,
            hamming_se: r.hamming.se,
            evaluations_mean: r.evaluations.mean,
            evaluations_se: r.evaluations.se,
            local_stop_fraction: r.local_stop_fraction,
            normalized_fitness_mean: r.normalized_fitness.map(|m| m.mean),
            normalized_fitness_se: r.normalized_fitness.map(|m| m.se),
        })?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_aggregates_csv(path: &Path) -> Result<Vec<AggregateCsvRow>> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    csv::Reader::from_reader(file)
        .deserialize()
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(NkError::from)
}

#[derive(Serialize)]
struct TraceRow<'a> {
    replication: usize,
    k: usize,
    algorithm: &'a str,
    step: u64,
    proposal: &'a str,
    accepted: bool,
    current_fitness: f64,
    best_fitness: f64,
}

pub fn write_traces_csv<W: Write>(out: W, records: &[ReplicationRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        for t in r.trace.iter().flatten() {
            w.serialize(TraceRow {
                replication: r.replication,
                k: r.k,
                algorithm: &r.algorithm,
                step: t.step,
                proposal: &t.proposal,
                accepted: t.accepted,
                current_fitness: t.current_fitness,
                best_fitness: t.best_fitness,
            })?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Serialize)]
struct DesignNotes {
    paired_initial_configuration: bool,
    interaction_scheme: String,
    default_k_values: Vec<usize>,
    default_tau_grid: Vec<f64>,
    parallel_update_budget: &'static str,
    muddling_through_default_scope: &'static str,
    time_step: &'static str,
    resource_metric: &'static str,
}

#[derive(Serialize)]
struct Metadata<'a> {
    software: &'static str,
    version: &'static str,
    spec: &'a ExperimentSpec,
    design: DesignNotes,
    normalized: bool,
    traced: bool,
    /// Non-deterministic fields; excluded from reproducibility comparisons.
    wall_time_seconds: f64,
    finished_unix_seconds: u64,
}

pub fn metadata_json(result: &ExperimentResult) -> Result<String> {
    let spec = &result.spec;
    let meta = Metadata {
        software: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        spec,
        design: DesignNotes {
            paired_initial_configuration: true,
            interaction_scheme: spec.scheme.to_string(),
            default_k_values: DEFAULT_K_VALUES.to_vec(),
            default_tau_grid: DEFAULT_TAU_GRID.to_vec(),
            parallel_update_budget: "full budget of generations for each tau value",
            muddling_through_default_scope: "comembers_excluding_focal",
            time_step: "sa: neighborhood sweep; cs, mt: one proposal; pu: one generation",
            resource_metric: "candidate configurations evaluated",
        },
        normalized: result.oracle.is_some(),
        traced: result.records.iter().any(|r| r.trace.is_some()),
        wall_time_seconds: result.wall_time.as_secs_f64(),
        finished_unix_seconds: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs()),
    };
    serde_json::to_string_pretty(&meta).map_err(|source| NkError::Json {
        context: "metadata".into(),
        source,
    })
}

/// Reads the spec echoed into a metadata sidecar.
pub fn spec_from_metadata(text: &str) -> Result<ExperimentSpec> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|source| NkError::Json {
        context: "metadata".into(),
        source,
    })?;
    let spec = value
        .get("spec")
        .cloned()
        .ok_or_else(|| crate::error::invalid("metadata has no `spec` field"))?;
    let spec: ExperimentSpec = serde_json::from_value(spec).map_err(|source| NkError::Json {
        context: "metadata spec".into(),
        source,
    })?;
    spec.validate()?;
    Ok(spec)
}

fn write_file(path: PathBuf, write: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<PathBuf> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    fs::write(&path, buf).map_err(io_err(&path))?;
    Ok(path)
}

fn json_bytes<T: Serialize>(value: &T, context: &str) -> Result<Vec<u8>> {
    let mut text = serde_json::to_vec_pretty(value).map_err(|source| NkError::Json {
        context: context.into(),
        source,
    })?;
    text.push(b'\n');
    Ok(text)
}

/// Writes every output file into `dir` (created if needed) and returns their paths.
pub fn write_outputs(result: &ExperimentResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = vec![
        write_file(dir.join(RECORDS_FILE), |b| {
            write_records_csv(b, &result.records)
        })?,
        write_file(dir.join(AGGREGATES_CSV_FILE), |b| {
            write_aggregates_csv(b, &result.aggregates)
        })?,
        write_file(dir.join(AGGREGATES_JSON_FILE), |b| {
            b.extend(json_bytes(&result.aggregates, "aggregates")?);
            Ok(())
        })?,
        write_file(dir.join(METADATA_FILE), |b| {
            b.extend(metadata_json(result)?.into_bytes());
            b.push(b'\n');
            Ok(())
        })?,
    ];
    if let Some(oracle) = &result.oracle {
        written.push(write_file(dir.join(ORACLE_FILE), |b| {
            b.extend(json_bytes(oracle, "oracle report")?);
            Ok(())
        })?);
    }
    if result.records.iter().any(|r| r.trace.is_some()) {
        written.push(write_file(dir.join(TRACES_FILE), |b| {
            write_traces_csv(b, &result.records)
        })?);
    }
    Ok(written)
}

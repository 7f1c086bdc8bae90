//! NK fitness landscapes and four local search procedures over them:
//! steepest ascent, centralized search, parallel updating and the
//! cluster-based muddling-through search, together with an exhaustive
//! oracle for small instances and a seeded, parallel experiment harness.

pub mod error;
pub mod experiments;
pub mod io;
pub mod landscape;
pub mod oracle;
pub mod search;

pub use error::{NkError, Result};
pub use experiments::{
    derive_seed, derive_stream, run_experiment, run_replication, AggregateRow, AggregateStats,
    Algorithm, AlgorithmKind, ExperimentResult, ExperimentSpec, MeanSe, ReplicationRecord,
    RunOptions, StreamPurpose,
};
pub use landscape::{
    build_landscape, flip_node, hamming_distance, Configuration, ContributionProfile,
    InteractionScheme, Landscape, LandscapeDocument,
};
pub use oracle::{brute_force_optimum, is_local_optimum, OracleReport};
pub use search::{
    build_cluster_partition, centralized_search, cluster_comember_aggregate, muddling_through,
    parallel_update, parallel_update_sweep, random_initial_config, steepest_ascent,
    AcceptanceScope, ClusterPartition, MaxChanges, MtParams, PartitionMode, PuParams, SearchBudget,
    SearchOutcome, Termination, TraceRecord, DEFAULT_TAU_GRID,
};

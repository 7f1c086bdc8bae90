use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::streams::{derive_stream, StreamPurpose};
use crate::error::{invalid, NkError, Result};
use crate::landscape::{Configuration, Landscape};
use crate::search::{
    build_cluster_partition, centralized_search, muddling_through, parallel_update_sweep,
    steepest_ascent, AcceptanceScope, MaxChanges, MtParams, PartitionMode, PuParams, SearchBudget,
    SearchOutcome, DEFAULT_TAU_GRID,
};

#[derive(Clone, Debug, PartialEq)]
pub enum AlgorithmKind {
    SteepestAscent,
    CentralizedSearch,
    /// Best of one parallel-update run per tau value.
    ParallelUpdate {
        tau_grid: Vec<f64>,
    },
    MuddlingThrough {
        clusters: usize,
        max_changes: MaxChanges,
        scope: AcceptanceScope,
        partition: PartitionMode,
    },
}

/// An algorithm descriptor together with the exact string it was written as.
///
/// Grammar: `sa`, `cs`, `pu` (default tau grid), `pu:<tau>,<tau>,...`,
/// `mt:<clusters>:<max_changes>[:<scope>[:<partition>]]` where scope is
/// `excl` or `whole` and partition is `contiguous` or `shuffled`.
#[derive(Clone, Debug, PartialEq)]
pub struct Algorithm {
    id: String,
    kind: AlgorithmKind,
}

impl Algorithm {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> &AlgorithmKind {
        &self.kind
    }

    pub fn is_muddling_through(&self) -> bool {
        matches!(self.kind, AlgorithmKind::MuddlingThrough { .. })
    }

    /// Checks parameters that depend on the landscape size.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        if let AlgorithmKind::MuddlingThrough { clusters, .. } = self.kind {
            if clusters < 2 || clusters > n / 2 {
                return Err(invalid(format!(
                    "`{}`: {clusters} clusters would force a cluster with fewer than two members at n = {n} (allowed 2..={})",
                    self.id,
                    n / 2
                )));
            }
        }
        Ok(())
    }

    /// Runs the algorithm with streams derived from the replication tuple.
    pub fn run(
        &self,
        landscape: &Landscape,
        init: &Configuration,
        budget: SearchBudget,
        master_seed: u64,
        replication: usize,
    ) -> Result<SearchOutcome> {
        let k = landscape.k();
        let stream = |purpose| derive_stream(master_seed, replication, k, &self.id, purpose);
        match &self.kind {
            AlgorithmKind::SteepestAscent => steepest_ascent(landscape, init, budget),
            AlgorithmKind::CentralizedSearch => {
                centralized_search(landscape, init, budget, &mut stream(StreamPurpose::Search))
            }
            AlgorithmKind::ParallelUpdate { tau_grid } => {
                let mut streams: Vec<_> = (0..tau_grid.len())
                    .map(|i| stream(StreamPurpose::TauRun(i)))
                    .collect();
                parallel_update_sweep(landscape, init, budget, tau_grid, &mut streams)
            }
            AlgorithmKind::MuddlingThrough {
                clusters,
                max_changes,
                scope,
                partition,
            } => {
                let partition = build_cluster_partition(
                    landscape.n(),
                    *clusters,
                    *partition,
                    &mut stream(StreamPurpose::Partition),
                )?;
                let params = MtParams::new(partition, *max_changes, *scope)?;
                muddling_through(
                    landscape,
                    init,
                    budget,
                    &params,
                    &mut stream(StreamPurpose::Search),
                )
            }
        }
    }
}

impl FromStr for Algorithm {
    type Err = NkError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let head = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        let kind = match (head, rest.as_slice()) {
            ("sa", []) => AlgorithmKind::SteepestAscent,
            ("cs", []) => AlgorithmKind::CentralizedSearch,
            ("pu", []) => AlgorithmKind::ParallelUpdate {
                tau_grid: DEFAULT_TAU_GRID.to_vec(),
            },
            ("pu", [grid]) => {
                let tau_grid = grid
                    .split(',')
                    .map(|t| {
                        let tau: f64 = t
                            .trim()
                            .parse()
                            .map_err(|_| invalid(format!("`{s}`: `{t}` is not a number")))?;
                        PuParams::new(tau).map(|_| tau)
                    })
                    .collect::<Result<Vec<_>>>()?;
                AlgorithmKind::ParallelUpdate { tau_grid }
            }
            ("mt", [clusters, changes, tail @ ..]) if tail.len() <= 2 => {
                let clusters: usize = clusters
                    .parse()
                    .map_err(|_| invalid(format!("`{s}`: cluster count `{clusters}` is not an integer")))?;
                let changes: usize = changes
                    .parse()
                    .map_err(|_| invalid(format!("`{s}`: max changes `{changes}` is not an integer")))?;
                if clusters < 2 {
                    return Err(invalid(format!("`{s}`: at least two clusters are required")));
                }
                AlgorithmKind::MuddlingThrough {
                    clusters,
                    max_changes: MaxChanges::from_count(changes)?,
                    scope: tail.first().map_or(Ok(AcceptanceScope::default()), |t| t.parse())?,
                    partition: tail.get(1).map_or(Ok(PartitionMode::default()), |t| t.parse())?,
                }
            }
            _ => {
                return Err(invalid(format!(
                    "unrecognized algorithm descriptor `{s}` (expected sa, cs, pu[:taus] or mt:<clusters>:<changes>[:scope[:partition]])"
                )))
            }
        };
        Ok(Self {
            id: s.to_string(),
            kind,
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

impl Serialize for Algorithm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.id)
    }
}

impl<'de> Deserialize<'de> for Algorithm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> AlgorithmKind {
        s.parse::<Algorithm>().unwrap().kind
    }

    #[test]
    fn descriptors() {
        assert_eq!(parse("sa"), AlgorithmKind::SteepestAscent);
        assert_eq!(parse("cs"), AlgorithmKind::CentralizedSearch);
        assert_eq!(
            parse("pu"),
            AlgorithmKind::ParallelUpdate {
                tau_grid: DEFAULT_TAU_GRID.to_vec()
            }
        );
        assert_eq!(
            parse("pu:0.25,0.75"),
            AlgorithmKind::ParallelUpdate {
                tau_grid: vec![0.25, 0.75]
            }
        );
        assert_eq!(
            parse("mt:4:1"),
            AlgorithmKind::MuddlingThrough {
                clusters: 4,
                max_changes: MaxChanges::One,
                scope: AcceptanceScope::ComembersExcludingFocal,
                partition: PartitionMode::Contiguous,
            }
        );
        assert_eq!(
            parse("mt:6:2:whole:shuffled"),
            AlgorithmKind::MuddlingThrough {
                clusters: 6,
                max_changes: MaxChanges::Two,
                scope: AcceptanceScope::WholeCluster,
                partition: PartitionMode::SeededRandom,
            }
        );
    }

    #[test]
    fn bad_descriptors() {
        for bad in [
            "",
            "ga",
            "sa:1",
            "pu:",
            "pu:1.0",
            "pu:0.5,x",
            "mt:4",
            "mt:1:1",
            "mt:4:3",
            "mt:4:1:both",
            "mt:4:1:excl:ring",
            "mt:4:1:excl:contiguous:x",
        ] {
            assert!(bad.parse::<Algorithm>().is_err(), "{bad}");
        }
    }

    #[test]
    fn id_is_echoed_verbatim() {
        let a: Algorithm = "mt:4:1:excl".parse().unwrap();
        assert_eq!(a.to_string(), "mt:4:1:excl");
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"mt:4:1:excl\"");
    }

    #[test]
    fn cluster_bound_depends_on_n() {
        let a: Algorithm = "mt:6:1".parse().unwrap();
        assert!(a.validate_for(20).is_ok());
        assert!(a.validate_for(10).is_err());
    }
}

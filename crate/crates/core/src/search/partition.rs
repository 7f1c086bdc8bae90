use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, NkError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionMode {
    /// Consecutive index blocks, larger blocks first.
    #[default]
    Contiguous,
    /// Same block sizes, nodes shuffled from a seeded stream.
    SeededRandom,
}

impl fmt::Display for PartitionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionMode::Contiguous => "contiguous",
            PartitionMode::SeededRandom => "seeded_random",
        })
    }
}

impl FromStr for PartitionMode {
    type Err = NkError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "contiguous" => Ok(PartitionMode::Contiguous),
            "seeded_random" | "shuffled" => Ok(PartitionMode::SeededRandom),
            other => Err(invalid(format!(
                "unknown partition mode `{other}` (expected `contiguous` or `seeded_random`)"
            ))),
        }
    }
}

/// Assignment of node indices to clusters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterPartition {
    assignment: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl ClusterPartition {
    /// Validates an explicit assignment: at least two clusters, ids dense in
    /// `0..C`, every cluster non-empty.
    pub fn from_assignment(assignment: Vec<usize>) -> Result<Self> {
        let count = assignment.iter().max().map_or(0, |&m| m + 1);
        if count < 2 {
            return Err(invalid("a partition needs at least two clusters"));
        }
        let mut members = vec![Vec::new(); count];
        for (node, &c) in assignment.iter().enumerate() {
            members[c].push(node);
        }
        if let Some(empty) = members.iter().position(Vec::is_empty) {
            return Err(invalid(format!("cluster {empty} has no members")));
        }
        Ok(Self {
            assignment,
            members,
        })
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn cluster_count(&self) -> usize {
        self.members.len()
    }

    pub fn cluster_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    /// Members of `cluster`, ascending.
    pub fn members(&self, cluster: usize) -> &[usize] {
        &self.members[cluster]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }
}

/// Splits `n` nodes into `cluster_count` clusters whose sizes differ by at
/// most one. Requires `2 <= cluster_count <= n / 2` so every cluster has at
/// least two members. `rng` is only read in [`PartitionMode::SeededRandom`].
pub fn build_cluster_partition<R: Rng + ?Sized>(
    n: usize,
    cluster_count: usize,
    mode: PartitionMode,
    rng: &mut R,
) -> Result<ClusterPartition> {
    if cluster_count < 2 || cluster_count > n / 2 {
        return Err(invalid(format!(
            "cluster count {cluster_count} must lie in 2..={} for n = {n}",
            n / 2
        )));
    }
    let base = n / cluster_count;
    let extra = n % cluster_count;
    let mut assignment = Vec::with_capacity(n);
    for c in 0..cluster_count {
        let size = base + usize::from(c < extra);
        assignment.extend(std::iter::repeat_n(c, size));
    }
    if mode == PartitionMode::SeededRandom {
        assignment.shuffle(rng);
    }
    ClusterPartition::from_assignment(assignment)
}

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::partition::ClusterPartition;
use super::walker::Walker;
use super::{check_init, SearchBudget, SearchOutcome, Termination, Tracker};
use crate::error::{invalid, NkError, Result};
use crate::landscape::{Configuration, Landscape};

/// Which contributions enter the cluster acceptance test.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcceptanceScope {
    /// The other members of the focal cluster only.
    #[default]
    ComembersExcludingFocal,
    /// Every member of the focal cluster, flipped nodes included.
    WholeCluster,
}

impl fmt::Display for AcceptanceScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AcceptanceScope::ComembersExcludingFocal => "comembers_excluding_focal",
            AcceptanceScope::WholeCluster => "whole_cluster",
        })
    }
}

impl FromStr for AcceptanceScope {
    type Err = NkError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "comembers_excluding_focal" | "excl" | "exclude" => {
                Ok(AcceptanceScope::ComembersExcludingFocal)
            }
            "whole_cluster" | "whole" => Ok(AcceptanceScope::WholeCluster),
            other => Err(invalid(format!(
                "unknown acceptance scope `{other}` (expected `excl` or `whole`)"
            ))),
        }
    }
}

/// How many nodes one move may flip (MT1 or MT2).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MaxChanges {
    #[default]
    One,
    Two,
}

impl MaxChanges {
    pub fn from_count(count: usize) -> Result<Self> {
        match count {
            1 => Ok(MaxChanges::One),
            2 => Ok(MaxChanges::Two),
            other => Err(invalid(format!(
                "max changes per move must be 1 or 2, got {other}"
            ))),
        }
    }

    pub fn count(self) -> usize {
        match self {
            MaxChanges::One => 1,
            MaxChanges::Two => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MtParams {
    partition: ClusterPartition,
    max_changes: MaxChanges,
    scope: AcceptanceScope,
}

impl MtParams {
    /// Excluding the focal nodes from the acceptance test needs every
    /// cluster to have at least two members.
    pub fn new(
        partition: ClusterPartition,
        max_changes: MaxChanges,
        scope: AcceptanceScope,
    ) -> Result<Self> {
        if scope == AcceptanceScope::ComembersExcludingFocal {
            if let Some(c) = partition.sizes().iter().position(|&s| s < 2) {
                return Err(invalid(format!(
                    "cluster {c} has a single member, which leaves no co-members to compare"
                )));
            }
        }
        Ok(Self {
            partition,
            max_changes,
            scope,
        })
    }

    pub fn partition(&self) -> &ClusterPartition {
        &self.partition
    }

    pub fn max_changes(&self) -> MaxChanges {
        self.max_changes
    }

    pub fn scope(&self) -> AcceptanceScope {
        self.scope
    }
}

/// A candidate move: one node, or two nodes from the same cluster.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Move {
    nodes: [usize; 2],
    len: usize,
}

impl Move {
    fn nodes(&self) -> &[usize] {
        &self.nodes[..self.len]
    }
}

fn candidate_moves(partition: &ClusterPartition, max_changes: MaxChanges) -> Vec<Move> {
    let mut moves: Vec<Move> = (0..partition.n())
        .map(|i| Move {
            nodes: [i, i],
            len: 1,
        })
        .collect();
    if max_changes == MaxChanges::Two {
        for c in 0..partition.cluster_count() {
            let members = partition.members(c);
            for (x, &a) in members.iter().enumerate() {
                for &b in &members[x + 1..] {
                    moves.push(Move {
                        nodes: [a, b],
                        len: 2,
                    });
                }
            }
        }
    }
    moves
}

/// Every move available from a configuration: all single flips, plus (MT2)
/// every same-cluster pair.
pub fn mt_candidate_moves(
    partition: &ClusterPartition,
    max_changes: MaxChanges,
) -> Vec<Vec<usize>> {
    candidate_moves(partition, max_changes)
        .iter()
        .map(|m| m.nodes().to_vec())
        .collect()
}

/// Sum over the focal cluster's members, in ascending order, skipping the
/// focal nodes unless the scope is the whole cluster.
#[inline]
fn cluster_sum(values: &[f64], members: &[usize], focal: &[usize], scope: AcceptanceScope) -> f64 {
    let mut sum = 0.0;
    for &j in members {
        if scope == AcceptanceScope::ComembersExcludingFocal && focal.contains(&j) {
            continue;
        }
        sum += values[j];
    }
    sum
}

/// Summed contribution of the focal cluster's members at `config`.
///
/// All focal nodes must belong to the same cluster.
pub fn cluster_comember_aggregate(
    landscape: &Landscape,
    config: &Configuration,
    partition: &ClusterPartition,
    focal_nodes: &[usize],
    scope: AcceptanceScope,
) -> Result<f64> {
    check_init(landscape, config)?;
    if partition.n() != landscape.n() {
        return Err(invalid(format!(
            "partition covers {} nodes but the landscape has {}",
            partition.n(),
            landscape.n()
        )));
    }
    let (&first, rest) = focal_nodes
        .split_first()
        .ok_or_else(|| invalid("focal node set is empty"))?;
    for &node in focal_nodes {
        if node >= landscape.n() {
            return Err(NkError::IndexOutOfRange {
                index: node,
                n: landscape.n(),
            });
        }
    }
    let cluster = partition.cluster_of(first);
    if rest.iter().any(|&j| partition.cluster_of(j) != cluster) {
        return Err(invalid("focal nodes span more than one cluster"));
    }
    let profile = landscape.contribution_profile(config)?;
    Ok(cluster_sum(
        profile.values(),
        partition.members(cluster),
        focal_nodes,
        scope,
    ))
}

/// Muddling through.
///
/// Each step draws one untried candidate move uniformly and accepts it iff
/// the focal cluster's aggregate contribution strictly increases; the total
/// fitness of the whole configuration plays no part in acceptance, so the
/// walk may go downhill. An acceptance clears the tried set. The search
/// stops when every candidate from the current configuration has been
/// rejected, or when the budget runs out, and returns the fittest
/// configuration visited (the start included).
pub fn muddling_through<R: Rng + ?Sized>(
    landscape: &Landscape,
    init: &Configuration,
    budget: SearchBudget,
    params: &MtParams,
    rng: &mut R,
) -> Result<SearchOutcome> {
    check_init(landscape, init)?;
    let partition = params.partition();
    if partition.n() != landscape.n() {
        return Err(invalid(format!(
            "partition covers {} nodes but the landscape has {}",
            partition.n(),
            landscape.n()
        )));
    }
    let moves = candidate_moves(partition, params.max_changes());
    let mut untried: Vec<usize> = (0..moves.len()).collect();
    let mut walker = Walker::new(landscape, init);
    let mut tracker = Tracker::new(walker.bits(), walker.fitness(), &budget);

    let termination = loop {
        if tracker.steps >= budget.max_steps() {
            break Termination::BudgetExhausted;
        }
        tracker.steps += 1;
        tracker.evaluations += 1;

        let candidate = moves[untried.swap_remove(rng.gen_range(0..untried.len()))];
        let flips = candidate.nodes();
        let members = partition.members(partition.cluster_of(flips[0]));
        walker.evaluate(flips);
        let before = cluster_sum(walker.profile(), members, flips, params.scope());
        let after = cluster_sum(walker.proposed(), members, flips, params.scope());

        let accepted = after > before;
        if accepted {
            walker.commit(flips);
            tracker.offer(walker.bits(), walker.fitness());
            untried.clear();
            untried.extend(0..moves.len());
        }
        if tracker.tracing() {
            tracker.record(flips, accepted, walker.fitness());
        }

        if untried.is_empty() {
            break Termination::LocalStop;
        }
    };

    let final_config = walker.config();
    Ok(tracker.finish(landscape, init, final_config, termination))
}

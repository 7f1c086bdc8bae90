//! The NK model: landscape instances, configurations and fitness evaluation.
//!
//! A landscape over `n` binary decision elements assigns each node `k`
//! interaction partners and a column of `2^(k+1)` uniform draws. The
//! contribution of node `i` is looked up in column `i` at the row formed by
//! packing the node's own bit (most significant) followed by its neighbors'
//! bits in ascending index order. Total fitness is the mean contribution.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, NkError, Result};

/// Largest supported `k`. The fitness matrix holds `n * 2^(k+1)` entries.
pub const MAX_K: usize = 26;

/// How the `k` interaction partners of each node are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InteractionScheme {
    /// `k` distinct partners drawn uniformly without replacement.
    #[default]
    Random,
    /// The `k` nearest nodes on a ring: `ceil(k/2)` successors, `floor(k/2)` predecessors.
    Adjacent,
}

impl fmt::Display for InteractionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InteractionScheme::Random => f.write_str("random"),
            InteractionScheme::Adjacent => f.write_str("adjacent"),
        }
    }
}

impl FromStr for InteractionScheme {
    type Err = NkError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(InteractionScheme::Random),
            "adjacent" => Ok(InteractionScheme::Adjacent),
            other => Err(invalid(format!(
                "unknown interaction scheme `{other}` (expected `random` or `adjacent`)"
            ))),
        }
    }
}

/// One point on a landscape: a length-`n` bit vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    bits: Vec<bool>,
}

impl Configuration {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Builds a configuration from `0`/`1` values; anything else is rejected.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        bits.iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(invalid(format!("bit value {other} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![false; n])
    }

    /// Configuration whose bit string, read left to right, is the `n`-bit
    /// binary expansion of `index`. Ascending indices enumerate
    /// configurations in lexicographic order.
    pub fn from_index(index: u64, n: usize) -> Self {
        Self::new((0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect())
    }

    /// Inverse of [`Configuration::from_index`]; requires `n <= 64`.
    pub fn to_index(&self) -> u64 {
        self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit(&self, node: usize) -> Result<bool> {
        self.bits
            .get(node)
            .copied()
            .ok_or(NkError::IndexOutOfRange {
                index: node,
                n: self.bits.len(),
            })
    }

    /// Returns a copy with `node` toggled.
    pub fn flip(&self, node: usize) -> Result<Self> {
        let mut out = self.clone();
        out.flip_in_place(node)?;
        Ok(out)
    }

    pub fn flip_in_place(&mut self, node: usize) -> Result<()> {
        let n = self.bits.len();
        let bit = self
            .bits
            .get_mut(node)
            .ok_or(NkError::IndexOutOfRange { index: node, n })?;
        *bit = !*bit;
        Ok(())
    }

    /// Number of positions at which the two configurations differ.
    pub fn hamming_distance(&self, other: &Self) -> Result<usize> {
        if self.len() != other.len() {
            return Err(NkError::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// Each bit drawn independently with probability one half.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        Self::new((0..n).map(|_| rng.gen_bool(0.5)).collect())
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Configuration {
    type Err = NkError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(invalid(format!("`{other}` is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Hamming distance between two configurations.
pub fn hamming_distance(a: &Configuration, b: &Configuration) -> Result<usize> {
    a.hamming_distance(b)
}

/// Returns a copy of `config` with `node` toggled.
pub fn flip_node(config: &Configuration, node: usize) -> Result<Configuration> {
    config.flip(node)
}

/// Per-node fitness contributions of one configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct ContributionProfile {
    values: Vec<f64>,
}

impl ContributionProfile {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Mean of the contributions, i.e. the configuration's total fitness.
    pub fn fitness(&self) -> f64 {
        mean_contribution(&self.values)
    }
}

/// Every fitness in the crate is computed through this function so that
/// incremental and full evaluation agree bit for bit.
#[inline]
pub(crate) fn mean_contribution(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    for &v in values {
        sum += v;
    }
    sum / values.len() as f64
}

/// An immutable NK problem instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Landscape {
    n: usize,
    k: usize,
    seed: u64,
    scheme: InteractionScheme,
    neighbors: Vec<Vec<usize>>,
    /// Row-major, `2^(k+1)` rows by `n` columns.
    matrix: Vec<f64>,
    /// For node `i`: every node whose contribution reads bit `i`, including `i`.
    dependents: Vec<Vec<usize>>,
}

impl Landscape {
    /// Deterministically generates a landscape.
    ///
    /// The generator stream is consumed in a fixed order: neighbor lists
    /// node by node (random scheme only), then the fitness matrix column by
    /// column, each column top to bottom.
    pub fn build(seed: u64, n: usize, k: usize, scheme: InteractionScheme) -> Result<Self> {
        check_dimensions(n, k)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        let neighbors: Vec<Vec<usize>> = match scheme {
            InteractionScheme::Random => (0..n)
                .map(|i| {
                    let mut picks: Vec<usize> = sample(&mut rng, n - 1, k)
                        .into_iter()
                        .map(|j| if j >= i { j + 1 } else { j })
                        .collect();
                    picks.sort_unstable();
                    picks
                })
                .collect(),
            InteractionScheme::Adjacent => (0..n)
                .map(|i| {
                    let succ = k.div_ceil(2);
                    let pred = k / 2;
                    let mut picks: Vec<usize> = (1..=succ)
                        .map(|d| (i + d) % n)
                        .chain((1..=pred).map(|d| (i + n - d) % n))
                        .collect();
                    picks.sort_unstable();
                    picks
                })
                .collect(),
        };

        let rows = 1usize << (k + 1);
        let mut matrix = vec![0.0; rows * n];
        for col in 0..n {
            for row in 0..rows {
                matrix[row * n + col] = rng.gen::<f64>();
            }
        }

        Ok(Self::assemble(n, k, seed, scheme, neighbors, matrix))
    }

    /// Builds a landscape from explicit parts, validating every invariant.
    /// `fitness_matrix` is row-major with `2^(k+1)` rows of `n` entries.
    pub fn from_parts(
        seed: u64,
        n: usize,
        k: usize,
        scheme: InteractionScheme,
        neighbors: Vec<Vec<usize>>,
        fitness_matrix: Vec<Vec<f64>>,
    ) -> Result<Self> {
        check_dimensions(n, k)?;
        if neighbors.len() != n {
            return Err(invalid(format!(
                "expected {n} neighbor lists, got {}",
                neighbors.len()
            )));
        }
        for (i, list) in neighbors.iter().enumerate() {
            if list.len() != k {
                return Err(invalid(format!(
                    "neighbors[{i}] has {} entries, expected k = {k}",
                    list.len()
                )));
            }
            if list.iter().any(|&j| j >= n || j == i) {
                return Err(invalid(format!(
                    "neighbors[{i}] contains the owner or an index outside 0..{n}"
                )));
            }
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid(format!(
                    "neighbors[{i}] must be strictly ascending"
                )));
            }
        }
        let rows = 1usize << (k + 1);
        if fitness_matrix.len() != rows {
            return Err(invalid(format!(
                "fitness_matrix has {} rows, expected 2^(k+1) = {rows}",
                fitness_matrix.len()
            )));
        }
        let mut matrix = Vec::with_capacity(rows * n);
        for (r, row) in fitness_matrix.iter().enumerate() {
            if row.len() != n {
                return Err(invalid(format!(
                    "fitness_matrix[{r}] has {} columns, expected {n}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|v| !(0.0..1.0).contains(*v)) {
                return Err(invalid(format!(
                    "fitness_matrix[{r}] entry {bad} outside [0, 1)"
                )));
            }
            matrix.extend_from_slice(row);
        }
        Ok(Self::assemble(n, k, seed, scheme, neighbors, matrix))
    }

    fn assemble(
        n: usize,
        k: usize,
        seed: u64,
        scheme: InteractionScheme,
        neighbors: Vec<Vec<usize>>,
        matrix: Vec<f64>,
    ) -> Self {
        let mut dependents: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        for (owner, list) in neighbors.iter().enumerate() {
            for &j in list {
                dependents[j].push(owner);
            }
        }
        for d in &mut dependents {
            d.sort_unstable();
        }
        Self {
            n,
            k,
            seed,
            scheme,
            neighbors,
            matrix,
            dependents,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn scheme(&self) -> InteractionScheme {
        self.scheme
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[node]
    }

    /// Nodes whose contribution changes when `node` flips (including `node`).
    pub fn dependents(&self, node: usize) -> &[usize] {
        &self.dependents[node]
    }

    pub fn rows(&self) -> usize {
        1 << (self.k + 1)
    }

    pub fn matrix_entry(&self, row: usize, col: usize) -> f64 {
        self.matrix[row * self.n + col]
    }

    fn check_config(&self, config: &Configuration) -> Result<()> {
        if config.len() != self.n {
            return Err(NkError::LengthMismatch {
                expected: self.n,
                actual: config.len(),
            });
        }
        Ok(())
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.n {
            return Err(NkError::IndexOutOfRange {
                index: node,
                n: self.n,
            });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn row_index_raw(&self, bits: &[bool], node: usize) -> usize {
        let mut row = bits[node] as usize;
        for &j in &self.neighbors[node] {
            row = (row << 1) | bits[j] as usize;
        }
        row
    }

    #[inline]
    pub(crate) fn contribution_raw(&self, bits: &[bool], node: usize) -> f64 {
        self.matrix[self.row_index_raw(bits, node) * self.n + node]
    }

    /// Matrix row used for `node`: its own bit is the most significant, then
    /// each neighbor's bit in ascending neighbor order.
    pub fn contribution_row_index(&self, config: &Configuration, node: usize) -> Result<usize> {
        self.check_config(config)?;
        self.check_node(node)?;
        Ok(self.row_index_raw(config.bits(), node))
    }

    pub fn node_contribution(&self, config: &Configuration, node: usize) -> Result<f64> {
        self.check_config(config)?;
        self.check_node(node)?;
        Ok(self.contribution_raw(config.bits(), node))
    }

    pub fn contribution_profile(&self, config: &Configuration) -> Result<ContributionProfile> {
        self.check_config(config)?;
        Ok(self.profile_raw(config.bits()))
    }

    pub(crate) fn profile_raw(&self, bits: &[bool]) -> ContributionProfile {
        ContributionProfile {
            values: (0..self.n)
                .map(|i| self.contribution_raw(bits, i))
                .collect(),
        }
    }

    /// Mean of the per-node contributions.
    pub fn total_fitness(&self, config: &Configuration) -> Result<f64> {
        Ok(self.contribution_profile(config)?.fitness())
    }

    /// Fitness after flipping `node`, recomputing only the contributions
    /// that read that bit. `profile` must belong to `config`.
    pub fn delta_fitness(
        &self,
        config: &Configuration,
        profile: &ContributionProfile,
        node: usize,
    ) -> Result<(f64, ContributionProfile)> {
        self.check_config(config)?;
        self.check_node(node)?;
        if profile.values.len() != self.n {
            return Err(NkError::LengthMismatch {
                expected: self.n,
                actual: profile.values.len(),
            });
        }
        debug_assert_eq!(
            profile,
            &self.profile_raw(config.bits()),
            "stale contribution profile"
        );
        let mut bits = config.bits().to_vec();
        bits[node] = !bits[node];
        let mut values = profile.values.clone();
        for &j in &self.dependents[node] {
            values[j] = self.contribution_raw(&bits, j);
        }
        let updated = ContributionProfile { values };
        Ok((updated.fitness(), updated))
    }

    pub fn to_document(&self) -> LandscapeDocument {
        LandscapeDocument {
            seed: self.seed,
            n: self.n,
            k: self.k,
            scheme: self.scheme,
            neighbors: self.neighbors.clone(),
            fitness_matrix: self.matrix.chunks(self.n).map(<[f64]>::to_vec).collect(),
        }
    }

    pub fn from_document(doc: LandscapeDocument) -> Result<Self> {
        Self::from_parts(
            doc.seed,
            doc.n,
            doc.k,
            doc.scheme,
            doc.neighbors,
            doc.fitness_matrix,
        )
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(&self.to_document()).map_err(|source| NkError::Json {
            context: "landscape export".into(),
            source,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: LandscapeDocument =
            serde_json::from_str(text).map_err(|source| NkError::Json {
                context: "landscape import".into(),
                source,
            })?;
        Self::from_document(doc)
    }
}

/// Free-function form of [`Landscape::build`].
pub fn build_landscape(
    seed: u64,
    n: usize,
    k: usize,
    scheme: InteractionScheme,
) -> Result<Landscape> {
    Landscape::build(seed, n, k, scheme)
}

fn check_dimensions(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if k > n - 1 {
        return Err(invalid(format!("k = {k} violates k <= n - 1 = {}", n - 1)));
    }
    if k > MAX_K {
        return Err(NkError::TooLarge(format!(
            "k = {k} exceeds the supported maximum of {MAX_K}"
        )));
    }
    Ok(())
}

/// Interchange form of a landscape; the matrix is row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LandscapeDocument {
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub scheme: InteractionScheme,
    pub neighbors: Vec<Vec<usize>>,
    pub fitness_matrix: Vec<Vec<f64>>,
}

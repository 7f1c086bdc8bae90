//! Exhaustive ground truth for small landscapes.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{NkError, Result};
use crate::landscape::{mean_contribution, Configuration, Landscape};

/// Largest `n` the brute-force enumeration accepts.
pub const MAX_ORACLE_N: usize = 24;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub global_max_fitness: f64,
    pub global_max_config: Configuration,
    /// Configurations with no strictly better single-bit neighbor.
    pub local_optima_count: u64,
    pub n_enumerated: u64,
}

/// Evaluates every configuration of the landscape.
///
/// Configurations are indexed lexicographically (see
/// [`Configuration::from_index`]); on exact ties the lowest index wins.
pub fn brute_force_optimum(landscape: &Landscape) -> Result<OracleReport> {
    let table = fitness_table(landscape)?;
    let n = landscape.n();

    let mut best_index = 0usize;
    for (i, &f) in table.iter().enumerate() {
        if f > table[best_index] {
            best_index = i;
        }
    }

    let local_optima_count = table
        .par_iter()
        .enumerate()
        .filter(|&(i, &f)| (0..n).all(|b| table[i ^ (1 << b)] <= f))
        .count() as u64;

    Ok(OracleReport {
        global_max_fitness: table[best_index],
        global_max_config: Configuration::from_index(best_index as u64, n),
        local_optima_count,
        n_enumerated: table.len() as u64,
    })
}

/// Fitness of every configuration, indexed lexicographically.
pub fn fitness_table(landscape: &Landscape) -> Result<Vec<f64>> {
    let n = landscape.n();
    if n > MAX_ORACLE_N {
        return Err(NkError::TooLarge(format!(
            "exhaustive enumeration is limited to n <= {MAX_ORACLE_N}, got n = {n}"
        )));
    }
    let mut table = vec![0.0; 1usize << n];
    table
        .par_chunks_mut(1 << 12.min(n))
        .enumerate()
        .for_each(|(chunk, out)| {
            let base = chunk << 12.min(n);
            let mut bits = vec![false; n];
            let mut values = vec![0.0; n];
            for (offset, slot) in out.iter_mut().enumerate() {
                let index = base + offset;
                for (i, b) in bits.iter_mut().enumerate() {
                    *b = (index >> (n - 1 - i)) & 1 == 1;
                }
                for (i, v) in values.iter_mut().enumerate() {
                    *v = landscape.contribution_raw(&bits, i);
                }
                *slot = mean_contribution(&values);
            }
        });
    Ok(table)
}

/// True iff no single flip strictly improves on `config`.
pub fn is_local_optimum(landscape: &Landscape, config: &Configuration) -> Result<bool> {
    let current = landscape.total_fitness(config)?;
    for node in 0..landscape.n() {
        if landscape.total_fitness(&config.flip(node)?)? > current {
            return Ok(false);
        }
    }
    Ok(true)
}

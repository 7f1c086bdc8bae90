use rand::Rng;

use super::walker::Walker;
use super::{check_init, SearchBudget, SearchOutcome, Termination, Tracker};
use crate::error::{invalid, Result};
use crate::landscape::{Configuration, Landscape};

/// Flip-attempt probabilities tried by [`parallel_update_sweep`] by default.
pub const DEFAULT_TAU_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PuParams {
    tau: f64,
}

impl PuParams {
    /// `tau` is the per-node probability of attempting a flip, strictly inside (0, 1).
    pub fn new(tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau < 1.0) {
            return Err(invalid(format!(
                "tau = {tau} must lie strictly between 0 and 1"
            )));
        }
        Ok(Self { tau })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// Parallel updating. Each generation every node attempts to flip with
/// probability `tau`; the attempts whose solo flip would strictly raise total
/// fitness are then applied together. Because the surviving flips interact,
/// a generation can lower fitness, so the best configuration on the path is
/// reported.
///
/// A generation that applies no flip triggers a scan of all `n` solo flips;
/// if none improves the search stops.
pub fn parallel_update<R: Rng + ?Sized>(
    landscape: &Landscape,
    init: &Configuration,
    budget: SearchBudget,
    params: PuParams,
    rng: &mut R,
) -> Result<SearchOutcome> {
    check_init(landscape, init)?;
    let n = landscape.n();
    let mut walker = Walker::new(landscape, init);
    let mut tracker = Tracker::new(walker.bits(), walker.fitness(), &budget);
    let mut flips = Vec::with_capacity(n);

    let termination = loop {
        if tracker.steps >= budget.max_steps() {
            break Termination::BudgetExhausted;
        }
        tracker.steps += 1;

        flips.clear();
        let current = walker.fitness();
        for node in 0..n {
            if rng.gen_bool(params.tau) {
                tracker.evaluations += 1;
                if walker.evaluate(&[node]) > current {
                    flips.push(node);
                }
            }
        }

        if !flips.is_empty() {
            walker.commit(&flips);
            tracker.evaluations += 1;
            tracker.offer(walker.bits(), walker.fitness());
            tracker.record(&flips, true, walker.fitness());
            continue;
        }

        let mut improvable = false;
        for node in 0..n {
            tracker.evaluations += 1;
            improvable |= walker.evaluate(&[node]) > current;
        }
        tracker.record(&[], false, current);
        if !improvable {
            break Termination::LocalStop;
        }
    };

    let final_config = walker.config();
    Ok(tracker.finish(landscape, init, final_config, termination))
}

/// Runs [`parallel_update`] once per `tau` in the grid, each with its own
/// stream, and keeps the run with the highest best fitness (earliest on
/// ties). Steps and evaluations are summed over all runs.
pub fn parallel_update_sweep<R: Rng>(
    landscape: &Landscape,
    init: &Configuration,
    budget: SearchBudget,
    tau_grid: &[f64],
    streams: &mut [R],
) -> Result<SearchOutcome> {
    if tau_grid.is_empty() {
        return Err(invalid("tau grid must not be empty"));
    }
    if streams.len() != tau_grid.len() {
        return Err(invalid(format!(
            "{} streams supplied for {} tau values",
            streams.len(),
            tau_grid.len()
        )));
    }
    let mut chosen: Option<SearchOutcome> = None;
    let (mut steps, mut evaluations) = (0, 0);
    for (&tau, rng) in tau_grid.iter().zip(streams.iter_mut()) {
        let out = parallel_update(landscape, init, budget, PuParams::new(tau)?, rng)?;
        steps += out.steps_used;
        evaluations += out.evaluations;
        if chosen
            .as_ref()
            .is_none_or(|c| out.best_fitness > c.best_fitness)
        {
            chosen = Some(out);
        }
    }
    let mut out = chosen.expect("grid is non-empty");
    out.steps_used = steps;
    out.evaluations = evaluations;
    Ok(out)
}

use super::walker::Walker;
use super::{check_init, SearchBudget, SearchOutcome, Termination, Tracker};
use crate::error::Result;
use crate::landscape::{Configuration, Landscape};

/// Steepest ascent: each step scans all `n` single-bit neighbors and moves to
/// the best one if it strictly improves on the current fitness. Ties go to the
/// lowest node index. Stops at a local optimum or when the budget runs out.
pub fn steepest_ascent(
    landscape: &Landscape,
    init: &Configuration,
    budget: SearchBudget,
) -> Result<SearchOutcome> {
    check_init(landscape, init)?;
    let mut walker = Walker::new(landscape, init);
    let mut tracker = Tracker::new(walker.bits(), walker.fitness(), &budget);

    let termination = loop {
        if tracker.steps >= budget.max_steps() {
            break Termination::BudgetExhausted;
        }
        tracker.steps += 1;

        let mut best_move = None;
        let mut best_fitness = walker.fitness();
        for node in 0..landscape.n() {
            let f = walker.evaluate(&[node]);
            tracker.evaluations += 1;
            if f > best_fitness {
                best_fitness = f;
                best_move = Some(node);
            }
        }

        match best_move {
            Some(node) => {
                walker.commit(&[node]);
                tracker.offer(walker.bits(), walker.fitness());
                tracker.record(&[node], true, walker.fitness());
            }
            None => {
                tracker.record(&[], false, walker.fitness());
                break Termination::LocalStop;
            }
        }
    };

    debug_assert_eq!(walker.fitness(), tracker.best_fitness());
    let final_config = walker.config();
    Ok(tracker.finish(landscape, init, final_config, termination))
}

use rand::Rng;

use super::walker::Walker;
use super::{check_init, SearchBudget, SearchOutcome, Termination, Tracker};
use crate::error::Result;
use crate::landscape::{Configuration, Landscape};

/// Centralized (local) search: each step proposes one single-bit flip drawn
/// uniformly from the flips not yet tried at the current configuration and
/// accepts it iff total fitness strictly increases. An accepted move resets
/// the tried set; exhausting it means the current point is a local optimum.
pub fn centralized_search<R: Rng + ?Sized>(
    landscape: &Landscape,
    init: &Configuration,
    budget: SearchBudget,
    rng: &mut R,
) -> Result<SearchOutcome> {
    check_init(landscape, init)?;
    let n = landscape.n();
    let mut walker = Walker::new(landscape, init);
    let mut tracker = Tracker::new(walker.bits(), walker.fitness(), &budget);
    let mut untried: Vec<usize> = (0..n).collect();

    let termination = loop {
        if tracker.steps >= budget.max_steps() {
            break Termination::BudgetExhausted;
        }
        tracker.steps += 1;
        tracker.evaluations += 1;

        let node = untried.swap_remove(rng.gen_range(0..untried.len()));
        let f = walker.evaluate(&[node]);
        let accepted = f > walker.fitness();
        if accepted {
            walker.commit(&[node]);
            tracker.offer(walker.bits(), walker.fitness());
            untried.clear();
            untried.extend(0..n);
        }
        tracker.record(&[node], accepted, walker.fitness());

        if untried.is_empty() {
            break Termination::LocalStop;
        }
    };

    let final_config = walker.config();
    Ok(tracker.finish(landscape, init, final_config, termination))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::fixtures::{cfg, l2};
    use crate::landscape::InteractionScheme;
    use crate::oracle::{brute_force_optimum, is_local_optimum};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn l2_first_proposal_node_one_is_accepted() {
        let l = l2();
        let seed = (0..64)
            .find(|&s| {
                let out = centralized_search(
                    &l,
                    &cfg(&[0, 0]),
                    SearchBudget::new(1).unwrap().traced(),
                    &mut ChaCha8Rng::seed_from_u64(s),
                )
                .unwrap();
                out.trajectory.unwrap()[0].proposal == "1"
            })
            .expect("some seed proposes node 1 first");
        let out = centralized_search(
            &l,
            &cfg(&[0, 0]),
            SearchBudget::new(1).unwrap().traced(),
            &mut ChaCha8Rng::seed_from_u64(seed),
        )
        .unwrap();
        let first = &out.trajectory.as_ref().unwrap()[0];
        assert!(first.accepted);
        assert!((first.current_fitness - 0.45).abs() < 1e-15);
        assert_eq!(out.final_config, cfg(&[0, 1]));
    }

    #[test]
    fn l2_peak_rejects_both_flips() {
        let out = centralized_search(
            &l2(),
            &cfg(&[1, 1]),
            SearchBudget::default(),
            &mut ChaCha8Rng::seed_from_u64(5),
        )
        .unwrap();
        assert_eq!(out.termination, Termination::LocalStop);
        assert_eq!(out.evaluations, 2);
        assert_eq!(out.steps_used, 2);
        assert_eq!(out.best_config, cfg(&[1, 1]));
    }

    #[test]
    fn global_optimum_start_accepts_nothing() {
        let l = Landscape::build(8, 10, 4, InteractionScheme::Random).unwrap();
        let top = brute_force_optimum(&l).unwrap();
        let out = centralized_search(
            &l,
            &top.global_max_config,
            SearchBudget::default().traced(),
            &mut ChaCha8Rng::seed_from_u64(1),
        )
        .unwrap();
        assert_eq!(out.termination, Termination::LocalStop);
        assert!(out.trajectory.unwrap().iter().all(|r| !r.accepted));
        assert_eq!(out.evaluations, 10);
    }

    #[test]
    fn replay_is_exact() {
        let l = Landscape::build(21, 20, 7, InteractionScheme::Random).unwrap();
        let init = Configuration::random(&mut ChaCha8Rng::seed_from_u64(2), 20);
        let run = |s| {
            centralized_search(
                &l,
                &init,
                SearchBudget::default(),
                &mut ChaCha8Rng::seed_from_u64(s),
            )
            .unwrap()
        };
        assert_eq!(run(77), run(77));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn local_stop_is_a_local_optimum(seed in any::<u64>(), n in 1usize..12, k in 0usize..12, stream in any::<u64>()) {
            let k = k % n;
            let l = Landscape::build(seed, n, k, InteractionScheme::Random).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(stream);
            let init = Configuration::random(&mut rng, n);
            let out = centralized_search(&l, &init, SearchBudget::unlimited().traced(), &mut rng).unwrap();
            prop_assert_eq!(out.termination, Termination::LocalStop);
            prop_assert!(is_local_optimum(&l, &out.final_config).unwrap());
            prop_assert_eq!(&out.best_config, &out.final_config);
            prop_assert_eq!(out.evaluations, out.steps_used);
            prop_assert_eq!(out.best_fitness, l.total_fitness(&out.best_config).unwrap());
            let mut last = l.total_fitness(&init).unwrap();
            for rec in out.trajectory.unwrap().iter().filter(|r| r.accepted) {
                prop_assert!(rec.current_fitness > last);
                last = rec.current_fitness;
            }
            if k == 0 {
                prop_assert_eq!(out.best_fitness, brute_force_optimum(&l).unwrap().global_max_fitness);
            }
        }
    }
}

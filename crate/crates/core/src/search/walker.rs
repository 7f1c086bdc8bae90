use crate::landscape::{mean_contribution, Configuration, Landscape};

/// Current position of a search plus scratch space for evaluating moves
/// without committing them.
///
/// After [`Walker::evaluate`], `proposed()` holds the contribution profile of
/// the moved configuration; it is restored lazily on the next evaluation.
pub(crate) struct Walker<'a> {
    landscape: &'a Landscape,
    bits: Vec<bool>,
    profile: Vec<f64>,
    fitness: f64,
    proposed: Vec<f64>,
    touched: Vec<usize>,
    marked: Vec<bool>,
}

impl<'a> Walker<'a> {
    pub(crate) fn new(landscape: &'a Landscape, start: &Configuration) -> Self {
        let bits = start.bits().to_vec();
        let profile = landscape.profile_raw(&bits).values().to_vec();
        let fitness = mean_contribution(&profile);
        Self {
            landscape,
            proposed: profile.clone(),
            bits,
            profile,
            fitness,
            touched: Vec::new(),
            marked: vec![false; landscape.n()],
        }
    }

    pub(crate) fn fitness(&self) -> f64 {
        self.fitness
    }

    pub(crate) fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub(crate) fn config(&self) -> Configuration {
        Configuration::new(self.bits.clone())
    }

    pub(crate) fn profile(&self) -> &[f64] {
        &self.profile
    }

    pub(crate) fn proposed(&self) -> &[f64] {
        &self.proposed
    }

    /// Total fitness of the configuration obtained by flipping every node in
    /// `flips` simultaneously. Only contributions that read a flipped bit are
    /// recomputed.
    pub(crate) fn evaluate(&mut self, flips: &[usize]) -> f64 {
        for &j in &self.touched {
            self.proposed[j] = self.profile[j];
            self.marked[j] = false;
        }
        self.touched.clear();

        for &i in flips {
            self.bits[i] = !self.bits[i];
        }
        for &i in flips {
            for &j in self.landscape.dependents(i) {
                if !self.marked[j] {
                    self.marked[j] = true;
                    self.touched.push(j);
                    self.proposed[j] = self.landscape.contribution_raw(&self.bits, j);
                }
            }
        }
        for &i in flips {
            self.bits[i] = !self.bits[i];
        }
        mean_contribution(&self.proposed)
    }

    /// Applies `flips`; the move becomes the new current configuration.
    pub(crate) fn commit(&mut self, flips: &[usize]) {
        let fitness = self.evaluate(flips);
        for &i in flips {
            self.bits[i] = !self.bits[i];
        }
        for &j in &self.touched {
            self.profile[j] = self.proposed[j];
            self.marked[j] = false;
        }
        self.touched.clear();
        self.fitness = fitness;
        debug_assert_eq!(
            self.profile,
            self.landscape.profile_raw(&self.bits).values()
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::InteractionScheme;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn evaluate_and_commit_match_full_recompute() {
        let l = Landscape::build(3, 15, 6, InteractionScheme::Random).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let start = Configuration::random(&mut rng, 15);
        let mut w = Walker::new(&l, &start);
        let mut reference = start.clone();
        for _ in 0..200 {
            let a = rng.gen_range(0..15);
            let b = rng.gen_range(0..15);
            let flips: Vec<usize> = if a == b { vec![a] } else { vec![a, b] };
            let mut moved = reference.clone();
            for &i in &flips {
                moved.flip_in_place(i).unwrap();
            }
            assert_eq!(w.evaluate(&flips), l.total_fitness(&moved).unwrap());
            if rng.gen_bool(0.3) {
                w.commit(&flips);
                reference = moved;
                assert_eq!(w.fitness(), l.total_fitness(&reference).unwrap());
                assert_eq!(w.config(), reference);
            }
        }
    }
}

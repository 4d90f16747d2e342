//! Formula and sequent generators for exhaustive pools and seeded sampling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, Sequent};

/// Every formula over `atoms` of depth at most `depth`.
///
/// Level `d` holds the atoms, the negations of level `d - 1` and the
/// implications between members of level `d - 1`. Over one atom the sizes
/// are 1, 3, 13, 183, 33673.
pub fn formula_pool<S: AsRef<str>>(atoms: &[S], depth: usize) -> Vec<Formula> {
    let base: Vec<Formula> = atoms.iter().map(|a| Formula::atom(a.as_ref())).collect();
    let mut level = base.clone();
    for _ in 0..depth {
        let mut next = base.clone();
        next.extend(level.iter().map(|f| Formula::neg(f.clone())));
        for l in &level {
            for r in &level {
                next.push(Formula::imp(l.clone(), r.clone()));
            }
        }
        level = next;
    }
    level
}

/// Seeded generator of random formulas and sequents.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    atoms: Vec<Formula>,
    seed: u64,
}

impl Sampler {
    /// Panics if `atoms` is empty.
    pub fn new<S: AsRef<str>>(seed: u64, atoms: &[S]) -> Sampler {
        assert!(!atoms.is_empty(), "sampler needs at least one atom");
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: atoms.iter().map(|a| Formula::atom(a.as_ref())).collect(),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn pick_atom(&mut self) -> Formula {
        self.atoms
            .choose(&mut self.rng)
            .cloned()
            .expect("atom list is non-empty")
    }

    /// A random formula of depth at most `max_depth`.
    pub fn formula(&mut self, max_depth: usize) -> Formula {
        if max_depth == 0 {
            return self.pick_atom();
        }
        match self.rng.gen_range(0..10) {
            0..=2 => self.pick_atom(),
            3..=6 => Formula::neg(self.formula(max_depth - 1)),
            _ => {
                let l = self.formula(max_depth - 1);
                let r = self.formula(max_depth - 1);
                Formula::imp(l, r)
            }
        }
    }

    /// A random sequent with `0..=max_premises` premises.
    pub fn sequent(&mut self, max_depth: usize, max_premises: usize) -> Sequent {
        let count = self.rng.gen_range(0..=max_premises);
        let premises = (0..count).map(|_| self.formula(max_depth)).collect();
        Sequent::new(premises, self.formula(max_depth))
    }

    pub fn sequents(
        &mut self,
        count: usize,
        max_depth: usize,
        max_premises: usize,
    ) -> Vec<Sequent> {
        (0..count)
            .map(|_| self.sequent(max_depth, max_premises))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn pool_sizes() {
        let sizes: Vec<usize> = (0..=4).map(|d| formula_pool(&["p"], d).len()).collect();
        assert_eq!(sizes, [1, 3, 13, 183, 33673]);
        assert_eq!(formula_pool(&["p", "q"], 1).len(), 2 + 2 + 4);
    }

    #[test]
    fn pool_is_distinct_and_depth_bounded() {
        let pool = formula_pool(&["p"], 3);
        let set: BTreeSet<&Formula> = pool.iter().collect();
        assert_eq!(set.len(), pool.len());
        assert!(pool.iter().all(|f| f.depth() <= 3));
        assert!(pool.iter().any(|f| f.depth() == 3));
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = Sampler::new(7, &["p", "q"]).sequents(20, 6, 3);
        let b = Sampler::new(7, &["p", "q"]).sequents(20, 6, 3);
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|s| s.conclusion.depth() <= 6 && s.premises.len() <= 3));
        let c = Sampler::new(8, &["p", "q"]).sequents(20, 6, 3);
        assert_ne!(a, c);
    }
}

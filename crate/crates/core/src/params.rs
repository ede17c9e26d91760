//! Numeric knobs shared by the randomized and search-based routines.

use num::rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub type Rng = ChaCha8Rng;

/// Search and restart limits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of search nodes per exact-cover run.
    pub nodes: u64,
    /// Optional wall-clock limit per exact-cover run, in milliseconds.
    pub time_ms: Option<u64>,
    /// Number of seeded restarts for randomized heuristics.
    pub restarts: usize,
    /// Candidate decompositions generated per step of the localized cover.
    pub candidates: usize,
    /// Global retries of the decomposition pipeline.
    pub retries: usize,
    /// Enumeration limit for property checks over families of link sets.
    pub enumeration: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: 5_000_000,
            time_ms: None,
            restarts: 16,
            candidates: 8,
            retries: 64,
            enumeration: 2_000_000,
        }
    }
}

/// Explicit values for every constant the asymptotic argument leaves symbolic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub q: usize,
    pub r: usize,
    pub lambda: u64,
    pub eps: Rational64,
    pub xi: Rational64,
    pub d: Rational64,
    pub mu: Rational64,
    pub rho: Rational64,
    pub rho_size: Rational64,
    pub gamma: Rational64,
    pub nu: Rational64,
    /// Fraction of a candidate family below which a greedy-cover step is flagged as thin.
    pub warn_fraction: Rational64,
    pub seed: u64,
    /// Worker threads for restart-parallel routines; results never depend on it.
    pub threads: usize,
    pub budget: Budget,
}

impl ParamSet {
    pub fn new(q: usize, r: usize) -> Self {
        ParamSet {
            q,
            r,
            lambda: 1,
            eps: Rational64::new(1, 100),
            xi: Rational64::new(1, 100),
            d: Rational64::new(1, 2),
            mu: Rational64::new(1, 2),
            rho: Rational64::new(1, 2),
            rho_size: Rational64::new(1, 2),
            gamma: Rational64::new(1, 10),
            nu: Rational64::new(1, 10),
            warn_fraction: Rational64::new(1, 10),
            seed: 0,
            threads: 1,
            budget: Budget::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_lambda(mut self, lambda: u64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.r < 1 || self.q <= self.r {
            return Err(invalid(format!("need q > r >= 1, got q={} r={}", self.q, self.r)));
        }
        if self.lambda < 1 {
            return Err(invalid("lambda must be at least 1"));
        }
        let unit = |name: &str, x: Rational64| -> Result<()> {
            if x < Rational64::from_integer(0) || x > Rational64::from_integer(1) {
                Err(invalid(format!("{name} = {x} outside [0,1]")))
            } else {
                Ok(())
            }
        };
        unit("eps", self.eps)?;
        unit("xi", self.xi)?;
        unit("d", self.d)?;
        unit("mu", self.mu)?;
        unit("rho", self.rho)?;
        unit("rho_size", self.rho_size)?;
        unit("gamma", self.gamma)?;
        unit("nu", self.nu)?;
        unit("warn_fraction", self.warn_fraction)?;
        Ok(())
    }

    pub fn rng(&self) -> Rng {
        Rng::seed_from_u64(self.seed)
    }
}

/// Seed for the `index`-th restart derived from `seed` (splitmix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64, index: u64) -> Rng {
    Rng::seed_from_u64(derive_seed(seed, index))
}

/// Runs `f` on each restart index, in parallel when `threads > 1`, returning
/// results in index order so the outcome does not depend on scheduling.
pub fn run_restarts<T, F>(threads: usize, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if threads <= 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    use rayon::prelude::*;
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| (0..count).into_par_iter().map(&f).collect()),
        Err(_) => (0..count).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_rejects_bad_orders() {
        assert!(ParamSet::new(3, 2).validate().is_ok());
        assert!(ParamSet::new(2, 2).validate().is_err());
        assert!(ParamSet::new(3, 0).validate().is_err());
        let mut p = ParamSet::new(3, 2);
        p.mu = Rational64::new(3, 2);
        assert!(p.validate().is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(0, 0), derive_seed(0, 1));
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn restarts_are_ordered_regardless_of_threads() {
        let a = run_restarts(1, 20, |i| derive_seed(1, i as u64));
        let b = run_restarts(4, 20, |i| derive_seed(1, i as u64));
        assert_eq!(a, b);
    }
}

//! Agent-based Monte Carlo counterpart of the analytic chain.
//!
//! Instead of aggregating revision probabilities into a kernel, this module
//! plays the process event by event: pick a focal individual, perhaps
//! mutate, otherwise revise by imitation or by the counterfactual rule, and
//! record the walk of the cooperator count. Long runs should reproduce the
//! analytic stationary distribution — the acceptance suite checks exactly
//! that — so the two halves of the crate validate each other.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::fermi;
use crate::error::Error;
use crate::fitness::{build_fitness_table, FitnessTable, PopulationConfig, UpdateMode};

/// The crate's reproducible RNG. A small-round ChaCha stream cipher: fast,
/// portable across platforms, and stable across releases, so a seed recorded
/// in experiment metadata replays the identical trajectory anywhere.
pub type SimRng = ChaCha8Rng;

/// A configured revision process ready to be stepped or run.
#[derive(Debug, Clone)]
pub struct Simulation {
    cfg: PopulationConfig,
    table: FitnessTable,
}

/// Outcome of a finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    /// Fraction of recorded steps spent in each state k = 0..=Z.
    pub empirical_distribution: Vec<f64>,
    /// Total revision events played.
    pub steps: u64,
    /// Events discarded from the front before recording began.
    pub burn_in: u64,
    /// Seed the trajectory was generated from.
    pub seed: u64,
    /// Cooperator count when the run ended.
    pub final_state: usize,
}

impl Simulation {
    /// Validates the configuration and precomputes the fitness table.
    pub fn new(cfg: PopulationConfig) -> Result<Self, Error> {
        let table = build_fitness_table(&cfg)?;
        Ok(Simulation { cfg, table })
    }

    /// The configuration this simulation was built from.
    pub fn config(&self) -> &PopulationConfig {
        &self.cfg
    }

    /// Plays a single revision event from state `k` and returns the next
    /// cooperator count (always within one of `k`).
    ///
    /// Event order: draw the focal individual's strategy from the current
    /// composition, give it a chance μ to blindly flip, and otherwise apply
    /// the configured revision rule. Under imitation the focal agent samples
    /// a model from the population and copies its strategy with the Fermi
    /// probability of the fitness difference; under counterfactual revision
    /// it weighs its own fitness against the fitness it would have in the
    /// population where it had chosen otherwise.
    pub fn step(&self, k: usize, rng: &mut impl Rng) -> usize {
        let z = self.cfg.population_size;
        assert!(k <= z, "state {k} out of range for population size {z}");
        let zf = z as f64;
        let focal_is_cooperator = rng.random::<f64>() < k as f64 / zf;

        if rng.random::<f64>() < self.cfg.mutation {
            return flip(k, focal_is_cooperator);
        }

        let imitate = match self.cfg.update_mode {
            UpdateMode::SocialLearning => true,
            UpdateMode::Counterfactual => false,
            UpdateMode::Mixed => rng.random::<f64>() < self.cfg.chi,
        };

        if imitate {
            // a focal cooperator has k − 1 cooperators among its Z − 1
            // potential models; sampling with the focal included instead
            // reproduces the k/Z · (Z−k)/Z kernel
            let model_is_cooperator = if self.cfg.exact_pairing {
                let coop_models = if focal_is_cooperator { k - 1 } else { k };
                rng.random::<f64>() < coop_models as f64 / (zf - 1.0)
            } else {
                rng.random::<f64>() < k as f64 / zf
            };
            if model_is_cooperator == focal_is_cooperator {
                return k;
            }
            let (own, model) = if focal_is_cooperator {
                (self.table.cooperator(k), self.table.defector(k))
            } else {
                (self.table.defector(k), self.table.cooperator(k))
            };
            let (own, model) = (
                own.expect("strategy present"),
                model.expect("strategy present"),
            );
            if rng.random::<f64>() < fermi(self.cfg.beta_sl, model - own) {
                return flip(k, focal_is_cooperator);
            }
            k
        } else {
            // counterfactual revision: compare the realized fitness with the
            // fitness the focal agent would have after switching strategy
            let (own, counterfactual) = if focal_is_cooperator {
                (self.table.cooperator(k), self.table.defector(k - 1))
            } else {
                (self.table.defector(k), self.table.cooperator(k + 1))
            };
            let own = own.expect("strategy present");
            let counterfactual = counterfactual.expect("switched state stays in range");
            if rng.random::<f64>() < fermi(self.cfg.beta_ct, counterfactual - own) {
                return flip(k, focal_is_cooperator);
            }
            k
        }
    }

    /// Runs `steps` revision events from `initial_k` with a fresh RNG seeded
    /// by `seed`, recording the state after every event past the first
    /// `burn_in` of them.
    pub fn run(
        &self,
        initial_k: usize,
        steps: u64,
        burn_in: u64,
        seed: u64,
    ) -> Result<SimulationReport, Error> {
        let z = self.cfg.population_size;
        if initial_k > z {
            return Err(Error::StateOutOfRange { k: initial_k, z });
        }
        if steps <= burn_in {
            return Err(Error::InvalidParameter(format!(
                "step budget must exceed the burn-in: got steps = {steps}, burn_in = {burn_in}"
            )));
        }
        let mut rng = SimRng::seed_from_u64(seed);
        let mut counts = vec![0u64; z + 1];
        let mut k = initial_k;
        for i in 1..=steps {
            k = self.step(k, &mut rng);
            if i > burn_in {
                counts[k] += 1;
            }
        }
        let recorded = (steps - burn_in) as f64;
        Ok(SimulationReport {
            empirical_distribution: counts.into_iter().map(|c| c as f64 / recorded).collect(),
            steps,
            burn_in,
            seed,
            final_state: k,
        })
    }
}

fn flip(k: usize, focal_is_cooperator: bool) -> usize {
    if focal_is_cooperator {
        k - 1
    } else {
        k + 1
    }
}

/// One-call façade: build the simulation and run it.
pub fn run(
    cfg: &PopulationConfig,
    initial_k: usize,
    steps: u64,
    burn_in: u64,
    seed: u64,
) -> Result<SimulationReport, Error> {
    Simulation::new(*cfg)?.run(initial_k, steps, burn_in, seed)
}

//! Average payoffs at the population scale.
//!
//! The population holds Z agents, k of them cooperators. Groups of N players
//! are assembled by sampling without replacement, so the number of
//! cooperating co-players a focal agent meets follows a hypergeometric
//! distribution. Averaging the game payoffs over that lottery yields each
//! strategy's fitness at every population state.
//!
//! Every binomial coefficient involved has a small lower index (at most the
//! group size), so each one is evaluated as a short log-space sum and
//! exponentiated per term — populations of 10⁴ stay comfortably in range.

use crate::error::Error;
use crate::game::{payoff_cooperator, payoff_defector, GameSpec};

/// Strategy-revision protocols the dynamics can run under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateMode {
    /// Imitate a randomly met model agent, accepting through a Fermi
    /// comparison of realized fitness.
    SocialLearning,
    /// Compare the realized fitness with the fitness the opposite strategy
    /// would earn in the correspondingly shifted population state.
    Counterfactual,
    /// Revise socially with probability `chi`, counterfactually otherwise.
    Mixed,
}

/// Everything a population experiment depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationConfig {
    /// Number of agents Z (Z ≥ N).
    pub population_size: usize,
    /// The group game every sampled group plays.
    pub game: GameSpec,
    /// Probability μ ∈ [0, 1] that a revising agent flips strategy blindly
    /// instead of applying its update rule.
    pub mutation: f64,
    /// Selection intensity β for imitation.
    pub beta_sl: f64,
    /// Selection intensity β for counterfactual revision.
    pub beta_ct: f64,
    /// Probability χ ∈ [0, 1] of revising socially in [`UpdateMode::Mixed`].
    pub chi: f64,
    /// Which revision rule drives the dynamics.
    pub update_mode: UpdateMode,
    /// Draw imitation models from the other Z−1 agents (pair-encounter
    /// prefactor k(Z−k)/(Z(Z−1))) instead of the self-inclusive default
    /// (k(Z−k)/Z², where picking oneself is a harmless no-op).
    pub exact_pairing: bool,
}

impl Default for PopulationConfig {
    /// Reference configuration used throughout the documentation: Z = 50,
    /// the default game, μ = 0.01, β = 5 for both rules, social learning.
    fn default() -> Self {
        PopulationConfig {
            population_size: 50,
            game: GameSpec::default(),
            mutation: 0.01,
            beta_sl: 5.0,
            beta_ct: 5.0,
            chi: 0.5,
            update_mode: UpdateMode::SocialLearning,
            exact_pairing: false,
        }
    }
}

impl PopulationConfig {
    /// Checks every domain constraint, reporting the first violated one.
    pub fn validate(&self) -> Result<(), Error> {
        self.game.validate()?;
        if self.population_size < self.game.group_size {
            return Err(Error::InvalidParameter(format!(
                "population size Z must be at least the group size N (Z = {}, N = {})",
                self.population_size, self.game.group_size
            )));
        }
        if !(self.mutation >= 0.0 && self.mutation <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "mutation probability mu must lie in [0, 1] (got {})",
                self.mutation
            )));
        }
        if !(self.beta_sl.is_finite() && self.beta_sl >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "selection intensity beta_sl must be finite and non-negative (got {})",
                self.beta_sl
            )));
        }
        if !(self.beta_ct.is_finite() && self.beta_ct >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "selection intensity beta_ct must be finite and non-negative (got {})",
                self.beta_ct
            )));
        }
        if !(self.chi >= 0.0 && self.chi <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "mixing weight chi must lie in [0, 1] (got {})",
                self.chi
            )));
        }
        Ok(())
    }
}

/// ln C(n, r), or `None` when the coefficient is zero by convention
/// (r < 0, r > n, or n < 0).
///
/// Summed over the shorter side of the coefficient; every caller keeps that
/// side at most the group size, so the loop is a handful of terms no matter
/// how large the population gets.
fn ln_choose(n: i64, r: i64) -> Option<f64> {
    if n < 0 || r < 0 || r > n {
        return None;
    }
    let r = r.min(n - r);
    let mut sum = 0.0;
    for i in 1..=r {
        sum += ((n - r + i) as f64).ln() - (i as f64).ln();
    }
    Some(sum)
}

/// Probability that a focal agent meets exactly `j` cooperators among its
/// `group_size − 1` co-players when the group is sampled without replacement
/// from a population of `population_size` agents, `k` of them cooperators.
///
/// The focal agent itself is excluded from the pool its co-players are drawn
/// from, which is why its own strategy matters. Impossible compositions get
/// weight 0. Callers guarantee `group_size ≤ population_size` and
/// `k ≤ population_size`.
pub fn hypergeometric_weight(
    population_size: usize,
    k: usize,
    group_size: usize,
    j: usize,
    focal_is_cooperator: bool,
) -> f64 {
    debug_assert!(group_size >= 1 && group_size <= population_size);
    debug_assert!(k <= population_size);
    let draws = group_size as i64 - 1;
    let (cooperators, defectors) = if focal_is_cooperator {
        (k as i64 - 1, (population_size - k) as i64)
    } else {
        (k as i64, population_size as i64 - k as i64 - 1)
    };
    let (Some(from_c), Some(from_d)) = (
        ln_choose(cooperators, j as i64),
        ln_choose(defectors, draws - j as i64),
    ) else {
        return 0.0;
    };
    let pool = ln_choose(population_size as i64 - 1, draws)
        .expect("co-player pool is at least as large as the draw");
    (from_c + from_d - pool).exp()
}

/// Hypergeometric average of the group payoffs for one strategy at state `k`.
fn average_payoff(k: usize, cfg: &PopulationConfig, focal_is_cooperator: bool) -> f64 {
    let game = &cfg.game;
    (0..game.group_size)
        .map(|j| {
            let weight = hypergeometric_weight(
                cfg.population_size,
                k,
                game.group_size,
                j,
                focal_is_cooperator,
            );
            if weight == 0.0 {
                return 0.0;
            }
            let payoff = if focal_is_cooperator {
                payoff_cooperator(j + 1, game)
            } else {
                payoff_defector(j, game)
            }
            .expect("composition stays within the group by construction");
            weight * payoff
        })
        .sum()
}

/// Average payoff of a cooperator when the population holds `k` cooperators.
/// Defined for 1 ≤ k ≤ Z; at k = 0 there is no cooperator to evaluate.
pub fn fitness_cooperator(k: usize, cfg: &PopulationConfig) -> Result<f64, Error> {
    cfg.validate()?;
    let z = cfg.population_size;
    if k > z {
        return Err(Error::StateOutOfRange { k, z });
    }
    if k == 0 {
        return Err(Error::StrategyAbsent {
            strategy: "cooperator",
            k,
        });
    }
    Ok(average_payoff(k, cfg, true))
}

/// Average payoff of a defector when the population holds `k` cooperators.
/// Defined for 0 ≤ k ≤ Z−1; at k = Z there is no defector to evaluate.
pub fn fitness_defector(k: usize, cfg: &PopulationConfig) -> Result<f64, Error> {
    cfg.validate()?;
    let z = cfg.population_size;
    if k > z {
        return Err(Error::StateOutOfRange { k, z });
    }
    if k == z {
        return Err(Error::StrategyAbsent {
            strategy: "defector",
            k,
        });
    }
    Ok(average_payoff(k, cfg, false))
}

/// Both strategies' fitness at every state that supports them, precomputed.
///
/// Entries are bit-identical to the pointwise [`fitness_cooperator`] /
/// [`fitness_defector`] calls; the table only trades repeated evaluation for
/// memory.
#[derive(Debug, Clone, PartialEq)]
pub struct FitnessTable {
    population_size: usize,
    cooperator: Vec<f64>,
    defector: Vec<f64>,
}

impl FitnessTable {
    /// Population size Z the table was built for.
    pub fn population_size(&self) -> usize {
        self.population_size
    }

    /// f_C(k) for 1 ≤ k ≤ Z.
    pub fn cooperator(&self, k: usize) -> Result<f64, Error> {
        if k > self.population_size {
            return Err(Error::StateOutOfRange {
                k,
                z: self.population_size,
            });
        }
        if k == 0 {
            return Err(Error::StrategyAbsent {
                strategy: "cooperator",
                k,
            });
        }
        Ok(self.cooperator[k - 1])
    }

    /// f_D(k) for 0 ≤ k ≤ Z−1.
    pub fn defector(&self, k: usize) -> Result<f64, Error> {
        if k >= self.population_size {
            return Err(if k > self.population_size {
                Error::StateOutOfRange {
                    k,
                    z: self.population_size,
                }
            } else {
                Error::StrategyAbsent {
                    strategy: "defector",
                    k,
                }
            });
        }
        Ok(self.defector[k])
    }

    /// Accessors for callers that have already excluded the boundary states.
    pub(crate) fn cooperator_unchecked(&self, k: usize) -> f64 {
        self.cooperator[k - 1]
    }

    pub(crate) fn defector_unchecked(&self, k: usize) -> f64 {
        self.defector[k]
    }
}

/// Tabulates both strategies' fitness over the whole state space.
pub fn build_fitness_table(cfg: &PopulationConfig) -> Result<FitnessTable, Error> {
    cfg.validate()?;
    let z = cfg.population_size;
    Ok(FitnessTable {
        population_size: z,
        cooperator: (1..=z).map(|k| average_payoff(k, cfg, true)).collect(),
        defector: (0..z).map(|k| average_payoff(k, cfg, false)).collect(),
    })
}

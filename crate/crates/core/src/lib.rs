//! Evolutionary dynamics of cooperation in threshold public-goods games.
//!
//! A finite population of Z agents repeatedly plays an N-person game in
//! randomly sampled groups: cooperators pay a cost, and the pot is amplified
//! and shared only when at least M members cooperate. Agents revise their
//! strategies either by *imitation* — copying a fitter peer — or by
//! *counterfactual* reasoning — asking how they would have fared had they
//! chosen otherwise. Both rules, and any mixture of them, reduce to a
//! birth–death Markov chain over the cooperator count.
//!
//! The crate provides the full pipeline:
//!
//! 1. [`game`] — payoffs of a single group interaction,
//! 2. [`fitness`] — payoffs averaged over the group-sampling lottery,
//! 3. [`dynamics`] — revision rules turned into transition kernels,
//!    selection gradients, and their fixed points,
//! 4. [`markov`] — the stationary distribution and cooperation statistics
//!    of the resulting chain,
//! 5. [`mc`] — an agent-based Monte Carlo realization of the same process,
//!    for validating the analytic results and exploring beyond them.
//!
//! The commonly used items are re-exported at the crate root:
//!
//! ```
//! use coopdyn::{
//!     build_fitness_table, build_kernel, cooperation_index, stationary_distribution,
//!     PopulationConfig, UpdateMode,
//! };
//!
//! let cfg = PopulationConfig {
//!     update_mode: UpdateMode::Counterfactual,
//!     ..PopulationConfig::default()
//! };
//! let table = build_fitness_table(&cfg)?;
//! let kernel = build_kernel(&cfg, &table)?;
//! let stationary = stationary_distribution(&kernel)?;
//! let summary = cooperation_index(&stationary);
//! assert!(summary.normalized_index > 0.0 && summary.normalized_index < 1.0);
//! # Ok::<(), coopdyn::Error>(())
//! ```

pub mod dynamics;
pub mod error;
pub mod fitness;
pub mod game;
pub mod markov;
pub mod mc;


pub use dynamics::{
    build_kernel, classify_fixed_points, ct_transitions, fermi, gradient, sl_transitions,
    with_mutation, Direction, FixedPoint, GradientProfile, Stability, TransitionKernel,
};
pub use error::Error;
pub use fitness::{
    build_fitness_table, fitness_cooperator, fitness_defector, hypergeometric_weight, FitnessTable,
    PopulationConfig, UpdateMode,
};
pub use game::{payoff_cooperator, payoff_defector, GameSpec};
pub use markov::{
    cooperation_index, stationary_distribution, transition_matrix, CooperationSummary,
    StationaryDistribution, TransitionMatrix,
};
pub use mc::{run, SimRng, Simulation, SimulationReport};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

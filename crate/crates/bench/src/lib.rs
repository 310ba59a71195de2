//! Shared fixtures for the pipeline benchmarks.

use coopdyn::{GameSpec, PopulationConfig, UpdateMode};

/// The documentation's reference configuration, rescaled to any population
/// size, with the revision rule as a parameter.
pub fn scaled_config(population_size: usize, update_mode: UpdateMode) -> PopulationConfig {
    PopulationConfig {
        population_size,
        game: GameSpec::default(),
        update_mode,
        ..PopulationConfig::default()
    }
}

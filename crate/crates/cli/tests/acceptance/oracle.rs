//! Independent oracles and samplers for the acceptance suite.
//!
//! The enumeration oracle lists co-player groups combinatorially; the
//! stationary oracle solves the eigenproblem of the full transition matrix
//! with a dense LU factorization. Neither shares a code path with the
//! library's hypergeometric averages or its closed-form product solution, so
//! agreement is a genuine cross-check.

use coopdyn::{PopulationConfig, SimRng, TransitionKernel, UpdateMode};
use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// Average focal payoff in state `k`, by brute force: every group of
/// `group_size - 1` co-players the focal agent could meet, listed explicitly
/// and weighted equally.
pub fn enumerated_fitness(cfg: &PopulationConfig, k: usize, focal_is_cooperator: bool) -> f64 {
    let z = cfg.population_size;
    let game = &cfg.game;
    let coop_companions = if focal_is_cooperator { k - 1 } else { k };
    // companion roster: true = cooperator
    let roster: Vec<bool> = (0..z - 1).map(|i| i < coop_companions).collect();

    let share = |members_cooperating: usize| -> f64 {
        if members_cooperating >= game.threshold {
            members_cooperating as f64 * game.enhancement * game.cost / game.group_size as f64
        } else {
            0.0
        }
    };

    let mut total = 0.0;
    let mut groups = 0u64;
    for company in roster.iter().combinations(game.group_size - 1) {
        let j = company.into_iter().filter(|&&c| c).count();
        total += if focal_is_cooperator {
            share(j + 1) - game.cost
        } else {
            share(j)
        };
        groups += 1;
    }
    total / groups as f64
}

/// Stationary distribution obtained the textbook way: as the probability
/// vector fixed by sᵀΛ = sᵀ, solved as a dense linear system with the
/// normalization Σs = 1 replacing the redundant last equation.
pub fn eigen_stationary(kernel: &TransitionKernel) -> Vec<f64> {
    let states = kernel.population_size() + 1;
    let (up, down) = (kernel.t_plus(), kernel.t_minus());
    // A = Λᵀ − I
    let mut a = DMatrix::<f64>::zeros(states, states);
    for k in 0..states {
        let stay = 1.0 - up[k] - down[k];
        a[(k, k)] = stay - 1.0;
        if k + 1 < states {
            a[(k + 1, k)] = up[k];
        }
        if k > 0 {
            a[(k - 1, k)] = down[k];
        }
    }
    let mut b = DVector::<f64>::zeros(states);
    for k in 0..states {
        a[(states - 1, k)] = 1.0;
    }
    b[states - 1] = 1.0;
    let solution = a
        .lu()
        .solve(&b)
        .expect("the normalized stationary system is non-singular for irreducible chains");
    let total: f64 = solution.iter().sum();
    solution.iter().map(|s| s / total).collect()
}

fn sample_mode(rng: &mut SimRng) -> UpdateMode {
    match rng.random_range(0..3) {
        0 => UpdateMode::SocialLearning,
        1 => UpdateMode::Counterfactual,
        _ => UpdateMode::Mixed,
    }
}

/// A random valid configuration across the full admissible parameter space,
/// including the μ = 0 and μ = 1 edges.
pub fn random_config(rng: &mut SimRng) -> PopulationConfig {
    let z = rng.random_range(2..=80usize);
    let n = rng.random_range(2..=z.min(8));
    let mutation = match rng.random_range(0..10) {
        0 => 0.0,
        1 => 1.0,
        _ => rng.random::<f64>(),
    };
    let mut cfg = PopulationConfig {
        population_size: z,
        game: coopdyn::GameSpec {
            group_size: n,
            threshold: rng.random_range(1..=n),
            enhancement: rng.random_range(0.1..12.0),
            cost: rng.random_range(0.1..3.0),
        },
        mutation,
        beta_sl: rng.random_range(0.0..10.0),
        beta_ct: rng.random_range(0.0..10.0),
        chi: rng.random::<f64>(),
        update_mode: sample_mode(rng),
        exact_pairing: rng.random_bool(0.5),
    };
    cfg.validate().expect("sampler stays in the valid domain");
    // exercise the exact endpoints now and then
    if rng.random_range(0..8) == 0 {
        cfg.chi = f64::from(rng.random_bool(0.5) as u8);
    }
    cfg
}

/// A random configuration kept gentle enough for the dense eigen-solver:
/// enough mutation to stay well-conditioned, mild selection, moderate size.
/// Strongly metastable chains make the eigenproblem nearly singular, which
/// would test the oracle rather than the library.
pub fn gentle_config(rng: &mut SimRng) -> PopulationConfig {
    let z = rng.random_range(6..=60usize);
    let n = rng.random_range(2..=z.min(6));
    let cfg = PopulationConfig {
        population_size: z,
        game: coopdyn::GameSpec {
            group_size: n,
            threshold: rng.random_range(1..=n),
            enhancement: rng.random_range(0.5..8.0),
            cost: rng.random_range(0.2..2.0),
        },
        mutation: rng.random_range(0.02..0.5),
        beta_sl: rng.random_range(0.0..3.0),
        beta_ct: rng.random_range(0.0..3.0),
        chi: rng.random::<f64>(),
        update_mode: sample_mode(rng),
        exact_pairing: rng.random_bool(0.5),
    };
    cfg.validate().expect("sampler stays in the valid domain");
    cfg
}

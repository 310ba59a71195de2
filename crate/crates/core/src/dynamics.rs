//! One-step transition probabilities and the gradient of selection.
//!
//! At state k (cooperator count), a single revision event moves the
//! population to k−1, k, or k+1. Social learning imitates a randomly met
//! model through a Fermi comparison of realized fitness; counterfactual
//! revision runs the same comparison against the fitness the opposite
//! strategy would earn in the correspondingly shifted state. The two rules
//! may be mixed, and undirected mutation is blended in last. The difference
//! T⁺(k) − T⁻(k) is the gradient of selection, whose interior sign changes
//! locate the coordination and coexistence points of the dynamics.

use crate::error::Error;
use crate::fitness::{FitnessTable, PopulationConfig, UpdateMode};

/// Fermi acceptance probability for a fitness advantage `delta_f` at
/// selection intensity `beta`.
///
/// Evaluated through the branch that never exponentiates a positive
/// argument, so arbitrarily large |beta·delta_f| cannot overflow. Monotone
/// in `delta_f`, exactly 0.5 at zero advantage.
pub fn fermi(beta: f64, delta_f: f64) -> f64 {
    let x = beta * delta_f;
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Raw social-learning transition pair (T⁺, T⁻) at state `k`, before
/// mutation.
///
/// A revising agent meets a model playing the other strategy with
/// probability k(Z−k)/Z² (self-inclusive sampling; picking oneself is a
/// no-op) or k(Z−k)/(Z(Z−1)) under `exact_pairing`, then imitates through
/// the Fermi rule. Homogeneous states cannot move: both entries are 0 at
/// k = 0 and k = Z, short-circuited before any fitness lookup.
pub fn sl_transitions(k: usize, table: &FitnessTable, cfg: &PopulationConfig) -> (f64, f64) {
    debug_assert_eq!(table.population_size(), cfg.population_size);
    let z = cfg.population_size;
    if k == 0 || k >= z {
        return (0.0, 0.0);
    }
    let zf = z as f64;
    let kf = k as f64;
    let encounter = if cfg.exact_pairing {
        kf * (zf - kf) / (zf * (zf - 1.0))
    } else {
        kf * (zf - kf) / (zf * zf)
    };
    let advantage = table.cooperator_unchecked(k) - table.defector_unchecked(k);
    (
        encounter * fermi(cfg.beta_sl, advantage),
        encounter * fermi(cfg.beta_sl, -advantage),
    )
}

/// Raw counterfactual transition pair (T⁺, T⁻) at state `k`, before
/// mutation.
///
/// A defector switches after comparing f_C(k+1) — its fitness had it
/// cooperated, which also shifts the state — with its realized f_D(k);
/// a cooperator compares f_D(k−1) with f_C(k). Unlike imitation, this rule
/// can leave homogeneous states: only the moves that lack an agent to make
/// them (up at k = Z, down at k = 0) are structurally zero.
pub fn ct_transitions(k: usize, table: &FitnessTable, cfg: &PopulationConfig) -> (f64, f64) {
    debug_assert_eq!(table.population_size(), cfg.population_size);
    let z = cfg.population_size;
    let zf = z as f64;
    let up = if k < z {
        let gain = table.cooperator_unchecked(k + 1) - table.defector_unchecked(k);
        ((zf - k as f64) / zf) * fermi(cfg.beta_ct, gain)
    } else {
        0.0
    };
    let down = if k > 0 {
        let gain = table.defector_unchecked(k - 1) - table.cooperator_unchecked(k);
        (k as f64 / zf) * fermi(cfg.beta_ct, gain)
    } else {
        0.0
    };
    (up, down)
}

/// Direction of a one-step change in the cooperator count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// k → k+1 (a defector turned cooperator).
    Up,
    /// k → k−1 (a cooperator turned defector).
    Down,
}

/// Blends undirected mutation into a raw transition probability: with
/// probability μ the revising agent flips blindly, which moves the state up
/// whenever the agent was one of the Z−k defectors (and down for the k
/// cooperators).
pub fn with_mutation(t: f64, k: usize, direction: Direction, cfg: &PopulationConfig) -> f64 {
    let z = cfg.population_size as f64;
    let drift = match direction {
        Direction::Up => (z - k as f64) / z,
        Direction::Down => k as f64 / z,
    };
    (1.0 - cfg.mutation) * t + cfg.mutation * drift
}

/// One-step probabilities T⁺(k), T⁻(k) for every state of the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionKernel {
    t_plus: Vec<f64>,
    t_minus: Vec<f64>,
    mode: UpdateMode,
    includes_mutation: bool,
}

impl TransitionKernel {
    /// Population size Z (the kernel covers states 0..=Z).
    pub fn population_size(&self) -> usize {
        self.t_plus.len() - 1
    }

    /// Upward probabilities T⁺(k), indexed by state.
    pub fn t_plus(&self) -> &[f64] {
        &self.t_plus
    }

    /// Downward probabilities T⁻(k), indexed by state.
    pub fn t_minus(&self) -> &[f64] {
        &self.t_minus
    }

    /// Revision rule the kernel was built for.
    pub fn mode(&self) -> UpdateMode {
        self.mode
    }

    /// Whether a positive mutation rate was blended in.
    pub fn includes_mutation(&self) -> bool {
        self.includes_mutation
    }

    #[cfg(test)]
    pub(crate) fn from_raw(
        t_plus: Vec<f64>,
        t_minus: Vec<f64>,
        mode: UpdateMode,
        includes_mutation: bool,
    ) -> Self {
        TransitionKernel {
            t_plus,
            t_minus,
            mode,
            includes_mutation,
        }
    }
}

/// Assembles the full transition kernel for the configured update mode,
/// mutation included.
pub fn build_kernel(
    cfg: &PopulationConfig,
    table: &FitnessTable,
) -> Result<TransitionKernel, Error> {
    cfg.validate()?;
    if table.population_size() != cfg.population_size {
        return Err(Error::InvalidParameter(format!(
            "fitness table built for Z = {} cannot drive a population of Z = {}",
            table.population_size(),
            cfg.population_size
        )));
    }
    let z = cfg.population_size;
    let mut t_plus = Vec::with_capacity(z + 1);
    let mut t_minus = Vec::with_capacity(z + 1);
    for k in 0..=z {
        let (raw_up, raw_down) = match cfg.update_mode {
            UpdateMode::SocialLearning => sl_transitions(k, table, cfg),
            UpdateMode::Counterfactual => ct_transitions(k, table, cfg),
            UpdateMode::Mixed => {
                let (su, sd) = sl_transitions(k, table, cfg);
                let (cu, cd) = ct_transitions(k, table, cfg);
                (
                    cfg.chi * su + (1.0 - cfg.chi) * cu,
                    cfg.chi * sd + (1.0 - cfg.chi) * cd,
                )
            }
        };
        t_plus.push(with_mutation(raw_up, k, Direction::Up, cfg));
        t_minus.push(with_mutation(raw_down, k, Direction::Down, cfg));
    }
    Ok(TransitionKernel {
        t_plus,
        t_minus,
        mode: cfg.update_mode,
        includes_mutation: cfg.mutation > 0.0,
    })
}

/// Gradient of selection G(k) = T⁺(k) − T⁻(k) over the whole state space.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientProfile {
    g: Vec<f64>,
    mode: UpdateMode,
}

impl GradientProfile {
    /// G(k) indexed by state.
    pub fn values(&self) -> &[f64] {
        &self.g
    }

    /// Population size Z.
    pub fn population_size(&self) -> usize {
        self.g.len() - 1
    }

    /// Revision rule the profile belongs to.
    pub fn mode(&self) -> UpdateMode {
        self.mode
    }

    #[cfg(test)]
    pub(crate) fn from_raw(g: Vec<f64>, mode: UpdateMode) -> Self {
        GradientProfile { g, mode }
    }
}

/// Most likely direction of motion at every state.
pub fn gradient(kernel: &TransitionKernel) -> GradientProfile {
    GradientProfile {
        g: kernel
            .t_plus
            .iter()
            .zip(&kernel.t_minus)
            .map(|(up, down)| up - down)
            .collect(),
        mode: kernel.mode,
    }
}

/// Dynamical nature of a rest point of the gradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    /// The flow converges from both sides (+ → −): a coexistence point.
    Stable,
    /// The flow diverges (− → +): a coordination point separating basins.
    Unstable,
}

/// An interior rest point of the selection gradient, located on the
/// continuous k axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    /// Position in (0, Z), linearly interpolated between integer states.
    pub location: f64,
    /// Whether the flow converges to or diverges from the point.
    pub stability: Stability,
}

/// Finds the interior rest points of a gradient profile.
///
/// Scans interior states for exact zeros (classified by the signs of their
/// neighbours) and interior state pairs for strict sign changes (located by
/// linear interpolation). Crossings adjacent to the boundary states are
/// ignored on purpose: with μ > 0 the gradient is always +μ at k = 0 and −μ
/// at k = Z, so a sub-state-width crossing hugs each boundary as a mutation
/// artifact rather than an interior fixed point of the selection dynamics.
/// Degenerate zero plateaus are not classified. Points come back sorted by
/// location; the list is empty when the flow never turns.
pub fn classify_fixed_points(profile: &GradientProfile) -> Vec<FixedPoint> {
    let g = profile.values();
    let z = g.len() - 1;
    let mut points = Vec::new();
    for k in 1..z {
        if g[k] == 0.0 {
            let stability = if g[k - 1] > 0.0 && g[k + 1] < 0.0 {
                Some(Stability::Stable)
            } else if g[k - 1] < 0.0 && g[k + 1] > 0.0 {
                Some(Stability::Unstable)
            } else {
                None
            };
            if let Some(stability) = stability {
                points.push(FixedPoint {
                    location: k as f64,
                    stability,
                });
            }
        }
    }
    for k in 1..z.saturating_sub(1) {
        let (a, b) = (g[k], g[k + 1]);
        if a > 0.0 && b < 0.0 {
            points.push(FixedPoint {
                location: k as f64 + a / (a - b),
                stability: Stability::Stable,
            });
        } else if a < 0.0 && b > 0.0 {
            points.push(FixedPoint {
                location: k as f64 + a / (a - b),
                stability: Stability::Unstable,
            });
        }
    }
    points.sort_by(|p, q| p.location.total_cmp(&q.location));
    points
}

//! Threshold public-goods game (an N-person stag hunt).
//!
//! A group of `group_size` players holds some number `j` of cooperators, each
//! of whom pays `cost` into a common pool. Only when `j` reaches `threshold`
//! is the pool multiplied by `enhancement` and shared equally among all
//! members; below the threshold the contributions are wasted. With
//! `threshold = 1` every contribution is productive and the game reduces to
//! the ordinary linear public-goods game.

use crate::error::Error;

/// Parameters of the group game.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameSpec {
    /// Number of players N in a sampled group (N ≥ 2).
    pub group_size: usize,
    /// Minimum number of cooperators M needed for the pool to pay out
    /// (1 ≤ M ≤ N).
    pub threshold: usize,
    /// Multiplier F > 0 applied to the pooled contributions.
    pub enhancement: f64,
    /// Contribution c > 0 paid by each cooperator.
    pub cost: f64,
}

impl GameSpec {
    /// Builds a validated game specification.
    pub fn new(
        group_size: usize,
        threshold: usize,
        enhancement: f64,
        cost: f64,
    ) -> Result<Self, Error> {
        let game = GameSpec {
            group_size,
            threshold,
            enhancement,
            cost,
        };
        game.validate()?;
        Ok(game)
    }

    /// Checks every domain constraint, reporting the first violated one.
    pub fn validate(&self) -> Result<(), Error> {
        if self.group_size < 2 {
            return Err(Error::InvalidParameter(format!(
                "group size N must be at least 2 (got {})",
                self.group_size
            )));
        }
        if self.threshold < 1 || self.threshold > self.group_size {
            return Err(Error::InvalidParameter(format!(
                "coordination threshold M must satisfy 1 <= M <= N (M = {}, N = {})",
                self.threshold, self.group_size
            )));
        }
        if !(self.enhancement.is_finite() && self.enhancement > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "enhancement factor F must be positive and finite (got {})",
                self.enhancement
            )));
        }
        if !(self.cost.is_finite() && self.cost > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cooperation cost c must be positive and finite (got {})",
                self.cost
            )));
        }
        Ok(())
    }

    /// Share of the public good each member receives when `j` of them
    /// cooperate: j·F·c/N once the threshold is met, nothing below it.
    fn public_share(&self, j: usize) -> f64 {
        if j >= self.threshold {
            j as f64 * self.enhancement * self.cost / self.group_size as f64
        } else {
            0.0
        }
    }
}

impl Default for GameSpec {
    /// The reference game used throughout the documentation:
    /// N = 6, M = 3, F = 5.5, c = 1.
    fn default() -> Self {
        GameSpec {
            group_size: 6,
            threshold: 3,
            enhancement: 5.5,
            cost: 1.0,
        }
    }
}

/// Payoff of a defector in a group where `j` of the members cooperate.
pub fn payoff_defector(j: usize, game: &GameSpec) -> Result<f64, Error> {
    if j > game.group_size {
        return Err(Error::CooperatorCountOutOfRange {
            j,
            min: 0,
            max: game.group_size,
        });
    }
    Ok(game.public_share(j))
}

/// Payoff of a cooperator in a group where `j` members cooperate. The focal
/// cooperator is one of the `j`, so `j ≥ 1`; it receives the same share as
/// everyone else minus its own contribution.
pub fn payoff_cooperator(j: usize, game: &GameSpec) -> Result<f64, Error> {
    if j < 1 || j > game.group_size {
        return Err(Error::CooperatorCountOutOfRange {
            j,
            min: 1,
            max: game.group_size,
        });
    }
    Ok(game.public_share(j) - game.cost)
}

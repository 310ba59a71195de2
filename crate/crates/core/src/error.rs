//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while assembling or analysing a population
/// model. Domain violations carry enough context to name the offending
/// constraint, so front ends can forward the message verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// A parameter (or parameter combination) violates a documented domain
    /// constraint; the message names the constraint.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A group composition `j` outside the range meaningful for the requested
    /// payoff.
    #[error("cooperator count {j} out of range {min}..={max} for this group")]
    CooperatorCountOutOfRange {
        /// Offending number of cooperators in the group.
        j: usize,
        /// Smallest admissible count.
        min: usize,
        /// Largest admissible count (the group size).
        max: usize,
    },

    /// Fitness of a strategy requested at a state where nobody plays it.
    #[error("no {strategy} present at state k = {k}; its fitness is undefined there")]
    StrategyAbsent {
        /// `"cooperator"` or `"defector"`.
        strategy: &'static str,
        /// State the request was made at.
        k: usize,
    },

    /// A cooperator count outside the population's state space.
    #[error("state k = {k} outside the population range 0..={z}")]
    StateOutOfRange {
        /// Offending state.
        k: usize,
        /// Population size.
        z: usize,
    },

    /// Stationary analysis was requested for a chain that need not be
    /// irreducible. Without mutation, revision cannot be relied on to leave
    /// homogeneous states; analyse absorption instead of a stationary
    /// distribution.
    #[error(
        "stationary distribution requires mu > 0: the mu = 0 chain is not \
         irreducible in general (homogeneous states absorb under imitation); \
         use an absorbing-state analysis instead"
    )]
    ReducibleChain,

    /// Transition numbers that stopped being probabilities.
    #[error("transition kernel invariant violated at state k = {k}: {detail}")]
    MalformedKernel {
        /// State at which the invariant broke.
        k: usize,
        /// What exactly went wrong.
        detail: String,
    },
}

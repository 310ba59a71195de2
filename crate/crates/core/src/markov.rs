//! The revision process as a birth–death Markov chain.
//!
//! States count cooperators and one revision event changes the count by at
//! most one, so the chain's transition matrix is tridiagonal and its
//! stationary distribution has the classical closed form: a running product
//! of up/down transition ratios, accumulated here in log-space so that
//! populations of 10⁴ and selection intensities up to 50 stay finite. The
//! eigenvalue-1 eigenvector route is kept in the test suites as an
//! independent oracle; it is never the production path.

use crate::dynamics::TransitionKernel;
use crate::error::Error;

/// Tridiagonal row-stochastic transition matrix Λ of the chain,
/// stored as its three diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    t_plus: Vec<f64>,
    t_minus: Vec<f64>,
    diagonal: Vec<f64>,
}

impl TransitionMatrix {
    /// Number of states, Z + 1.
    pub fn size(&self) -> usize {
        self.diagonal.len()
    }

    /// Superdiagonal Λ_{k,k+1} = T⁺(k).
    pub fn t_plus(&self) -> &[f64] {
        &self.t_plus
    }

    /// Subdiagonal Λ_{k,k−1} = T⁻(k).
    pub fn t_minus(&self) -> &[f64] {
        &self.t_minus
    }

    /// Self-loop probabilities Λ_{k,k}.
    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    /// Row-vector product `dist`·Λ — one step of the occupancy flow. A
    /// stationary distribution is a fixed point of this map.
    pub fn left_multiply(&self, dist: &[f64]) -> Vec<f64> {
        assert_eq!(dist.len(), self.size(), "distribution/matrix size mismatch");
        let states = self.size();
        (0..states)
            .map(|k| {
                let mut mass = dist[k] * self.diagonal[k];
                if k > 0 {
                    mass += dist[k - 1] * self.t_plus[k - 1];
                }
                if k + 1 < states {
                    mass += dist[k + 1] * self.t_minus[k + 1];
                }
                mass
            })
            .collect()
    }
}

/// Assembles the (Z+1)×(Z+1) tridiagonal stochastic matrix of a kernel,
/// re-checking the probability invariants on the way in.
pub fn transition_matrix(kernel: &TransitionKernel) -> Result<TransitionMatrix, Error> {
    let z = kernel.population_size();
    let (up, down) = (kernel.t_plus(), kernel.t_minus());
    if up[z] != 0.0 {
        return Err(Error::MalformedKernel {
            k: z,
            detail: "upward probability must vanish at k = Z".into(),
        });
    }
    if down[0] != 0.0 {
        return Err(Error::MalformedKernel {
            k: 0,
            detail: "downward probability must vanish at k = 0".into(),
        });
    }
    let mut diagonal = Vec::with_capacity(z + 1);
    for k in 0..=z {
        let (p, m) = (up[k], down[k]);
        if !((0.0..=1.0).contains(&p) && (0.0..=1.0).contains(&m)) {
            return Err(Error::MalformedKernel {
                k,
                detail: format!("transition probabilities outside [0, 1]: T+ = {p}, T- = {m}"),
            });
        }
        let moving = p + m;
        // floating-point slack only: the kernel guarantees T+ + T- ≤ 1
        if moving > 1.0 + 1e-12 {
            return Err(Error::MalformedKernel {
                k,
                detail: format!("T+ + T- = {moving} exceeds 1"),
            });
        }
        diagonal.push((1.0 - moving).max(0.0));
    }
    Ok(TransitionMatrix {
        t_plus: up.to_vec(),
        t_minus: down.to_vec(),
        diagonal,
    })
}

/// Long-run occupancy of every state.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution {
    probabilities: Vec<f64>,
}

impl StationaryDistribution {
    /// s_k indexed by state, non-negative and summing to 1.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Population size Z.
    pub fn population_size(&self) -> usize {
        self.probabilities.len() - 1
    }

    #[cfg(test)]
    pub(crate) fn from_raw(probabilities: Vec<f64>) -> Self {
        StationaryDistribution { probabilities }
    }
}

/// Stationary distribution of the chain via the detailed-balance product
/// form s_k ∝ Π_{i<k} T⁺(i)/T⁻(i+1), evaluated in log-space and normalized.
///
/// Requires a kernel built with μ > 0: mutation guarantees every ratio in
/// the product exists and the chain has a unique stationary distribution.
pub fn stationary_distribution(kernel: &TransitionKernel) -> Result<StationaryDistribution, Error> {
    if !kernel.includes_mutation() {
        return Err(Error::ReducibleChain);
    }
    let z = kernel.population_size();
    let (up, down) = (kernel.t_plus(), kernel.t_minus());
    let mut log_weight = vec![0.0; z + 1];
    for k in 1..=z {
        // cannot trigger for kernels built with μ > 0; guards hand-made input
        if up[k - 1] <= 0.0 || down[k] <= 0.0 {
            return Err(Error::MalformedKernel {
                k,
                detail: "interior transition vanished although mutation is positive".into(),
            });
        }
        log_weight[k] = log_weight[k - 1] + up[k - 1].ln() - down[k].ln();
    }
    let peak = log_weight.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_weight.iter().map(|lw| (lw - peak).exp()).collect();
    let total: f64 = weights.iter().sum();
    Ok(StationaryDistribution {
        probabilities: weights.into_iter().map(|w| w / total).collect(),
    })
}

/// Long-run cooperation statistics of a stationary distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CooperationSummary {
    /// Expected number of cooperators ⟨C⟩ = Σ_k k·s_k, in [0, Z].
    pub expected_cooperators: f64,
    /// ⟨C⟩/Z, in [0, 1].
    pub normalized_index: f64,
}

/// Expected long-run cooperator count, raw and normalized by Z.
pub fn cooperation_index(distribution: &StationaryDistribution) -> CooperationSummary {
    let expected: f64 = distribution
        .probabilities()
        .iter()
        .enumerate()
        .map(|(k, s)| k as f64 * s)
        .sum();
    CooperationSummary {
        expected_cooperators: expected,
        normalized_index: expected / distribution.population_size() as f64,
    }
}

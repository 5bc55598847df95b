#pragma once

#include "bonus/gamma_tables.hpp"
#include "bonus/prior.hpp"

namespace bonus {

/// Posterior mean of the win probability after state (i, j): the mean of
/// Be(alpha + j, beta + i - j), i.e. (j + alpha) / (i + alpha + beta).
double posterior_mean(const PriorParams& prior, int i, int j);

/// log Pr[S_i = j]: probability that the stronger-prior player has won j of
/// the first i rounds, from the beta-binomial marginal. Computed entirely from
/// the log-Gamma tables.
double log_state_prob(const GammaTables& tables, int i, int j);

/// Pr[S_i = j], exponentiated last.
double state_prob(const GammaTables& tables, int i, int j);

/// Q-weight Pr[S_i = j] * 2 q (1 - q) with q the posterior mean at (i, j).
/// Assembled in log space so large shape parameters stay finite and the
/// symmetric case keeps its exact j <-> i-j symmetry.
double q_weight(const GammaTables& tables, int i, int j);

/// Like q_weight but out-of-range states (j < 0 or j > i) count as zero mass
/// instead of raising. Extreme bonuses index past the state range; those
/// states never occur.
double q_weight_or_zero(const GammaTables& tables, int i, int j);

/// Shifted harmonic sum over the first n-1 rounds:
/// sum_{i=1}^{n-1} 1 / (i + alpha + beta - 1). Requires n >= 2.
double harmonic_shifted(const PriorParams& prior, int n);

/// Beta density theta^(alpha-1) (1-theta)^(beta-1) / B(alpha, beta).
/// Endpoints are accepted (the shape constraints alpha, beta >= 1 keep both
/// exponents non-negative, so the density never diverges).
double beta_density(const PriorParams& prior, double theta);

}  // namespace bonus

#pragma once

#include <vector>

#include "bonus/prior.hpp"

namespace bonus {

/// Preprocessed log-Gamma lookup tables for a fixed prior. Four arrays over
/// integer offsets y = 0..n_max:
///
///   log_factorial[y]     = log Gamma(1 + y)
///   log_rising_alpha[y]  = log Gamma(alpha + y) - log Gamma(alpha)
///   log_rising_beta[y]   = log Gamma(beta + y)  - log Gamma(beta)
///   log_falling_ab[y]    = log Gamma(alpha + beta) - log Gamma(alpha + beta + y)
///
/// Every state-probability and Q-weight query downstream becomes O(1) sums of
/// these entries, exponentiated last. All arithmetic stays in log space so the
/// near-certain regime (alpha + beta ~ 10^6) cannot overflow.
///
/// Immutable after construction; safe to share across threads.
class GammaTables {
 public:
  GammaTables(const PriorParams& prior, int n_max);

  const PriorParams& prior() const { return prior_; }
  int n_max() const { return n_max_; }

  double log_factorial(int y) const { return log_factorial_[static_cast<size_t>(y)]; }
  double log_rising_alpha(int y) const { return log_rising_alpha_[static_cast<size_t>(y)]; }
  double log_rising_beta(int y) const { return log_rising_beta_[static_cast<size_t>(y)]; }
  double log_falling_ab(int y) const { return log_falling_ab_[static_cast<size_t>(y)]; }

  /// log C(i, j) for the generalized binomial over integers, from the
  /// factorial table.
  double log_choose(int i, int j) const {
    return log_factorial(i) - log_factorial(j) - log_factorial(i - j);
  }

  /// Shifted harmonic prefix sum_{i=1}^{y} 1 / (i + alpha + beta - 1),
  /// precomputed so solvers read H_{alpha+beta}(y) in O(1).
  double shifted_harmonic(int y) const { return harmonic_prefix_[static_cast<size_t>(y)]; }

 private:
  PriorParams prior_;
  int n_max_;
  std::vector<double> log_factorial_;
  std::vector<double> log_rising_alpha_;
  std::vector<double> log_rising_beta_;
  std::vector<double> log_falling_ab_;
  std::vector<double> harmonic_prefix_;
};

}  // namespace bonus

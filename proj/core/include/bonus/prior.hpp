#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace bonus {

/// Beta prior Be(alpha, beta) over the stronger player's per-round win
/// probability. Shape parameters below 1 are rejected rather than
/// extrapolated; the model is only defined for alpha, beta >= 1.
struct PriorParams {
  double alpha;
  double beta;

  PriorParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
      throw std::domain_error("prior shape parameters must be finite");
    }
    if (alpha < 1.0 || beta < 1.0) {
      throw std::domain_error("prior requires alpha >= 1 and beta >= 1, got alpha=" +
                              std::to_string(alpha) + " beta=" + std::to_string(beta));
    }
  }

  double sum() const { return alpha + beta; }

  /// Prior mean of the win probability, alpha / (alpha + beta).
  double mean() const { return alpha / (alpha + beta); }

  bool symmetric() const { return alpha == beta; }
};

/// Finite-mass stand-in for the certain case p fixed: Be(lambda*p, lambda*(1-p))
/// concentrates on p as lambda grows.
inline PriorParams certain_prior(double p, double lambda = 1e6) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("certain_prior requires p in (0,1)");
  }
  return PriorParams(lambda * p, lambda * (1.0 - p));
}

}  // namespace bonus

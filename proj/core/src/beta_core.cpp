#include "bonus/beta_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bonus {

namespace {

void check_state(int i, int j) {
  if (i < 0 || j < 0 || j > i) {
    throw std::domain_error("state (i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                            ") outside 0 <= j <= i");
  }
}

}  // namespace

double posterior_mean(const PriorParams& prior, int i, int j) {
  check_state(i, j);
  return (j + prior.alpha) / (i + prior.alpha + prior.beta);
}

double log_state_prob(const GammaTables& tables, int i, int j) {
  check_state(i, j);
  if (i > tables.n_max()) {
    throw std::domain_error("state index i=" + std::to_string(i) + " exceeds table n_max=" +
                            std::to_string(tables.n_max()));
  }
  // Pr[S_i=j] = C(i,j) * Gamma(alpha+j)/Gamma(alpha) * Gamma(beta+i-j)/Gamma(beta)
  //                    * Gamma(alpha+beta)/Gamma(alpha+beta+i)
  return tables.log_choose(i, j) + tables.log_rising_alpha(j) + tables.log_rising_beta(i - j) +
         tables.log_falling_ab(i);
}

double state_prob(const GammaTables& tables, int i, int j) {
  return std::exp(log_state_prob(tables, i, j));
}

double q_weight(const GammaTables& tables, int i, int j) {
  const PriorParams& prior = tables.prior();
  const double log_prob = log_state_prob(tables, i, j);
  const double total = i + prior.alpha + prior.beta;
  // 2 q (1-q) = 2 (j+alpha)(i-j+beta) / (i+alpha+beta)^2
  const double log_q_part =
      std::log(j + prior.alpha) + std::log(i - j + prior.beta) - 2.0 * std::log(total);
  return std::exp(std::log(2.0) + log_prob + log_q_part);
}

double q_weight_or_zero(const GammaTables& tables, int i, int j) {
  if (j < 0 || j > i) return 0.0;
  return q_weight(tables, i, j);
}

double harmonic_shifted(const PriorParams& prior, int n) {
  if (n < 2) {
    throw std::domain_error("harmonic_shifted requires n >= 2");
  }
  // Kahan summation: the asymptotic solvers sum up to ~10^6 terms.
  double sum = 0.0;
  double carry = 0.0;
  for (int i = 1; i <= n - 1; ++i) {
    const double term = 1.0 / (i + prior.alpha + prior.beta - 1.0) - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum;
}

double beta_density(const PriorParams& prior, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::domain_error("beta_density requires theta in [0,1]");
  }
  const double a = prior.alpha;
  const double b = prior.beta;
  const double log_norm = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  // alpha,beta >= 1 keeps both exponents >= 0, so the endpoint limits are
  // finite: x^0 at x=0 is 1, x^e with e>0 is 0.
  if (theta == 0.0) {
    return a == 1.0 ? std::exp((b - 1.0) * std::log1p(-theta) - log_norm) : 0.0;
  }
  if (theta == 1.0) {
    return b == 1.0 ? std::exp((a - 1.0) * std::log(theta) - log_norm) : 0.0;
  }
  return std::exp((a - 1.0) * std::log(theta) + (b - 1.0) * std::log1p(-theta) - log_norm);
}

}  // namespace bonus

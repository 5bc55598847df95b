#include "bonus/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bonus {

BeliefTable::BeliefTable(const PriorParams& prior, const MatchConfig& cfg)
    : n_(cfg.n), x_(cfg.x) {
  const int n = n_;
  values_.resize(offset(n - 1) + static_cast<size_t>(n));

  const double a = prior.alpha;
  const double b = prior.beta;

  // Row n-1 from the threshold rule: states below the live window are already
  // lost, states above are already won, and inside it the final round is
  // decisive so the belief equals the posterior mean of winning it.
  const int low = final_live_low(n, x_);
  const int high = final_live_high(n, x_);
  double* last = values_.data() + offset(n - 1);
  for (int j = 0; j <= n - 1; ++j) {
    if (j < low) {
      last[j] = 0.0;
    } else if (j > high) {
      last[j] = 1.0;
    } else {
      last[j] = (j + a) / (n - 1 + a + b);
    }
  }

  // Earlier rows by the martingale recursion b = q b^+ + (1-q) b^-.
  for (int i = n - 2; i >= 0; --i) {
    double* row = values_.data() + offset(i);
    const double* next = values_.data() + offset(i + 1);
    for (int j = 0; j <= i; ++j) {
      const double q = (j + a) / (i + a + b);
      row[j] = q * next[j + 1] + (1.0 - q) * next[j];
    }
  }
}

BeliefTable build_belief_table(const PriorParams& prior, const MatchConfig& cfg) {
  return BeliefTable(prior, cfg);
}

SurpriseBreakdown expected_surprise_exact(const PriorParams& prior, const GammaTables& tables,
                                          const MatchConfig& cfg) {
  const int n = cfg.n;
  const BeliefTable table(prior, cfg);

  SurpriseBreakdown out;
  out.per_round.assign(static_cast<size_t>(n), 0.0);

  // Rounds 1..n-1: surprise at state (i-1, j) is d * 2q(1-q) with d the
  // belief gap between the two successor states.
  for (int round = 1; round <= n - 1; ++round) {
    const int i = round - 1;
    double sum = 0.0;
    for (int j = 0; j <= i; ++j) {
      const double d = std::max(table.at(i + 1, j + 1) - table.at(i + 1, j), 0.0);
      if (d == 0.0) continue;
      const double q = posterior_mean(prior, i, j);
      sum += state_prob(tables, i, j) * d * 2.0 * q * (1.0 - q);
    }
    out.per_round[static_cast<size_t>(round - 1)] = sum;
  }

  // Final round: only states inside the live window move the belief, and
  // there the swing factor is exactly the Q-weight. Empty window (x=0)
  // contributes zero.
  const int low = std::max(final_live_low(n, cfg.x), 0);
  const int high = std::min(final_live_high(n, cfg.x), n - 1);
  double final_sum = 0.0;
  for (int j = low; j <= high; ++j) {
    final_sum += q_weight(tables, n - 1, j);
  }
  out.per_round[static_cast<size_t>(n - 1)] = final_sum;

  double total = 0.0;
  for (double v : out.per_round) total += v;
  out.total = total;
  return out;
}

SurpriseBreakdown expected_surprise_exact(const PriorParams& prior, const MatchConfig& cfg) {
  const GammaTables tables(prior, cfg.n > 1 ? cfg.n - 1 : 0);
  return expected_surprise_exact(prior, tables, cfg);
}

BonusSolution brute_force_optimal(const PriorParams& prior, int n) {
  if (n < 1) {
    throw InvalidConfigError("round count must be >= 1");
  }
  const GammaTables tables(prior, n > 1 ? n - 1 : 0);

  BonusSolution best;
  best.method = SolverMethod::BruteForce;
  bool first = true;
  double best_value = 0.0;
  for (int x = min_bonus(n); x <= n; x += 2) {
    const double value = expected_surprise_exact(prior, tables, MatchConfig(n, x)).total;
    if (first || value > best_value) {
      first = false;
      best_value = value;
      best.x_star = x;
    }
  }
  best.objective = best_value;
  return best;
}

double per_round_ratio(const PriorParams& prior, const MatchConfig& cfg, int i) {
  if (i < 1 || i + 1 >= cfg.n) {
    throw std::domain_error("per_round_ratio requires 1 <= i and i+1 < n, got i=" +
                            std::to_string(i));
  }
  const SurpriseBreakdown breakdown = expected_surprise_exact(prior, cfg);
  const double denom = breakdown.per_round[static_cast<size_t>(i)];
  if (denom == 0.0) {
    throw DegenerateInputError("round " + std::to_string(i + 1) +
                               " generates no expected surprise");
  }
  return breakdown.per_round[static_cast<size_t>(i - 1)] / denom;
}

}  // namespace bonus

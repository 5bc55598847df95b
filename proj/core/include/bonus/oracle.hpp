#pragma once

#include <vector>

#include "bonus/beta_core.hpp"
#include "bonus/errors.hpp"
#include "bonus/prior.hpp"
#include "bonus/solution.hpp"

namespace bonus {

/// Round count n and final-round bonus x. Admissible bonuses X(n) are the
/// integers 0 <= x <= n with the parity of n, which rules out ties.
struct MatchConfig {
  int n;
  int x;

  MatchConfig(int n_, int x_) : n(n_), x(x_) {
    if (n < 1) {
      throw InvalidConfigError("round count must be >= 1");
    }
    if (x < 0 || x > n || (x % 2) != (n % 2)) {
      throw InvalidConfigError("bonus x=" + std::to_string(x) +
                               " not in X(n) for n=" + std::to_string(n));
    }
  }
};

/// Smallest admissible bonus for n rounds (0 when n is even, 1 when odd).
inline int min_bonus(int n) { return n % 2; }

/// Inclusive state window [lowest, highest] of S_{n-1} for which the final
/// round still decides the match. Empty (first > second) when x = 0.
inline int final_live_low(int n, int x) { return (n - x) / 2; }
inline int final_live_high(int n, int x) { return (n + x - 2) / 2; }

/// Triangular table of conditional win probabilities
/// b[i][j] = Pr[stronger-prior player wins overall | S_i = j]
/// for 0 <= i <= n-1, 0 <= j <= i, computed by backward induction from the
/// final-round threshold rule. Full O(n^2) storage: the per-round surprise
/// decomposition and belief-curve export read every row.
class BeliefTable {
 public:
  BeliefTable(const PriorParams& prior, const MatchConfig& cfg);

  int rounds() const { return n_; }
  int bonus() const { return x_; }

  double at(int i, int j) const { return values_[offset(i) + static_cast<size_t>(j)]; }

 private:
  size_t offset(int i) const { return static_cast<size_t>(i) * (i + 1) / 2; }

  int n_;
  int x_;
  std::vector<double> values_;
};

/// Expected surprise per round; per_round[i] is the expected belief swing of
/// round i+1, and total is their sum.
struct SurpriseBreakdown {
  std::vector<double> per_round;
  double total = 0.0;
};

BeliefTable build_belief_table(const PriorParams& prior, const MatchConfig& cfg);

/// Exact expected overall surprise E[Delta(x)] and its per-round
/// decomposition, straight from the belief table and the state
/// probabilities. This is the ground-truth engine: it takes O(n^2) time and
/// uses no closed-form shortcuts, so it independently checks the fast solvers.
SurpriseBreakdown expected_surprise_exact(const PriorParams& prior, const MatchConfig& cfg);

/// Same, reusing caller-provided tables with n_max >= n-1 (brute-force
/// enumeration builds the tables once across all x).
SurpriseBreakdown expected_surprise_exact(const PriorParams& prior, const GammaTables& tables,
                                          const MatchConfig& cfg);

/// Enumerates every x in X(n) through the exact oracle and returns the
/// argmax; ties break toward the smaller bonus.
BonusSolution brute_force_optimal(const PriorParams& prior, int n);

/// Ratio E[Delta^i] / E[Delta^(i+1)] of consecutive per-round surprises,
/// read from the oracle decomposition. Requires 1 <= i and i+1 < n. Raises
/// DegenerateInputError when the denominator round generates no surprise
/// (possible only in degenerate configurations such as n=2, x=0).
double per_round_ratio(const PriorParams& prior, const MatchConfig& cfg, int i);

}  // namespace bonus

#pragma once

#include <cstdint>
#include <vector>

#include "bonus/oracle.hpp"
#include "bonus/prior.hpp"

namespace bonus {

/// Counter-based random stream: the sequence is a pure function of
/// (seed, trial index), so trials can run on any number of threads in any
/// order and still reproduce bit-identically.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double next_uniform();
  /// Standard normal (Box-Muller).
  double next_normal();
  /// Gamma(shape, 1) via Marsaglia-Tsang; requires shape >= 1.
  double next_gamma(double shape);
  /// Beta(a, b) as the two-Gamma-variate ratio.
  double next_beta(double a, double b);

 private:
  std::uint64_t state_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// One simulated match: the sampled skill, per-round winners, the belief
/// curve read from the oracle's table, and the realized surprise.
struct TrialOutcome {
  double p = 0.0;
  std::vector<int> winners;        // 1 if the alpha-player won round i+1
  std::vector<double> beliefs;     // B_0 .. B_n, with B_n in {0, 1}
  std::vector<double> increments;  // |B_i - B_{i-1}| for rounds 1..n
  double total_surprise = 0.0;
  bool alpha_player_wins = false;
};

/// Plays out a single match on the given belief table, reading randomness
/// from the (seed, trial) stream.
TrialOutcome run_trial(const PriorParams& prior, const BeliefTable& table, std::uint64_t seed,
                       std::uint64_t trial);

/// Monte-Carlo estimate of the expected surprise.
struct SimulationReport {
  long long trials = 0;
  double mean_surprise = 0.0;
  double std_error = 0.0;
  std::vector<double> mean_per_round;
  std::uint64_t seed = 0;
};

/// Runs `trials` independent matches (p resampled from the prior each trial)
/// and aggregates realized surprise. Deterministic given the seed; trials are
/// distributed over threads in fixed blocks and reduced pairwise, so the
/// result does not depend on scheduling.
SimulationReport simulate(const PriorParams& prior, const MatchConfig& cfg, long long trials,
                          std::uint64_t seed);

}  // namespace bonus

#include "bonus/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace bonus {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : state_(mix64(seed + kGolden) ^ mix64(trial * kGolden + 0x853C49E6748FEA9BULL)) {}

std::uint64_t TrialRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double TrialRng::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double TrialRng::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u1 = next_uniform();
  while (u1 == 0.0) u1 = next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double TrialRng::next_gamma(double shape) {
  if (!(shape >= 1.0)) {
    throw std::domain_error("next_gamma requires shape >= 1");
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z;
    double v;
    do {
      z = next_normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_uniform();
    if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double TrialRng::next_beta(double a, double b) {
  const double ga = next_gamma(a);
  const double gb = next_gamma(b);
  return ga / (ga + gb);
}

TrialOutcome run_trial(const PriorParams& prior, const BeliefTable& table, std::uint64_t seed,
                       std::uint64_t trial) {
  const int n = table.rounds();
  const int x = table.bonus();
  TrialRng rng(seed, trial);

  TrialOutcome out;
  out.p = rng.next_beta(prior.alpha, prior.beta);
  out.winners.resize(static_cast<size_t>(n));
  out.beliefs.resize(static_cast<size_t>(n) + 1);
  out.increments.resize(static_cast<size_t>(n));

  out.beliefs[0] = table.at(0, 0);
  int wins = 0;
  for (int round = 1; round <= n; ++round) {
    const int won = rng.next_uniform() < out.p ? 1 : 0;
    out.winners[static_cast<size_t>(round - 1)] = won;
    wins += won;
    double belief;
    if (round < n) {
      belief = table.at(round, wins);
    } else {
      // Point totals: wins-1's from rounds 1..n-1 plus the bonus; parity of x
      // guarantees no tie.
      const int early_wins = wins - out.winners[static_cast<size_t>(n - 1)];
      const int lead = 2 * early_wins - (n - 1);
      out.alpha_player_wins =
          out.winners[static_cast<size_t>(n - 1)] == 1 ? lead + x > 0 : lead - x > 0;
      belief = out.alpha_player_wins ? 1.0 : 0.0;
    }
    out.beliefs[static_cast<size_t>(round)] = belief;
    const double inc = std::fabs(belief - out.beliefs[static_cast<size_t>(round - 1)]);
    out.increments[static_cast<size_t>(round - 1)] = inc;
    out.total_surprise += inc;
  }
  return out;
}

namespace {

struct BlockAccum {
  double sum_total = 0.0;
  double sum_total_sq = 0.0;
  std::vector<double> per_round_sum;
};

// Pairwise reduction over block accumulators; associates identically no
// matter how many threads produced the blocks.
BlockAccum reduce_blocks(const std::vector<BlockAccum>& blocks, size_t lo, size_t hi) {
  if (hi - lo == 1) return blocks[lo];
  const size_t mid = lo + (hi - lo) / 2;
  BlockAccum left = reduce_blocks(blocks, lo, mid);
  const BlockAccum right = reduce_blocks(blocks, mid, hi);
  left.sum_total += right.sum_total;
  left.sum_total_sq += right.sum_total_sq;
  for (size_t r = 0; r < left.per_round_sum.size(); ++r) {
    left.per_round_sum[r] += right.per_round_sum[r];
  }
  return left;
}

}  // namespace

SimulationReport simulate(const PriorParams& prior, const MatchConfig& cfg, long long trials,
                          std::uint64_t seed) {
  if (trials < 1) {
    throw InvalidConfigError("simulate requires trials >= 1");
  }
  const BeliefTable table(prior, cfg);
  const int n = cfg.n;

  constexpr long long kBlock = 4096;
  const size_t num_blocks = static_cast<size_t>((trials + kBlock - 1) / kBlock);
  std::vector<BlockAccum> blocks(num_blocks);

  auto run_block = [&](size_t block) {
    BlockAccum acc;
    acc.per_round_sum.assign(static_cast<size_t>(n), 0.0);
    const long long begin = static_cast<long long>(block) * kBlock;
    const long long end = std::min(begin + kBlock, trials);
    for (long long t = begin; t < end; ++t) {
      const TrialOutcome trial = run_trial(prior, table, seed, static_cast<std::uint64_t>(t));
      acc.sum_total += trial.total_surprise;
      acc.sum_total_sq += trial.total_surprise * trial.total_surprise;
      for (int r = 0; r < n; ++r) {
        acc.per_round_sum[static_cast<size_t>(r)] += trial.increments[static_cast<size_t>(r)];
      }
    }
    blocks[block] = std::move(acc);
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const size_t workers = std::min<size_t>(num_blocks, hw == 0 ? 1 : hw);
  if (workers <= 1) {
    for (size_t b = 0; b < num_blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (size_t b = w; b < num_blocks; b += workers) run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  const BlockAccum total = reduce_blocks(blocks, 0, num_blocks);
  const double count = static_cast<double>(trials);

  SimulationReport report;
  report.trials = trials;
  report.seed = seed;
  report.mean_surprise = total.sum_total / count;
  report.mean_per_round.resize(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    report.mean_per_round[static_cast<size_t>(r)] = total.per_round_sum[static_cast<size_t>(r)] / count;
  }
  if (trials > 1) {
    const double variance =
        (total.sum_total_sq - count * report.mean_surprise * report.mean_surprise) / (count - 1.0);
    report.std_error = std::sqrt(std::max(variance, 0.0) / count);
  }
  return report;
}

}  // namespace bonus

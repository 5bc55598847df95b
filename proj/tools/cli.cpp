#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <thread>

#include "bonus/asymptotic.hpp"
#include "bonus/beta_core.hpp"
#include "bonus/errors.hpp"
#include "bonus/oracle.hpp"
#include "bonus/prior.hpp"
#include "bonus/simulate.hpp"
#include "bonus/solver.hpp"

namespace bonus::cli {

namespace {

using nlohmann::ordered_json;

// The oracle path stores the full O(n^2) belief table; past this point the
// O(n) scan is the right tool.
constexpr int kOracleRoundCap = 2000;

/// Shortest decimal representation that round-trips to the same double; keeps
/// CSV output diff-able and exactly re-parseable.
std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line.push_back(',');
    line += cells[i];
  }
  line.push_back('\n');
  return line;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "stdout" || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) {
    throw std::runtime_error("cannot write output file: " + path);
  }
}

struct CommonFlags {
  std::string format;  // per-command default filled in before parsing
  std::string output = "stdout";
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, const std::string& default_format) {
  flags.format = default_format;
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", flags.output, "Output path or 'stdout'")->capture_default_str();
}

ordered_json solution_to_json(const BonusSolution& solution) {
  ordered_json j;
  j["x_star"] = solution.x_star;
  if (solution.x_tilde) j["x_tilde"] = *solution.x_tilde;
  j["method"] = to_string(solution.method);
  if (solution.objective) j["objective"] = *solution.objective;
  return j;
}

std::string solution_to_csv(const BonusSolution& solution) {
  std::string text = csv_join({"x_star", "x_tilde", "method", "objective"});
  text += csv_join({std::to_string(solution.x_star),
                    solution.x_tilde ? format_double(*solution.x_tilde) : "",
                    to_string(solution.method),
                    solution.objective ? format_double(*solution.objective) : ""});
  return text;
}

// ---------------------------------------------------------------------------
// optimal

struct OptimalArgs {
  CommonFlags common;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> p;
  int n = 0;
  std::string method = "auto";
};

BonusSolution solve_optimal(const OptimalArgs& args) {
  const bool have_prior = args.alpha.has_value() || args.beta.has_value();
  if (args.p && have_prior) {
    throw InvalidConfigError("--p cannot be combined with --alpha/--beta");
  }
  if (!args.p && !(args.alpha && args.beta)) {
    throw InvalidConfigError("provide either --alpha and --beta, or --p");
  }

  std::string method = args.method;
  if (method == "auto") {
    if (args.p) {
      method = "certain";
    } else if (args.n > 1 && *args.alpha == *args.beta) {
      method = "symmetric";
    } else {
      method = "linear";
    }
  }

  if (method == "certain") {
    if (!args.p) {
      throw InvalidConfigError("--method certain requires --p");
    }
    if (!(*args.p > 0.0 && *args.p < 1.0)) {
      throw InvalidConfigError("--p must lie in (0,1)");
    }
    const double p = *args.p < 0.5 ? 1.0 - *args.p : *args.p;
    BonusSolution solution = certain_optimal(CertainParams(p, args.n));
    solution.swapped = *args.p < 0.5;
    return solution;
  }

  if (args.p) {
    throw InvalidConfigError("--p is only valid with --method certain (or auto)");
  }
  const PriorParams prior(*args.alpha, *args.beta);

  if (method == "oracle") {
    if (args.n > kOracleRoundCap) {
      throw InvalidConfigError("--method oracle is capped at n <= " +
                               std::to_string(kOracleRoundCap) +
                               "; use --method linear for larger n");
    }
    return brute_force_optimal(prior, args.n);
  }
  if (method == "symmetric") {
    if (prior.alpha != prior.beta) {
      throw InvalidConfigError("--method symmetric requires --alpha == --beta");
    }
    BonusSolution solution = symmetric_optimal(prior.alpha, args.n);
    const GammaTables tables(prior, args.n - 1);
    solution.objective =
        expected_surprise_closed_form(tables, MatchConfig(args.n, solution.x_star));
    return solution;
  }
  return linear_scan_optimal(prior, args.n);
}

int run_optimal(const OptimalArgs& args, std::ostream& out) {
  const BonusSolution solution = solve_optimal(args);
  if (args.common.format == "json") {
    write_output(args.common.output, solution_to_json(solution).dump() + "\n", out);
  } else {
    write_output(args.common.output, solution_to_csv(solution), out);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// curve

struct CurveArgs {
  CommonFlags common;
  double alpha = 0.0;
  double beta = 0.0;
  int n = 0;
};

int run_curve(const CurveArgs& args, std::ostream& out) {
  if (args.n > kOracleRoundCap) {
    throw InvalidConfigError("curve evaluates the exact oracle and is capped at n <= " +
                             std::to_string(kOracleRoundCap) +
                             "; use `optimal --method linear` for larger n");
  }
  const PriorParams prior(args.alpha, args.beta);
  const GammaTables tables(prior, args.n > 1 ? args.n - 1 : 0);

  std::vector<int> xs;
  std::vector<SurpriseBreakdown> rows;
  size_t best_index = 0;
  for (int x = min_bonus(args.n); x <= args.n; x += 2) {
    xs.push_back(x);
    rows.push_back(expected_surprise_exact(prior, tables, MatchConfig(args.n, x)));
    if (rows.back().total > rows[best_index].total) {
      best_index = rows.size() - 1;
    }
  }

  if (args.common.format == "json") {
    ordered_json doc = ordered_json::array();
    for (size_t i = 0; i < xs.size(); ++i) {
      ordered_json row;
      row["x"] = xs[i];
      row["expected_surprise"] = rows[i].total;
      row["per_round"] = rows[i].per_round;
      row["optimal"] = i == best_index;
      doc.push_back(std::move(row));
    }
    write_output(args.common.output, doc.dump() + "\n", out);
    return 0;
  }

  std::vector<std::string> header = {"x", "expected_surprise"};
  for (int r = 1; r <= args.n; ++r) header.push_back("per_round_" + std::to_string(r));
  header.push_back("optimal");
  std::string text = csv_join(header);
  for (size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::string> cells = {std::to_string(xs[i]), format_double(rows[i].total)};
    for (double v : rows[i].per_round) cells.push_back(format_double(v));
    cells.push_back(i == best_index ? "1" : "0");
    text += csv_join(cells);
  }
  write_output(args.common.output, text, out);
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  CommonFlags common;
  int n = 0;
  std::string axes = "alpha-beta";
  std::string mode = "finite";
  int resolution = 8;
  std::optional<double> axis1_min;
  std::optional<double> axis1_max;
  std::optional<double> axis2_min;
  std::optional<double> axis2_max;
};

struct SweepCell {
  double axis1 = 0.0;
  double axis2 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> value;  // x_star (finite) or mu_star (asymptotic)
  std::string status = "ok";
};

int run_sweep(const SweepArgs& args, std::ostream& out) {
  if (args.resolution < 1) {
    throw InvalidConfigError("--resolution must be >= 1");
  }
  const bool skew_axes = args.axes == "skew-uncertainty";
  const std::string axis1_name = skew_axes ? "skewness" : "alpha";
  const std::string axis2_name = skew_axes ? "uncertainty" : "beta";
  const double a1_min = args.axis1_min.value_or(skew_axes ? 0.0 : 1.0);
  const double a1_max = args.axis1_max.value_or(skew_axes ? 1.0 : 8.0);
  const double a2_min = args.axis2_min.value_or(skew_axes ? 0.0 : 1.0);
  const double a2_max = args.axis2_max.value_or(skew_axes ? 1.0 : 8.0);
  if (skew_axes && !(a1_min >= 0.0 && a1_max <= 1.0 && a2_min >= 0.0 && a2_max <= 1.0)) {
    throw InvalidConfigError(
        "skew-uncertainty axes require skewness in [0,1) and uncertainty in (0,1]");
  }

  const int res = args.resolution;
  // alpha-beta axes sample the closed interval; skewness is half-open at 1
  // and uncertainty half-open at 0, so those grids step off the excluded
  // endpoint.
  const auto axis1_value = [&](int k) {
    if (skew_axes) return a1_min + (a1_max - a1_min) * k / res;
    return res == 1 ? a1_min : a1_min + (a1_max - a1_min) * k / (res - 1);
  };
  const auto axis2_value = [&](int k) {
    if (skew_axes) return a2_min + (a2_max - a2_min) * (k + 1) / res;
    return res == 1 ? a2_min : a2_min + (a2_max - a2_min) * k / (res - 1);
  };

  std::vector<SweepCell> cells(static_cast<size_t>(res) * static_cast<size_t>(res));
  const auto fill_cell = [&](size_t index) {
    SweepCell& cell = cells[index];
    const int k1 = static_cast<int>(index) / res;
    const int k2 = static_cast<int>(index) % res;
    cell.axis1 = axis1_value(k1);
    cell.axis2 = axis2_value(k2);
    if (skew_axes) {
      cell.alpha = (1.0 + cell.axis1) / (2.0 * cell.axis2);
      cell.beta = (1.0 - cell.axis1) / (2.0 * cell.axis2);
    } else {
      cell.alpha = cell.axis1;
      cell.beta = cell.axis2;
    }
    if (cell.alpha < 1.0 || cell.beta < 1.0) {
      cell.status = "out_of_domain";
      return;
    }
    try {
      const PriorParams prior(cell.alpha, cell.beta);
      if (args.mode == "finite") {
        cell.value = linear_scan_optimal(prior, args.n).x_star;
      } else {
        cell.value = asymptotic_optimal(prior, args.n).mu_star;
      }
    } catch (const BracketFailureError&) {
      cell.status = "bracket_failure";
    } catch (const std::domain_error&) {
      cell.status = "out_of_domain";
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const size_t workers = std::min<size_t>(cells.size(), hw == 0 ? 1 : hw);
  if (workers <= 1) {
    for (size_t i = 0; i < cells.size(); ++i) fill_cell(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (size_t i = w; i < cells.size(); i += workers) fill_cell(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  const std::string value_name = args.mode == "finite" ? "x_star" : "mu_star";
  if (args.common.format == "json") {
    ordered_json doc;
    doc["axis1"] = {{"name", axis1_name}, {"min", a1_min}, {"max", a1_max}};
    doc["axis2"] = {{"name", axis2_name}, {"min", a2_min}, {"max", a2_max}};
    doc["resolution"] = res;
    doc["mode"] = args.mode;
    ordered_json rows = ordered_json::array();
    for (const SweepCell& cell : cells) {
      ordered_json row;
      row["axis1"] = cell.axis1;
      row["axis2"] = cell.axis2;
      row["alpha"] = cell.alpha;
      row["beta"] = cell.beta;
      if (cell.value) {
        if (args.mode == "finite") {
          row[value_name] = static_cast<int>(*cell.value);
        } else {
          row[value_name] = *cell.value;
        }
      }
      row["status"] = cell.status;
      rows.push_back(std::move(row));
    }
    doc["cells"] = std::move(rows);
    write_output(args.common.output, doc.dump() + "\n", out);
    return 0;
  }

  // On raw alpha-beta axes the coordinates are the shape parameters, so the
  // CSV keeps a single pair of columns.
  std::string text =
      skew_axes ? csv_join({axis1_name, axis2_name, "alpha", "beta", value_name, "status"})
                : csv_join({"alpha", "beta", value_name, "status"});
  for (const SweepCell& cell : cells) {
    std::string value;
    if (cell.value) {
      value = args.mode == "finite" ? std::to_string(static_cast<int>(*cell.value))
                                    : format_double(*cell.value);
    }
    std::vector<std::string> row;
    if (skew_axes) {
      row = {format_double(cell.axis1), format_double(cell.axis2), format_double(cell.alpha),
             format_double(cell.beta), value, cell.status};
    } else {
      row = {format_double(cell.alpha), format_double(cell.beta), value, cell.status};
    }
    text += csv_join(row);
  }
  write_output(args.common.output, text, out);
  return 0;
}

// ---------------------------------------------------------------------------
// belief

struct BeliefArgs {
  CommonFlags common;
  double alpha = 0.0;
  double beta = 0.0;
  int n = 0;
  int x = 0;
  std::uint64_t seed = 0;
};

int run_belief(const BeliefArgs& args, std::ostream& out) {
  const PriorParams prior(args.alpha, args.beta);
  const MatchConfig cfg(args.n, args.x);
  const BeliefTable table(prior, cfg);
  const TrialOutcome trial = run_trial(prior, table, args.seed, 0);

  if (args.common.format == "json") {
    ordered_json doc = ordered_json::array();
    for (int round = 0; round <= args.n; ++round) {
      ordered_json row;
      row["round"] = round;
      row["winner"] =
          round == 0 ? "-" : (trial.winners[static_cast<size_t>(round - 1)] ? "A" : "B");
      row["belief"] = trial.beliefs[static_cast<size_t>(round)];
      row["surprise_increment"] =
          round == 0 ? 0.0 : trial.increments[static_cast<size_t>(round - 1)];
      doc.push_back(std::move(row));
    }
    write_output(args.common.output, doc.dump() + "\n", out);
    return 0;
  }

  std::string text = csv_join({"round", "winner", "belief", "surprise_increment"});
  for (int round = 0; round <= args.n; ++round) {
    text += csv_join(
        {std::to_string(round),
         round == 0 ? "-" : (trial.winners[static_cast<size_t>(round - 1)] ? "A" : "B"),
         format_double(trial.beliefs[static_cast<size_t>(round)]),
         round == 0 ? "0" : format_double(trial.increments[static_cast<size_t>(round - 1)])});
  }
  write_output(args.common.output, text, out);
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  CommonFlags common;
  double alpha = 0.0;
  double beta = 0.0;
  int n = 0;
  int x = 0;
  long long trials = 0;
  std::uint64_t seed = 0;
};

int run_simulate(const SimulateArgs& args, std::ostream& out) {
  const PriorParams prior(args.alpha, args.beta);
  const SimulationReport report =
      simulate(prior, MatchConfig(args.n, args.x), args.trials, args.seed);

  if (args.common.format == "json") {
    ordered_json doc;
    doc["trials"] = report.trials;
    doc["mean_surprise"] = report.mean_surprise;
    doc["std_error"] = report.std_error;
    doc["mean_per_round"] = report.mean_per_round;
    doc["seed"] = report.seed;
    write_output(args.common.output, doc.dump() + "\n", out);
    return 0;
  }

  std::vector<std::string> header = {"trials", "mean_surprise", "std_error", "seed"};
  for (int r = 1; r <= args.n; ++r) header.push_back("mean_per_round_" + std::to_string(r));
  std::vector<std::string> cells = {std::to_string(report.trials),
                                    format_double(report.mean_surprise),
                                    format_double(report.std_error), std::to_string(report.seed)};
  for (double v : report.mean_per_round) cells.push_back(format_double(v));
  write_output(args.common.output, csv_join(header) + csv_join(cells), out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal final-round bonus for two-player competitions under a Beta prior"};
  app.require_subcommand(1);

  OptimalArgs optimal_args;
  CLI::App* optimal_cmd = app.add_subcommand(
      "optimal", "Compute the surprise-maximizing bonus for one configuration");
  optimal_cmd->add_option("--alpha", optimal_args.alpha, "Prior shape alpha (>= 1)");
  optimal_cmd->add_option("--beta", optimal_args.beta, "Prior shape beta (>= 1)");
  optimal_cmd->add_option("--p", optimal_args.p, "Certain-case win probability");
  optimal_cmd->add_option("--n", optimal_args.n, "Round count")->required();
  optimal_cmd->add_option("--method", optimal_args.method, "Solver selection")
      ->check(CLI::IsMember({"auto", "oracle", "linear", "symmetric", "certain"}))
      ->capture_default_str();
  add_common_flags(optimal_cmd, optimal_args.common, "json");

  CurveArgs curve_args;
  CLI::App* curve_cmd =
      app.add_subcommand("curve", "Exact expected surprise for every admissible bonus");
  curve_cmd->add_option("--alpha", curve_args.alpha, "Prior shape alpha")->required();
  curve_cmd->add_option("--beta", curve_args.beta, "Prior shape beta")->required();
  curve_cmd->add_option("--n", curve_args.n, "Round count")->required();
  add_common_flags(curve_cmd, curve_args.common, "csv");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Grid of optimal bonuses over a prior-parameter plane");
  sweep_cmd->add_option("--n", sweep_args.n, "Round count")->required();
  sweep_cmd->add_option("--axes", sweep_args.axes, "Axis parameterization")
      ->check(CLI::IsMember({"alpha-beta", "skew-uncertainty"}))
      ->capture_default_str();
  sweep_cmd->add_option("--mode", sweep_args.mode, "Solver family")
      ->check(CLI::IsMember({"finite", "asymptotic"}))
      ->capture_default_str();
  sweep_cmd->add_option("--resolution", sweep_args.resolution, "Grid points per axis")
      ->capture_default_str();
  sweep_cmd->add_option("--axis1-min", sweep_args.axis1_min, "First-axis lower bound");
  sweep_cmd->add_option("--axis1-max", sweep_args.axis1_max, "First-axis upper bound");
  sweep_cmd->add_option("--axis2-min", sweep_args.axis2_min, "Second-axis lower bound");
  sweep_cmd->add_option("--axis2-max", sweep_args.axis2_max, "Second-axis upper bound");
  add_common_flags(sweep_cmd, sweep_args.common, "csv");

  BeliefArgs belief_args;
  CLI::App* belief_cmd =
      app.add_subcommand("belief", "Belief curve of one seeded simulated match");
  belief_cmd->add_option("--alpha", belief_args.alpha, "Prior shape alpha")->required();
  belief_cmd->add_option("--beta", belief_args.beta, "Prior shape beta")->required();
  belief_cmd->add_option("--n", belief_args.n, "Round count")->required();
  belief_cmd->add_option("--x", belief_args.x, "Final-round bonus")->required();
  belief_cmd->add_option("--seed", belief_args.seed, "Random seed")->capture_default_str();
  add_common_flags(belief_cmd, belief_args.common, "csv");

  SimulateArgs simulate_args;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Monte-Carlo estimate of the expected surprise");
  simulate_cmd->add_option("--alpha", simulate_args.alpha, "Prior shape alpha")->required();
  simulate_cmd->add_option("--beta", simulate_args.beta, "Prior shape beta")->required();
  simulate_cmd->add_option("--n", simulate_args.n, "Round count")->required();
  simulate_cmd->add_option("--x", simulate_args.x, "Final-round bonus")->required();
  simulate_cmd->add_option("--trials", simulate_args.trials, "Trial count")->required();
  simulate_cmd->add_option("--seed", simulate_args.seed, "Random seed")->capture_default_str();
  add_common_flags(simulate_cmd, simulate_args.common, "json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (optimal_cmd->parsed()) return run_optimal(optimal_args, out);
    if (curve_cmd->parsed()) return run_curve(curve_args, out);
    if (sweep_cmd->parsed()) return run_sweep(sweep_args, out);
    if (belief_cmd->parsed()) return run_belief(belief_args, out);
    if (simulate_cmd->parsed()) return run_simulate(simulate_args, out);
  } catch (const BracketFailureError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const InvalidConfigError& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  err << "no subcommand selected\n";
  return 2;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> forwarded;
  forwarded.reserve(static_cast<size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) forwarded.emplace_back(argv[i]);
  return run(forwarded, out, err);
}

}  // namespace bonus::cli

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bonus/oracle.hpp"
#include "bonus/simulate.hpp"
#include "bonus/solver.hpp"
#include "cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = bonus::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream line_stream(line);
    while (std::getline(line_stream, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("optimal: auto picks the right solver") {
  const CliResult uniform = run_cli({"optimal", "--alpha", "1", "--beta", "1", "--n", "3"});
  REQUIRE(uniform.code == 0);
  const json u = json::parse(uniform.out);
  CHECK(u["x_star"] == 1);
  CHECK(u["method"] == "symmetric_closed_form");
  CHECK(u.contains("x_tilde"));
  CHECK(u.contains("objective"));

  const CliResult certain = run_cli({"optimal", "--p", "0.7", "--n", "20"});
  REQUIRE(certain.code == 0);
  const json c = json::parse(certain.out);
  CHECK(c["x_star"] == 8);
  CHECK(c["method"] == "certain_root");

  const CliResult skew = run_cli({"optimal", "--alpha", "2", "--beta", "1", "--n", "8"});
  REQUIRE(skew.code == 0);
  CHECK(json::parse(skew.out)["method"] == "linear_scan");
}

TEST_CASE("optimal: relabeling symmetry") {
  const CliResult ab = run_cli({"optimal", "--alpha", "1", "--beta", "2", "--n", "5"});
  const CliResult ba = run_cli({"optimal", "--alpha", "2", "--beta", "1", "--n", "5"});
  REQUIRE(ab.code == 0);
  REQUIRE(ba.code == 0);
  CHECK(json::parse(ab.out)["x_star"] == json::parse(ba.out)["x_star"]);
}

TEST_CASE("optimal: flag validation") {
  CHECK(run_cli({"optimal", "--p", "0.7", "--alpha", "1", "--n", "20"}).code == 2);
  CHECK(run_cli({"optimal", "--n", "20"}).code == 2);
  CHECK(run_cli({"optimal", "--alpha", "1", "--n", "3"}).code == 2);
  CHECK(run_cli({"optimal", "--alpha", "0.2", "--beta", "1", "--n", "3"}).code == 2);
  CHECK(run_cli({"optimal", "--p", "1.5", "--n", "10"}).code == 2);
  CHECK(run_cli({"optimal", "--alpha", "1", "--beta", "1", "--n", "3", "--method", "certain"}).code ==
        2);
  CHECK(run_cli({"optimal", "--alpha", "2", "--beta", "1", "--n", "3", "--method", "symmetric"})
            .code == 2);
  CHECK(run_cli({"optimal", "--alpha", "1", "--beta", "1", "--n", "5000", "--method", "oracle"})
            .code == 2);
  CHECK(run_cli({"nonsense"}).code == 2);
}

TEST_CASE("optimal: oracle and linear methods agree") {
  for (const char* alpha : {"1", "1.5", "3"}) {
    for (const char* beta : {"1", "1.5"}) {
      for (const char* n : {"2", "7", "16"}) {
        const CliResult oracle = run_cli(
            {"optimal", "--alpha", alpha, "--beta", beta, "--n", n, "--method", "oracle"});
        const CliResult linear = run_cli(
            {"optimal", "--alpha", alpha, "--beta", beta, "--n", n, "--method", "linear"});
        REQUIRE(oracle.code == 0);
        REQUIRE(linear.code == 0);
        CHECK(json::parse(oracle.out)["x_star"] == json::parse(linear.out)["x_star"]);
      }
    }
  }
}

TEST_CASE("optimal: numeric failure exits with code 3") {
  // at this scale F underflows to zero at both bracket ends
  const CliResult result = run_cli({"optimal", "--p", "0.99", "--n", "100000"});
  CHECK(result.code == 3);
  CHECK(result.err.find("numeric failure") != std::string::npos);
}

TEST_CASE("curve: rows, annotation, and round-trip formatting") {
  const CliResult result = run_cli({"curve", "--alpha", "1", "--beta", "1", "--n", "3"});
  REQUIRE(result.code == 0);
  const auto rows = parse_csv(result.out);
  REQUIRE(rows.size() == 3);  // header + x=1 + x=3
  CHECK(rows[0][0] == "x");
  CHECK(rows[0].back() == "optimal");
  CHECK(rows[1][0] == "1");
  CHECK(rows[1].back() == "1");
  CHECK(rows[2][0] == "3");
  CHECK(rows[2].back() == "0");

  // shortest round-trip: parsing back reproduces the doubles exactly
  const bonus::PriorParams prior(1, 1);
  const double expected1 = bonus::expected_surprise_exact(prior, bonus::MatchConfig(3, 1)).total;
  const double expected3 = bonus::expected_surprise_exact(prior, bonus::MatchConfig(3, 3)).total;
  CHECK(std::strtod(rows[1][1].c_str(), nullptr) == expected1);
  CHECK(std::strtod(rows[2][1].c_str(), nullptr) == expected3);

  SUBCASE("LF line endings") {
    CHECK(result.out.find('\r') == std::string::npos);
    CHECK(result.out.back() == '\n');
  }

  SUBCASE("json variant") {
    const CliResult js =
        run_cli({"curve", "--alpha", "1", "--beta", "1", "--n", "3", "--format", "json"});
    REQUIRE(js.code == 0);
    const json doc = json::parse(js.out);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 2);
    CHECK(doc[0]["x"] == 1);
    CHECK(doc[0]["optimal"] == true);
    CHECK(doc[0]["expected_surprise"] == expected1);
    CHECK(doc[0]["per_round"].size() == 3);
  }
}

TEST_CASE("curve: single-round match") {
  const CliResult result = run_cli({"curve", "--alpha", "2", "--beta", "1", "--n", "1"});
  REQUIRE(result.code == 0);
  const auto rows = parse_csv(result.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "1");
}

TEST_CASE("curve: refuses oversized oracle runs with a hint") {
  const CliResult result = run_cli({"curve", "--alpha", "1", "--beta", "1", "--n", "2001"});
  CHECK(result.code == 2);
  CHECK(result.err.find("linear") != std::string::npos);
}

TEST_CASE("curve: near-certain 20-round match peaks well above trivial bonuses") {
  const CliResult result =
      run_cli({"curve", "--alpha", "700000", "--beta", "300000", "--n", "20"});
  REQUIRE(result.code == 0);
  const auto rows = parse_csv(result.out);
  double at0 = 0.0, at8 = 0.0, at20 = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    const double value = std::strtod(rows[i][1].c_str(), nullptr);
    if (rows[i][0] == "0") at0 = value;
    if (rows[i][0] == "8") {
      at8 = value;
      CHECK(rows[i].back() == "1");
    }
    if (rows[i][0] == "20") at20 = value;
  }
  CHECK(at8 >= 1.5 * at0);
  CHECK(at8 >= 1.5 * at20);
}

TEST_CASE("sweep: finite mode regions and determinism") {
  const CliResult result = run_cli({"sweep", "--n", "5", "--resolution", "8"});
  REQUIRE(result.code == 0);
  const auto rows = parse_csv(result.out);
  REQUIRE(rows.size() == 65);
  CHECK(rows[0] == std::vector<std::string>{"alpha", "beta", "x_star", "status"});
  std::set<std::string> seen;
  for (size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i][3] == "ok");
    seen.insert(rows[i][2]);
  }
  CHECK(seen.count("1") == 1);
  CHECK(seen.count("3") == 1);
  CHECK(seen.count("5") == 1);

  const CliResult again = run_cli({"sweep", "--n", "5", "--resolution", "8"});
  CHECK(result.out == again.out);
}

TEST_CASE("sweep: asymptotic diagonal matches the symmetric closed form") {
  const CliResult result =
      run_cli({"sweep", "--n", "10000", "--mode", "asymptotic", "--resolution", "1",
               "--axis1-min", "2", "--axis2-min", "2"});
  REQUIRE(result.code == 0);
  const auto rows = parse_csv(result.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][2] == "mu_star");
  const double mu = std::strtod(rows[1][2].c_str(), nullptr);
  const double harmonic = bonus::harmonic_shifted(bonus::PriorParams(2, 2), 10000);
  CHECK(mu == doctest::Approx(1.0 / (4.0 * harmonic - 1.0)).epsilon(1e-12));
}

TEST_CASE("sweep: degenerate single cell equals cmd_optimal") {
  const CliResult sweep = run_cli({"sweep", "--n", "7", "--resolution", "1", "--axis1-min", "2",
                                   "--axis2-min", "1"});
  REQUIRE(sweep.code == 0);
  const auto rows = parse_csv(sweep.out);
  const CliResult optimal = run_cli({"optimal", "--alpha", "2", "--beta", "1", "--n", "7"});
  const json solution = json::parse(optimal.out);
  CHECK(rows[1][2] == std::to_string(solution["x_star"].get<int>()));
}

TEST_CASE("sweep: skew-uncertainty marks infeasible cells out of domain") {
  const CliResult result =
      run_cli({"sweep", "--n", "9", "--axes", "skew-uncertainty", "--resolution", "4"});
  REQUIRE(result.code == 0);
  const auto rows = parse_csv(result.out);
  REQUIRE(rows.size() == 17);
  CHECK(rows[0][0] == "skewness");
  CHECK(rows[0][1] == "uncertainty");
  int out_of_domain = 0;
  for (size_t i = 1; i < rows.size(); ++i) {
    const double alpha = std::strtod(rows[i][2].c_str(), nullptr);
    const double beta = std::strtod(rows[i][3].c_str(), nullptr);
    if (rows[i][5] == "out_of_domain") {
      ++out_of_domain;
      CHECK(rows[i][4].empty());
      CHECK((alpha < 1.0 || beta < 1.0));
    } else {
      CHECK(alpha >= 1.0);
      CHECK(beta >= 1.0);
      CHECK(alpha >= beta);
    }
  }
  CHECK(out_of_domain > 0);
}

TEST_CASE("belief: trace ties out with the simulator") {
  const CliResult result =
      run_cli({"belief", "--alpha", "1", "--beta", "1", "--n", "5", "--x", "1", "--seed", "7"});
  REQUIRE(result.code == 0);
  const auto rows = parse_csv(result.out);
  REQUIRE(rows.size() == 7);  // header + rounds 0..5

  const bonus::PriorParams prior(1, 1);
  const bonus::BeliefTable table(prior, bonus::MatchConfig(5, 1));
  double total = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    total += std::strtod(rows[i][3].c_str(), nullptr);
  }
  const bonus::SimulationReport report =
      bonus::simulate(prior, bonus::MatchConfig(5, 1), 1, 7);
  CHECK(total == doctest::Approx(report.mean_surprise).epsilon(1e-12));

  // final belief resolves to 0 or 1
  const std::string final_belief = rows.back()[2];
  CHECK((final_belief == "0" || final_belief == "1"));

  SUBCASE("single round emits prior and outcome") {
    const CliResult single =
        run_cli({"belief", "--alpha", "2", "--beta", "2", "--n", "1", "--x", "1", "--seed", "3"});
    REQUIRE(single.code == 0);
    const auto single_rows = parse_csv(single.out);
    REQUIRE(single_rows.size() == 3);
    CHECK(single_rows[1][2] == "0.5");
    const std::string outcome = single_rows[2][2];
    CHECK((outcome == "0" || outcome == "1"));
  }

  SUBCASE("belief values come from the table") {
    int wins = 0;
    for (size_t i = 2; i + 1 < rows.size(); ++i) {  // rounds 1..n-1
      wins += rows[i][1] == "A" ? 1 : 0;
      const double belief = std::strtod(rows[i][2].c_str(), nullptr);
      CHECK(belief == table.at(static_cast<int>(i) - 1, wins));
    }
  }

  CHECK(run_cli({"belief", "--alpha", "1", "--beta", "1", "--n", "5", "--x", "2", "--seed", "1"})
            .code == 2);
}

TEST_CASE("simulate: deterministic JSON and validation") {
  const std::vector<std::string> args = {"simulate", "--alpha", "1",      "--beta", "1", "--n",
                                         "2",        "--x",     "0",      "--trials", "1000",
                                         "--seed",   "7"};
  const CliResult first = run_cli(args);
  const CliResult second = run_cli(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  const json doc = json::parse(first.out);
  CHECK(doc["trials"] == 1000);
  CHECK(doc["seed"] == 7);
  CHECK(doc["mean_per_round"].size() == 2);
  CHECK(doc["mean_surprise"] == 0.5);

  CHECK(run_cli({"simulate", "--alpha", "1", "--beta", "1", "--n", "2", "--x", "1", "--trials",
                 "10", "--seed", "1"})
            .code == 2);
  CHECK(run_cli({"simulate", "--alpha", "1", "--beta", "1", "--n", "2", "--x", "0", "--trials",
                 "0", "--seed", "1"})
            .code == 2);
}

TEST_CASE("output redirection writes the same bytes to a file") {
  const std::string path = "cli_test_output.csv";
  const CliResult direct = run_cli({"curve", "--alpha", "1", "--beta", "1", "--n", "5"});
  const CliResult redirected =
      run_cli({"curve", "--alpha", "1", "--beta", "1", "--n", "5", "--output", path});
  REQUIRE(redirected.code == 0);
  CHECK(redirected.out.empty());
  std::ifstream file(path, std::ios::binary);
  std::stringstream content;
  content << file.rdbuf();
  CHECK(content.str() == direct.out);
  std::remove(path.c_str());
}

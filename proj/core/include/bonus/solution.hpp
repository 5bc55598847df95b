#pragma once

#include <optional>
#include <string>

namespace bonus {

/// Which solver produced a bonus solution.
enum class SolverMethod {
  BruteForce,
  SymmetricClosedForm,
  CertainRoot,
  LinearScan,
  AsymptoticRoot,
};

std::string to_string(SolverMethod method);

/// Result of a bonus optimization. x_star is always a member of the
/// admissible set X(n); x_tilde, when present, is the continuous root the
/// solver rounded (recorded before clamping into [min X(n), n]).
struct BonusSolution {
  int x_star = 0;
  std::optional<double> x_tilde;
  SolverMethod method = SolverMethod::BruteForce;
  std::optional<double> objective;
  // Set when the inputs arrived with beta > alpha and the players were
  // relabeled before solving.
  bool swapped = false;
};

}  // namespace bonus

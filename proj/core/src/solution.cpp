#include "bonus/solution.hpp"

namespace bonus {

std::string to_string(SolverMethod method) {
  switch (method) {
    case SolverMethod::BruteForce:
      return "brute_force";
    case SolverMethod::SymmetricClosedForm:
      return "symmetric_closed_form";
    case SolverMethod::CertainRoot:
      return "certain_root";
    case SolverMethod::LinearScan:
      return "linear_scan";
    case SolverMethod::AsymptoticRoot:
      return "asymptotic_root";
  }
  return "unknown";
}

}  // namespace bonus

#pragma once

#include "bonus/beta_core.hpp"
#include "bonus/errors.hpp"
#include "bonus/oracle.hpp"
#include "bonus/prior.hpp"
#include "bonus/solution.hpp"

namespace bonus {

/// Degenerate-prior ("certain") instance: the stronger player wins each round
/// with known fixed probability p. The relabeling convention pins p >= 1/2.
struct CertainParams {
  double p;
  int n;

  CertainParams(double p_, int n_) : p(p_), n(n_) {
    if (!(p >= 0.5 && p < 1.0)) {
      throw std::domain_error("certain case requires 0.5 <= p < 1");
    }
    if (n < 2) {
      throw std::domain_error("certain case requires n >= 2");
    }
  }
};

/// Nearest integer to value with the parity of n; exact ties go to the
/// smaller candidate; the result is clamped into [n mod 2, n].
int rd(double value, int n);

/// Closed-form optimum for the symmetric prior alpha = beta:
/// x_tilde = (n-1) / (2 alpha H - (n-1)/(n+2 alpha-1)), x_star = rd(x_tilde).
BonusSolution symmetric_optimal(double alpha, int n);

/// Certain-case root function
/// F(x) = (2np-n-(x-1)) p^(x-1) + (n-2np-(x-1)) (1-p)^(x-1), x in [1, n+1).
/// Its unique non-trivial zero, when it exists, is the continuous optimal
/// bonus.
double certain_F(const CertainParams& params, double x);

/// Whether F has a non-trivial root: p > 1/2 and n > 1/((1/2-p) ln((1-p)/p)).
bool certain_root_exists(const CertainParams& params);

/// Certain-case optimum: bisects F on (1, 2np-n+1) when the non-trivial root
/// exists, otherwise returns the degenerate root x_tilde = 1 rounded onto the
/// parity of n.
BonusSolution certain_optimal(const CertainParams& params);

/// Closed-form difference E[Delta(x+1)] - E[Delta(x-1)] using four Q-weights
/// of row n-2 and two of row n-1; O(1) after table construction. Requires
/// both x-1 and x+1 in X(n). Out-of-range state indices contribute zero.
double surprise_difference(const GammaTables& tables, int n, int x);

/// Single O(n) evaluation of E[Delta(x)] from the Q-weight expansion of the
/// final two rounds. Solver-side companion of the oracle; used to attach
/// objectives to scan results.
double expected_surprise_closed_form(const GammaTables& tables, const MatchConfig& cfg);

/// The O(n) general algorithm: preprocess Gamma tables, then scan x ascending
/// through X(n) accumulating surprise differences; the argmax prefix is the
/// optimal bonus (ties toward smaller x).
BonusSolution linear_scan_optimal(const PriorParams& prior, int n);

}  // namespace bonus

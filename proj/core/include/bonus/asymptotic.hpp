#pragma once

#include <optional>

#include "bonus/errors.hpp"
#include "bonus/prior.hpp"

namespace bonus {

/// Optimal bonus ratio mu* = x*/n in the continuum limit.
struct AsymptoticSolution {
  double mu_star = 0.0;
  /// Symmetric shortcut value 1/(2 alpha H - 1) when alpha = beta.
  std::optional<double> closed_form;
  /// Residual |G(mu*)| at the returned root.
  double g_at_root = 0.0;
  bool swapped = false;
};

/// Regularized incomplete beta function I_x(a, b), evaluated by the standard
/// continued fraction (Lentz). Relative accuracy ~1e-14 for the parameter
/// ranges used here.
double regularized_incomplete_beta(double a, double b, double x);

/// Continuum approximation Z(mu) of the expected overall surprise at bonus
/// ratio mu = x/n: the weighted incomplete-beta integral of the final two
/// rounds plus the density boundary terms. Requires mu in (0, 1).
double z_value(const PriorParams& prior, int n, double mu);

/// Derivative-root function
/// G(mu) = (1+mu)^(a-b) (l - mu) + (1-mu)^(a-b) (-f - mu)
/// with l = ((a-b)H+1)/((a+b)H-1) and f = ((a-b)H-1)/((a+b)H-1); the unique
/// zero of G on (0, 1) is the optimal ratio. Direct evaluation; may overflow
/// for extreme a-b (the root finder uses a log-space sign comparator instead).
double g_value(const PriorParams& prior, int n, double mu);

/// Explicit sufficient condition on alpha - beta under which the root of G is
/// confined to (l - epsilon, l), i.e. the optimal ratio is within epsilon of
/// the expected lead.
bool near_certain_root_window(const PriorParams& prior, int n, double epsilon);

/// Finds mu* on (0, 1): the symmetric case short-circuits to the closed form
/// 1/(2 alpha H - 1); otherwise bisection on the sign of G. Raises
/// BracketFailureError when G(0) > 0 > G(1) fails to hold (n too small).
AsymptoticSolution asymptotic_optimal(const PriorParams& prior, int n);

}  // namespace bonus

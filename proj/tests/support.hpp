#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "bonus/prior.hpp"

namespace bonus::test {

/// Adaptive Simpson quadrature; independent oracle for the incomplete-beta
/// production path.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 60) {
  const auto simpson = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
  };
  std::function<double(double, double, double, int)> recurse = [&](double lo, double hi,
                                                                   double whole, int level) {
    const double mid = 0.5 * (lo + hi);
    const double left = simpson(lo, mid);
    const double right = simpson(mid, hi);
    if (level <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
      return left + right + (left + right - whole) / 15.0;
    }
    return recurse(lo, mid, left, level - 1) + recurse(mid, hi, right, level - 1);
  };
  return recurse(a, b, simpson(a, b), depth);
}

/// alpha >= beta pairs drawn from a shape grid.
inline std::vector<PriorParams> prior_grid(const std::vector<double>& shapes) {
  std::vector<PriorParams> priors;
  for (double a : shapes) {
    for (double b : shapes) {
      if (a >= b) priors.emplace_back(a, b);
    }
  }
  return priors;
}

}  // namespace bonus::test

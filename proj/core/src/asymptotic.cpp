#include "bonus/asymptotic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "bonus/beta_core.hpp"

namespace bonus {

namespace {

double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

// One term of G in sign/log-magnitude form, so extreme alpha-beta exponents
// cannot overflow the bisection.
struct SignedLog {
  int sign = 0;
  double log_mag = -std::numeric_limits<double>::infinity();
};

SignedLog make_term(double w, double log_base, double coeff) {
  SignedLog t;
  if (coeff == 0.0 || log_base == -std::numeric_limits<double>::infinity()) {
    if (coeff != 0.0 && w == 0.0) {
      t.sign = coeff > 0.0 ? 1 : -1;
      t.log_mag = std::log(std::fabs(coeff));
    }
    return t;
  }
  t.sign = coeff > 0.0 ? 1 : -1;
  t.log_mag = (w == 0.0 ? 0.0 : w * log_base) + std::log(std::fabs(coeff));
  return t;
}

struct GParts {
  double w;
  double ell;   // ((a-b)H + 1) / ((a+b)H - 1)
  double neg_f; // ((b-a)H + 1) / ((a+b)H - 1)
};

GParts g_parts(const PriorParams& prior, double harmonic) {
  const double w = prior.alpha - prior.beta;
  const double denom = (prior.alpha + prior.beta) * harmonic - 1.0;
  return GParts{w, (w * harmonic + 1.0) / denom, (-w * harmonic + 1.0) / denom};
}

std::pair<SignedLog, SignedLog> g_terms(const GParts& g, double mu) {
  return {make_term(g.w, std::log1p(mu), g.ell - mu),
          make_term(g.w, std::log1p(-mu), g.neg_f - mu)};
}

int g_sign(const GParts& g, double mu) {
  const auto [t1, t2] = g_terms(g, mu);
  if (t1.sign == 0) return t2.sign;
  if (t2.sign == 0) return t1.sign;
  if (t1.sign == t2.sign) return t1.sign;
  if (t1.log_mag == t2.log_mag) return 0;
  return t1.log_mag > t2.log_mag ? t1.sign : t2.sign;
}

double g_combine(const GParts& g, double mu) {
  const auto [t1, t2] = g_terms(g, mu);
  if (t1.sign == 0) return t2.sign * std::exp(t2.log_mag);
  if (t2.sign == 0) return t1.sign * std::exp(t1.log_mag);
  const SignedLog& big = t1.log_mag >= t2.log_mag ? t1 : t2;
  const SignedLog& small = t1.log_mag >= t2.log_mag ? t2 : t1;
  const double ratio = std::exp(small.log_mag - big.log_mag);
  const double combined = big.sign == small.sign ? 1.0 + ratio : 1.0 - ratio;
  return big.sign * combined * std::exp(big.log_mag);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("incomplete beta requires a > 0 and b > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("incomplete beta requires x in [0,1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) -
                           (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double z_value(const PriorParams& prior, int n, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw std::domain_error("z_value requires mu in (0,1)");
  }
  const double a = prior.alpha;
  const double b = prior.beta;
  const double harmonic = harmonic_shifted(prior, n);
  const double lo = (1.0 - mu) / 2.0;
  const double hi = (1.0 + mu) / 2.0;

  // Integral of 2 f(theta) theta (1-theta) over [lo, hi] via the regularized
  // incomplete beta with shifted parameters.
  const double mass = 2.0 * a * b / ((a + b) * (a + b + 1.0));
  const double integral = mass * (regularized_incomplete_beta(a + 1.0, b + 1.0, hi) -
                                  regularized_incomplete_beta(a + 1.0, b + 1.0, lo));

  const double boundary = (beta_density(prior, hi) + beta_density(prior, lo)) *
                          (1.0 - mu) * (1.0 - mu) * (1.0 + mu) * harmonic / 4.0;
  return integral * (harmonic + 1.0) + boundary;
}

double g_value(const PriorParams& prior, int n, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::domain_error("g_value requires mu in [0,1]");
  }
  return g_combine(g_parts(prior, harmonic_shifted(prior, n)), mu);
}

bool near_certain_root_window(const PriorParams& prior, int n, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::domain_error("near_certain_root_window requires epsilon > 0");
  }
  const double w = prior.alpha - prior.beta;
  if (w <= 0.0) return false;
  const double harmonic = harmonic_shifted(prior, n);
  const double denom = (prior.alpha + prior.beta) * harmonic - 1.0;
  if (denom <= 0.0) return false;
  const double ell = (w * harmonic + 1.0) / denom;
  if (!(epsilon < ell)) return false;
  const double shifted = ell - epsilon;
  const double numer_arg = 2.0 * w * harmonic / denom - epsilon;
  if (!(numer_arg > 0.0) || !(shifted < 1.0)) return false;
  const double threshold = (std::log(numer_arg) - std::log(epsilon)) /
                           (std::log1p(shifted) - std::log1p(-shifted));
  return w > threshold;
}

AsymptoticSolution asymptotic_optimal(const PriorParams& prior, int n) {
  const bool swapped = prior.beta > prior.alpha;
  const PriorParams normalized = swapped ? PriorParams(prior.beta, prior.alpha) : prior;
  if (n < 2) {
    throw BracketFailureError("asymptotic_optimal requires n >= 2");
  }
  const double harmonic = harmonic_shifted(normalized, n);
  const GParts g = g_parts(normalized, harmonic);

  AsymptoticSolution out;
  out.swapped = swapped;

  if (normalized.symmetric()) {
    const double denom = 2.0 * normalized.alpha * harmonic - 1.0;
    if (!(denom > 0.0)) {
      throw BracketFailureError("asymptotic_optimal: n too small, (a+b)H <= 1");
    }
    out.mu_star = 1.0 / denom;
    out.closed_form = out.mu_star;
    out.g_at_root = std::fabs(g_combine(g, out.mu_star));
    if (!(out.mu_star < 1.0)) {
      throw BracketFailureError("asymptotic_optimal: n too small, mu* >= 1");
    }
    return out;
  }

  if (!((normalized.alpha + normalized.beta) * harmonic > 1.0)) {
    throw BracketFailureError("asymptotic_optimal: n too small, (a+b)H <= 1");
  }
  if (!(g_sign(g, 0.0) > 0 && g_sign(g, 1.0) < 0)) {
    throw BracketFailureError("asymptotic_optimal: G(0) > 0 > G(1) fails; n too small");
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const int s = g_sign(g, mid);
    if (s > 0) {
      lo = mid;
    } else if (s < 0) {
      hi = mid;
    } else {
      lo = hi = mid;
    }
  }
  out.mu_star = 0.5 * (lo + hi);
  out.g_at_root = std::fabs(g_combine(g, out.mu_star));
  return out;
}

}  // namespace bonus

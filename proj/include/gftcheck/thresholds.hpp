#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "gftcheck/errors.hpp"
#include "gftcheck/operators.hpp"

namespace gftcheck {

/// Lower threshold on Re J under which P stays to the right of delta:
///
///   k = p(mu+eta) - n d / (2 (C - d))   for d in [0, C/2]
///   k = p(mu+eta) - n (C - d) / (2 d)   for d in (C/2, C)
///
/// with C = capacity_C. Both branches give p(mu+eta) - n/2 at d = C/2.
inline double k_threshold(const OperatorParams& q, double delta) {
  require_delta(q, delta);
  const double c = capacity_C(q);
  const double base = q.p * (q.mu + q.eta);
  if (delta <= 0.5 * c) return base - q.n * delta / (2.0 * (c - delta));
  return base - q.n * (c - delta) / (2.0 * delta);
}

/// Upper threshold on Re J that keeps |P - C| below M (requires M >= C).
inline double bound_threshold(const OperatorParams& q, double M) {
  const double c = capacity_C(q);
  if (!(M >= c)) throw PreconditionViolated("M must satisfy M >= p^eta (1+lambda(p-1))^(eta+mu) = " + std::to_string(c));
  return q.p * (q.mu + q.eta) + q.n * M / (M + c);
}

/// Named specializations of k.
enum class ThresholdName { KGeneral, Nu, Xi, Sigma, Varrho, Rho, Rho1, Varsigma, Varsigma1 };

/// Everything a named threshold may read; each name uses a subset.
struct ThresholdArgs {
  int p = 1;
  int n = 1;
  double lambda = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  double gamma = 0.0;
};

inline std::string_view to_string(ThresholdName name) {
  switch (name) {
    case ThresholdName::KGeneral: return "k";
    case ThresholdName::Nu: return "nu";
    case ThresholdName::Xi: return "xi";
    case ThresholdName::Sigma: return "sigma";
    case ThresholdName::Varrho: return "varrho";
    case ThresholdName::Rho: return "rho";
    case ThresholdName::Rho1: return "rho1";
    case ThresholdName::Varsigma: return "varsigma";
    case ThresholdName::Varsigma1: return "varsigma1";
  }
  return "?";
}

inline ThresholdName threshold_name_from_string(std::string_view s) {
  for (auto n : {ThresholdName::KGeneral, ThresholdName::Nu, ThresholdName::Xi, ThresholdName::Sigma,
                 ThresholdName::Varrho, ThresholdName::Rho, ThresholdName::Rho1, ThresholdName::Varsigma,
                 ThresholdName::Varsigma1}) {
    if (to_string(n) == s) return n;
  }
  if (s == "k_general") return ThresholdName::KGeneral;
  throw InvalidParameter("unknown threshold name: " + std::string(s));
}

/// The operator parameters a named threshold substitutes into k.
inline OperatorParams threshold_substitution(ThresholdName name, const ThresholdArgs& a) {
  OperatorParams q{a.p, a.n, a.lambda, a.mu, a.eta};
  switch (name) {
    case ThresholdName::KGeneral: break;
    case ThresholdName::Nu: q.lambda = 0.0; break;
    case ThresholdName::Xi: q = {a.p, a.n, 0.0, 1.0 - a.gamma, a.gamma}; break;
    case ThresholdName::Sigma: q.lambda = 1.0; break;
    case ThresholdName::Varrho: q = {a.p, a.n, 1.0, 1.0 - a.gamma, a.gamma}; break;
    case ThresholdName::Rho: q = {a.p, a.n, a.lambda, 1.0 - a.gamma, a.gamma}; break;
    case ThresholdName::Rho1: q = {a.p, 1, a.lambda, 1.0, 0.0}; break;
    case ThresholdName::Varsigma: q = {a.p, a.n, a.lambda, -1.0, 1.0}; break;
    case ThresholdName::Varsigma1: q = {a.p, a.n, a.lambda, 1.0, -1.0}; break;
  }
  return q;
}

namespace detail {

// The shared two-branch shape, written against the specialization's own
// capacity expression `cap` and base value.
inline double two_branch(double base, double n, double cap, double delta) {
  if (!(delta >= 0.0 && delta < cap)) throw InvalidDelta("delta must lie in [0, " + std::to_string(cap) + ")");
  if (delta <= 0.5 * cap) return base - n * delta / (2.0 * (cap - delta));
  return base - n * (cap - delta) / (2.0 * delta);
}

}  // namespace detail

/// Evaluates a named threshold from its own closed form (not through k),
/// so agreement with k_threshold under the substitution is a real check.
inline double named_threshold(ThresholdName name, const ThresholdArgs& a, double delta) {
  const double p = a.p;
  const double n = a.n;
  const double lam = 1.0 + a.lambda * (p - 1.0);
  switch (name) {
    case ThresholdName::KGeneral:
      return k_threshold(OperatorParams{a.p, a.n, a.lambda, a.mu, a.eta}, delta);
    case ThresholdName::Nu:
      return detail::two_branch(p * (a.mu + a.eta), n, std::pow(p, a.eta), delta);
    case ThresholdName::Xi:
      return detail::two_branch(p, n, std::pow(p, a.gamma), delta);
    case ThresholdName::Sigma:
      return detail::two_branch(p * (a.mu + a.eta), n, std::pow(p, 2.0 * a.eta + a.mu), delta);
    case ThresholdName::Varrho:
      return detail::two_branch(p, n, std::pow(p, a.gamma + 1.0), delta);
    case ThresholdName::Rho:
      return detail::two_branch(p, n, std::pow(p, a.gamma) * lam, delta);
    case ThresholdName::Rho1:
      return detail::two_branch(p, 1.0, lam, delta);
    case ThresholdName::Varsigma:
      return detail::two_branch(0.0, n, p, delta);
    case ThresholdName::Varsigma1: {
      // Written in terms of d p against 1, as in the reciprocal form.
      const double dp = delta * p;
      if (!(delta >= 0.0 && dp < 1.0)) throw InvalidDelta("delta must lie in [0, 1/p)");
      if (dp <= 0.5) return -n * dp / (2.0 * (1.0 - dp));
      return -n * (1.0 - dp) / (2.0 * dp);
    }
  }
  throw InvalidParameter("unknown threshold name");
}

/// Bounds of Re(z/(1+z)) over |z| <= rho: (-rho/(1-rho), rho/(1+rho)).
inline std::pair<double, double> re_H_bounds(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParameter("rho must lie in [0,1)");
  return {-rho / (1.0 - rho), rho / (1.0 + rho)};
}

/// The four closed-form |a| bounds for z^p + a z^(p+1) at lambda = 1/2.
enum class ExampleBound { Ex311, Ex312, Ex313, Ex314 };

inline ExampleBound example_bound_from_string(std::string_view s) {
  if (s == "ex311" || s == "ex3.11") return ExampleBound::Ex311;
  if (s == "ex312" || s == "ex3.12") return ExampleBound::Ex312;
  if (s == "ex313" || s == "ex3.13") return ExampleBound::Ex313;
  if (s == "ex314" || s == "ex3.14") return ExampleBound::Ex314;
  throw InvalidParameter("unknown example bound: " + std::string(s));
}

inline std::string_view to_string(ExampleBound e) {
  switch (e) {
    case ExampleBound::Ex311: return "ex311";
    case ExampleBound::Ex312: return "ex312";
    case ExampleBound::Ex313: return "ex313";
    case ExampleBound::Ex314: return "ex314";
  }
  return "?";
}

/// Largest |a| for which the corresponding example's hypothesis is
/// guaranteed by the H bounds. `value` is M for ex311/ex313 and delta for
/// ex312/ex314. At a branch point both formulas are evaluated and the larger
/// one is returned; at delta = 0 the bound degenerates to 0.
inline double example_bound_a(ExampleBound which, int p_int, double value) {
  if (p_int < 1) throw InvalidParameter("p must be a positive integer");
  const double p = p_int;
  const double scale = p / (p + 2.0);
  switch (which) {
    case ExampleBound::Ex311: {
      const double M = value;
      if (!(M >= p)) throw InvalidParameter("ex311 needs M >= p");
      return scale * (-(M + p) + std::sqrt((M + p) * (M + p) + M * M)) / M;
    }
    case ExampleBound::Ex313: {
      const double M = value;
      if (!(M * p >= 1.0)) throw InvalidParameter("ex313 needs M >= 1/p");
      const double mp = M * p;
      return scale * (-(mp + 1.0) + std::sqrt((mp + 1.0) * (mp + 1.0) + mp * mp)) / mp;
    }
    case ExampleBound::Ex312: {
      const double d = value;
      if (!(d >= 0.0 && d < p)) throw InvalidParameter("ex312 needs delta in [0,p)");
      if (d == 0.0) return 0.0;
      const double first = scale * (-2.0 * (p - d) + std::sqrt(4.0 * (p - d) * (p - d) + d * d)) / d;
      const double second = scale * (-2.0 * d + std::sqrt((p - d) * (p - d) + 4.0 * d * d)) / (p - d);
      if (d < 0.5 * p) return first;
      if (d > 0.5 * p) return second;
      return std::max(first, second);
    }
    case ExampleBound::Ex314: {
      const double d = value;
      const double dp = d * p;
      if (!(d >= 0.0 && dp < 1.0)) throw InvalidParameter("ex314 needs delta in [0,1/p)");
      if (d == 0.0) return 0.0;
      const double first = scale * (-2.0 * (1.0 - dp) + std::sqrt(4.0 * (1.0 - dp) * (1.0 - dp) + dp * dp)) / dp;
      const double second = scale * (-2.0 * dp + std::sqrt((1.0 - dp) * (1.0 - dp) + 4.0 * dp * dp)) / (1.0 - dp);
      if (dp < 0.5) return first;
      if (dp > 0.5) return second;
      return std::max(first, second);
    }
  }
  throw InvalidParameter("unknown example bound");
}

}  // namespace gftcheck

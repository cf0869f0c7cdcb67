#pragma once

// Hypothesis -> conclusion checks over a disk grid.
//
// Bound form: hypothesis  Re J < p(mu+eta) + nM/(M+C)
//             conclusion  |P - C| < M
// Real form:  hypothesis  Re J > k
//             conclusion  Re P > d
//
// Both margins are signed so that positive means the strict inequality
// holds at every sampled point. The implication is the only thing that has
// to be true; a failed hypothesis makes the run vacuous, not wrong.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gftcheck/errors.hpp"
#include "gftcheck/function.hpp"
#include "gftcheck/operators.hpp"
#include "gftcheck/sampling.hpp"
#include "gftcheck/thresholds.hpp"

namespace gftcheck {

enum class Theorem { Bound, Real };

inline std::string_view to_string(Theorem t) { return t == Theorem::Bound ? "thm1" : "thm2"; }

struct Margin {
  double min_margin = std::numeric_limits<double>::infinity();
  bool holds = false;
  cplx argmin{0.0};
};

struct PreconditionCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  /// False for derived sufficient conditions: reported, not required, since
  /// the hypothesis itself is checked on the grid.
  bool enforced = true;
};

struct NamedValue {
  std::string name;
  double value = 0.0;
};

/// Extra per-point quantity whose largest value over the grid is reported,
/// e.g. the distance between P and a closed-form display of it.
struct AuxCheck {
  std::string name;
  std::function<double(cplx z, cplx J, cplx P)> fn;
};

struct VerificationReport {
  std::string fixture_id;
  std::string function;
  Theorem theorem = Theorem::Bound;
  std::vector<NamedValue> params;
  std::optional<cplx> a;
  SamplingPlan plan;
  std::size_t points_total = 0;
  std::size_t points_excluded = 0;
  Margin hypothesis;
  Margin conclusion;
  bool implication_ok = false;
  double capacity = 0.0;
  std::string threshold_name;
  double threshold_value = 0.0;
  double min_side_modulus = std::numeric_limits<double>::infinity();
  std::size_t branch_discrepancies = 0;
  double identity_max_residual = 0.0;
  std::vector<WorstPoint> worst_points;
  std::vector<PreconditionCheck> preconditions;
  std::vector<NamedValue> checks;
  std::vector<std::string> notes;
  double wall_time_seconds = 0.0;

  bool vacuous() const noexcept { return !hypothesis.holds; }
};

struct VerifyOptions {
  bool identity_check = true;
  std::vector<AuxCheck> aux;
  std::string threshold_name = "k";
  std::optional<double> threshold_override;  // a named form evaluated by the caller
};

/// Largest excluded fraction tolerated before the nonvanishing precondition
/// is considered violated.
inline constexpr double kMaxExcludedFraction = 0.01;

namespace detail {

inline VerificationReport run_grid(const FunctionSpec& f, const OperatorParams& q, Theorem thm, double role_value,
                                   double threshold, const SamplingPlan& plan, const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  plan.validate();
  const Tolerances tol{plan.denominator_epsilon, plan.origin_epsilon};
  const BranchOptions bopt{tol};
  const IdentityOptions iopt{bopt};
  const double c = capacity_C(q);

  VerificationReport rep;
  rep.function = f.describe();
  rep.theorem = thm;
  rep.plan = plan;
  rep.capacity = c;
  rep.threshold_name = opt.threshold_name;
  rep.threshold_value = threshold;
  rep.params = {{"p", double(q.p)}, {"n", double(q.n)}, {"lambda", q.lambda}, {"mu", q.mu}, {"eta", q.eta}};
  rep.params.push_back({thm == Theorem::Bound ? "M" : "delta", role_value});

  std::vector<double> aux_max(opt.aux.size(), 0.0);
  WorstPoints worst;
  for_each_point(plan, [&](const GridPoint& g) {
    ++rep.points_total;
    const auto b = eval_bases(f, q, g.z);
    const double side = std::min(std::abs(b.g1), std::abs(b.g2));
    rep.min_side_modulus = std::min(rep.min_side_modulus, side);
    if (side <= tol.eps_zero) {
      ++rep.points_excluded;
      return;
    }
    PowerValue pv;
    try {
      pv = eval_P(f, q, g.z, bopt);
    } catch (const BranchAmbiguity&) {
      ++rep.points_excluded;
      return;
    } catch (const NearZeroDenominator&) {
      ++rep.points_excluded;
      return;
    }
    if (!pv.principal_agrees) ++rep.branch_discrepancies;
    const cplx J = J_from_bases(q, g.z, b);
    const double hyp = thm == Theorem::Bound ? threshold - J.real() : J.real() - threshold;
    const double con = thm == Theorem::Bound ? role_value - std::abs(pv.value - c) : pv.value.real() - role_value;
    if (hyp < rep.hypothesis.min_margin) {
      rep.hypothesis.min_margin = hyp;
      rep.hypothesis.argmin = g.z;
    }
    if (con < rep.conclusion.min_margin) {
      rep.conclusion.min_margin = con;
      rep.conclusion.argmin = g.z;
    }
    worst.offer(g.z, con);
    for (std::size_t i = 0; i < opt.aux.size(); ++i) aux_max[i] = std::max(aux_max[i], opt.aux[i].fn(g.z, J, pv.value));
    if (opt.identity_check) {
      try {
        const double r = thm == Theorem::Bound ? check_identity_21(f, q, g.z, iopt)
                                               : check_identity_22(f, q, role_value, g.z, iopt);
        rep.identity_max_residual = std::max(rep.identity_max_residual, r);
      } catch (const Error&) {
      }
    }
  });

  if (rep.points_excluded > kMaxExcludedFraction * rep.points_total) {
    throw PreconditionViolated("nonvanishing: " + std::to_string(rep.points_excluded) + " of " +
                               std::to_string(rep.points_total) +
                               " grid points have a near-zero denominator (more than 1%)");
  }
  rep.hypothesis.holds = rep.hypothesis.min_margin > 0.0;
  rep.conclusion.holds = rep.conclusion.min_margin > 0.0;
  rep.implication_ok = !rep.hypothesis.holds || rep.conclusion.holds;
  rep.worst_points = worst.points();
  for (std::size_t i = 0; i < opt.aux.size(); ++i) rep.checks.push_back({opt.aux[i].name, aux_max[i]});
  if (!opt.identity_check) rep.identity_max_residual = std::numeric_limits<double>::quiet_NaN();
  if (rep.vacuous()) rep.notes.push_back("hypothesis fails on the grid; the implication holds vacuously");
  rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace detail

inline VerificationReport verify_theorem1(const FunctionSpec& f, const OperatorParams& q, double M,
                                          const SamplingPlan& plan, const VerifyOptions& opt = {}) {
  q.validate();
  if (q.p != f.p() || q.n > f.n()) throw InvalidParameter("operator p/n must match the function's class A(p,n)");
  const double bound = opt.threshold_override.value_or(bound_threshold(q, M));
  auto rep = detail::run_grid(f, q, Theorem::Bound, M, bound, plan, opt);
  rep.fixture_id = "thm1";
  return rep;
}

inline VerificationReport verify_theorem2(const FunctionSpec& f, const OperatorParams& q, double delta,
                                          const SamplingPlan& plan, const VerifyOptions& opt = {}) {
  q.validate();
  if (q.p != f.p() || q.n > f.n()) throw InvalidParameter("operator p/n must match the function's class A(p,n)");
  require_delta(q, delta);
  const double k = opt.threshold_override.value_or(k_threshold(q, delta));
  auto rep = detail::run_grid(f, q, Theorem::Real, delta, k, plan, opt);
  rep.fixture_id = "thm2";
  if (delta == 0.0) rep.notes.push_back("delta = 0 puts the threshold at p(mu+eta); the strict hypothesis is not perturbed");
  return rep;
}

}  // namespace gftcheck

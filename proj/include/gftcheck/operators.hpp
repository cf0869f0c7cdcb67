#pragma once

// The operator layer: F = (1-l) f + l z f', the functional
//   J(z) = mu z F'/F + eta (1 + z F''/F'),
// the principal-power expression P = (F/z^p)^mu (F'/z^(p-1))^eta and the
// auxiliary functions h used by the two bound theorems.
//
// Point evaluation goes through the reduced bases
//   G1 = F / z^p           = (1 + l(p-1)) g + l z g',
//   G2 = F' / z^(p-1)      = p G1 + z G1',
// with g = f / z^p. Both are analytic with positive values at the origin,
// so z = 0 needs no special casing and zF'/F = G2/G1,
// 1 + zF''/F' = p + z G2'/G2.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "gftcheck/complex_util.hpp"
#include "gftcheck/errors.hpp"
#include "gftcheck/function.hpp"
#include "gftcheck/series.hpp"

namespace gftcheck {

struct OperatorParams {
  int p = 1;
  int n = 1;
  double lambda = 0.0;
  double mu = 0.0;
  double eta = 0.0;

  void validate() const {
    if (p < 1) throw InvalidParameter("p must be a positive integer");
    if (n < 1) throw InvalidParameter("n must be a positive integer");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidParameter("lambda must lie in [0,1]");
    if (!std::isfinite(mu) || !std::isfinite(eta)) throw InvalidParameter("mu and eta must be finite reals");
  }
};

/// Thresholds shared by every pointwise operator.
struct Tolerances {
  double eps_zero = 1e-9;    // smallest admissible |denominator|
  double eps_origin = 1e-6;  // |z| below this evaluates the origin limit
};

/// F and its first two derivatives at a point.
struct FJet {
  cplx F;
  cplx F1;
  cplx F2;
};

/// G1, G1', G2, G2' at a point (see the header comment).
struct ReducedBases {
  cplx g1;
  cplx g1p;
  cplx g2;
  cplx g2p;
};

inline double base1_at_origin(const OperatorParams& q) { return 1.0 + q.lambda * (q.p - 1); }
inline double base2_at_origin(const OperatorParams& q) { return q.p * (1.0 + q.lambda * (q.p - 1)); }

/// p^eta (1 + l(p-1))^(eta+mu): the value of P at the origin.
inline double capacity_C(const OperatorParams& q) {
  return std::pow(static_cast<double>(q.p), q.eta) * std::pow(1.0 + q.lambda * (q.p - 1), q.eta + q.mu);
}

inline FJet eval_F(const FunctionSpec& f, const OperatorParams& q, cplx z) {
  const auto j = eval_jet3(f, z);
  const double l = q.lambda;
  return FJet{(1.0 - l) * j[0] + l * z * j[1], j[1] + l * z * j[2], (1.0 + l) * j[2] + l * z * j[3]};
}

inline ReducedBases eval_bases(const FunctionSpec& f, const OperatorParams& q, cplx z) {
  const auto g = eval_reduced(f, z);
  const double l = q.lambda;
  const double c1 = base1_at_origin(q);
  const double p = q.p;
  const cplx g1 = c1 * g[0] + l * z * g[1];
  const cplx g1p = (1.0 + l * p) * g[1] + l * z * g[2];
  const cplx g1pp = (1.0 + l * (p + 1.0)) * g[2] + l * z * g[3];
  const cplx g2 = p * g1 + z * g1p;
  const cplx g2p = (p + 1.0) * g1p + z * g1pp;
  return ReducedBases{g1, g1p, g2, g2p};
}

namespace detail {

inline cplx snap_origin(cplx z, const Tolerances& tol) { return std::abs(z) < tol.eps_origin ? cplx(0.0) : z; }

inline void require_nonvanishing(const ReducedBases& b, const Tolerances& tol) {
  if (std::abs(b.g1) <= tol.eps_zero) throw NearZeroDenominator("F/z^p", std::abs(b.g1));
  if (std::abs(b.g2) <= tol.eps_zero) throw NearZeroDenominator("F'/z^(p-1)", std::abs(b.g2));
}

// exp(w) - 1 without cancellation for small w.
inline cplx expm1(cplx w) {
  const double x = w.real();
  const double y = w.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace detail

/// J evaluated from already computed bases.
inline cplx J_from_bases(const OperatorParams& q, cplx z, const ReducedBases& b) {
  return q.mu * (b.g2 / b.g1) + q.eta * (static_cast<double>(q.p) + z * b.g2p / b.g2);
}

inline cplx eval_J(const FunctionSpec& f, const OperatorParams& q, cplx z, const Tolerances& tol = {}) {
  z = detail::snap_origin(z, tol);
  const auto b = eval_bases(f, q, z);
  detail::require_nonvanishing(b, tol);
  return J_from_bases(q, z, b);
}

/// P at a point together with the continuous logarithms of the normalized
/// bases u_i = G_i / G_i(0) that produced it.
struct PowerValue {
  cplx value;
  cplx log_u1;
  cplx log_u2;
  /// True when the tracked arguments coincide with the principal ones, i.e.
  /// the origin-rooted branch and the pointwise principal power agree here.
  bool principal_agrees = true;
};

struct BranchOptions {
  Tolerances tol{};
  int initial_steps = 16;
  double min_step = 1e-7;
};

/// Continuous logarithms of u1, u2 along the segment [0, z].
///
/// Starts from u_i(0) = 1 and accumulates the principal argument of each
/// step ratio. A step whose argument jump exceeds pi/2 is halved; a base
/// that comes within eps_zero of zero on the way makes the branch ambiguous.
inline std::pair<cplx, cplx> track_logs(const FunctionSpec& f, const OperatorParams& q, cplx z,
                                        const BranchOptions& opt, const ReducedBases& at_z) {
  const double c1 = base1_at_origin(q);
  const double c2 = base2_at_origin(q);
  const double max_dt = 1.0 / opt.initial_steps;
  double t = 0.0;
  double dt = max_dt;
  cplx u1(1.0), u2(1.0);
  double arg1 = 0.0, arg2 = 0.0;
  while (t < 1.0) {
    const double t_next = std::min(1.0, t + dt);
    const auto b = t_next == 1.0 ? at_z : eval_bases(f, q, t_next * z);
    const cplx v1 = b.g1 / c1;
    const cplx v2 = b.g2 / c2;
    if (std::abs(b.g1) <= opt.tol.eps_zero || std::abs(b.g2) <= opt.tol.eps_zero) {
      if (t_next == 1.0) throw NearZeroDenominator(std::abs(b.g1) <= opt.tol.eps_zero ? "F/z^p" : "F'/z^(p-1)",
                                                   std::min(std::abs(b.g1), std::abs(b.g2)));
      throw BranchAmbiguity("base vanishes on the radial path to the evaluation point");
    }
    const double d1 = std::arg(v1 / u1);
    const double d2 = std::arg(v2 / u2);
    if (std::abs(d1) > std::numbers::pi / 2 || std::abs(d2) > std::numbers::pi / 2) {
      dt *= 0.5;
      if (dt < opt.min_step) throw BranchAmbiguity("argument of a base jumps faster than the step refinement");
      continue;
    }
    arg1 += d1;
    arg2 += d2;
    u1 = v1;
    u2 = v2;
    t = t_next;
    dt = std::min(max_dt, 2.0 * dt);
  }
  return {cplx(std::log(std::abs(u1)), arg1), cplx(std::log(std::abs(u2)), arg2)};
}

inline PowerValue power_from_logs(const OperatorParams& q, cplx log_u1, cplx log_u2, const ReducedBases& b) {
  PowerValue out;
  out.log_u1 = log_u1;
  out.log_u2 = log_u2;
  out.value = capacity_C(q) * std::exp(q.mu * log_u1 + q.eta * log_u2);
  out.principal_agrees = std::abs(log_u1.imag() - std::arg(b.g1)) < 1e-9 && std::abs(log_u2.imag() - std::arg(b.g2)) < 1e-9;
  return out;
}

/// P on the analytic branch rooted at the positive origin values.
inline PowerValue eval_P(const FunctionSpec& f, const OperatorParams& q, cplx z, const BranchOptions& opt = {}) {
  z = detail::snap_origin(z, opt.tol);
  const auto b = eval_bases(f, q, z);
  detail::require_nonvanishing(b, opt.tol);
  if (z == cplx(0.0)) return PowerValue{cplx(capacity_C(q)), cplx(0.0), cplx(0.0), true};
  const auto [l1, l2] = track_logs(f, q, z, opt, b);
  return power_from_logs(q, l1, l2, b);
}

/// P with pointwise principal powers, no path tracking.
inline cplx eval_P_principal(const FunctionSpec& f, const OperatorParams& q, cplx z, const Tolerances& tol = {}) {
  z = detail::snap_origin(z, tol);
  const auto b = eval_bases(f, q, z);
  detail::require_nonvanishing(b, tol);
  const cplx l1 = std::log(b.g1 / base1_at_origin(q));
  const cplx l2 = std::log(b.g2 / base2_at_origin(q));
  return capacity_C(q) * std::exp(q.mu * l1 + q.eta * l2);
}

inline void require_delta(const OperatorParams& q, double delta) {
  const double c = capacity_C(q);
  if (!(delta >= 0.0 && delta < c))
    throw InvalidDelta("delta must lie in [0, p^eta (1+lambda(p-1))^(eta+mu)) = [0, " + std::to_string(c) + ")");
}

inline cplx eval_h_thm1(const FunctionSpec& f, const OperatorParams& q, cplx z, const BranchOptions& opt = {}) {
  return eval_P(f, q, z, opt).value - capacity_C(q);
}

inline cplx eval_h_thm2(const FunctionSpec& f, const OperatorParams& q, double delta, cplx z,
                        const BranchOptions& opt = {}) {
  require_delta(q, delta);
  return (eval_P(f, q, z, opt).value - delta) / (capacity_C(q) - delta);
}

/// Series route for P: the bases are built as truncated series from the
/// expansion of f and raised with series_pow, so the branch is the analytic
/// one fixed by the constant terms.
class PowerSeriesRoute {
 public:
  PowerSeriesRoute(const FunctionSpec& f, const OperatorParams& q, int terms = kDefaultTerms) {
    const auto g = reduced_series(f, terms);
    const auto zg1 = series_shift(series_deriv(g), 1);
    const auto b1 = series_add(series_scale(g, base1_at_origin(q)), series_scale(zg1, q.lambda));
    const auto zb1 = series_shift(series_deriv(b1), 1);
    const auto b2 = series_add(series_scale(b1, static_cast<double>(q.p)), zb1);
    const auto u1 = series_scale(b1, 1.0 / base1_at_origin(q));
    const auto u2 = series_scale(b2, 1.0 / base2_at_origin(q));
    p_ = series_scale(series_mul(series_pow(u1, q.mu), series_pow(u2, q.eta)), capacity_C(q));
    dp_ = series_deriv(p_);
  }

  const TruncatedSeries& series() const noexcept { return p_; }
  cplx value(cplx z) const { return p_.evaluate(z); }
  cplx derivative(cplx z) const { return dp_.evaluate(z); }

 private:
  TruncatedSeries p_;
  TruncatedSeries dp_;
};

/// Series expansion of h = P - C.
inline TruncatedSeries h_thm1_series(const FunctionSpec& f, const OperatorParams& q, int terms = kDefaultTerms) {
  const PowerSeriesRoute route(f, q, terms);
  return series_sub(route.series(), TruncatedSeries::constant(capacity_C(q), route.series().order()));
}

/// Series expansion of h = (P - delta) / (C - delta).
inline TruncatedSeries h_thm2_series(const FunctionSpec& f, const OperatorParams& q, double delta,
                                     int terms = kDefaultTerms) {
  require_delta(q, delta);
  const PowerSeriesRoute route(f, q, terms);
  const auto shifted = series_sub(route.series(), TruncatedSeries::constant(delta, route.series().order()));
  return series_scale(shifted, 1.0 / (capacity_C(q) - delta));
}

/// P'(z) from values of P only: trapezoidal Cauchy integral on a circle
/// around z, with P continued from the center through principal powers of
/// base ratios (close to 1 on a small circle, hence on the same branch).
inline cplx power_derivative_contour(const FunctionSpec& f, const OperatorParams& q, cplx z, const PowerValue& center,
                                     const ReducedBases& b, int nodes = 32) {
  const double radius = std::min(0.05, 0.25 * (1.0 - std::abs(z)));
  cplx acc(0.0);
  for (int k = 0; k < nodes; ++k) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * k / nodes);
    const auto bw = eval_bases(f, q, z + radius * w);
    const cplx e = q.mu * std::log(bw.g1 / b.g1) + q.eta * std::log(bw.g2 / b.g2);
    acc += center.value * detail::expm1(e) / w;
  }
  return acc / (static_cast<double>(nodes) * radius);
}

enum class DerivativeRoute { Contour, Series };

struct IdentityOptions {
  BranchOptions branch{};
  DerivativeRoute route = DerivativeRoute::Contour;
  int contour_nodes = 32;
  const PowerSeriesRoute* series = nullptr;  // required for DerivativeRoute::Series
};

namespace detail {

struct IdentityInputs {
  cplx z;
  cplx J;
  cplx P;
  cplx dP;
};

inline IdentityInputs identity_inputs(const FunctionSpec& f, const OperatorParams& q, cplx z,
                                      const IdentityOptions& opt) {
  z = snap_origin(z, opt.branch.tol);
  const auto b = eval_bases(f, q, z);
  require_nonvanishing(b, opt.branch.tol);
  const cplx J = J_from_bases(q, z, b);
  if (opt.route == DerivativeRoute::Series) {
    if (opt.series == nullptr) throw InvalidParameter("series derivative route needs a PowerSeriesRoute");
    return {z, J, opt.series->value(z), opt.series->derivative(z)};
  }
  const auto pv = eval_P(f, q, z, opt.branch);
  return {z, J, pv.value, power_derivative_contour(f, q, z, pv, b, opt.contour_nodes)};
}

}  // namespace detail

/// |J(z) - [p(mu+eta) + z h'(z) / (h(z) + C)]| with h = P - C.
inline double check_identity_21(const FunctionSpec& f, const OperatorParams& q, cplx z,
                                const IdentityOptions& opt = {}) {
  const auto in = detail::identity_inputs(f, q, z, opt);
  const double C = capacity_C(q);
  const cplx h = in.P - C;
  const cplx dh = in.dP;
  const cplx denom = h + C;
  if (std::abs(denom) <= opt.branch.tol.eps_zero) throw NearZeroDenominator("h + C", std::abs(denom));
  const cplx rhs = q.p * (q.mu + q.eta) + in.z * dh / denom;
  return std::abs(in.J - rhs);
}

/// |J(z) - [p(mu+eta) + (C-d) z h'(z) / ((C-d) h(z) + d)]| with
/// h = (P - d) / (C - d).
inline double check_identity_22(const FunctionSpec& f, const OperatorParams& q, double delta, cplx z,
                                const IdentityOptions& opt = {}) {
  require_delta(q, delta);
  const auto in = detail::identity_inputs(f, q, z, opt);
  const double scale = capacity_C(q) - delta;
  const cplx h = (in.P - delta) / scale;
  const cplx dh = in.dP / scale;
  const cplx denom = scale * h + delta;
  if (std::abs(denom) <= opt.branch.tol.eps_zero) throw NearZeroDenominator("(C-delta) h + delta", std::abs(denom));
  const cplx rhs = q.p * (q.mu + q.eta) + scale * in.z * dh / denom;
  return std::abs(in.J - rhs);
}

}  // namespace gftcheck

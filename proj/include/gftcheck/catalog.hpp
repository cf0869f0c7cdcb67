#pragma once

// The fixture catalog: every specialization of the two theorems, each tied
// to a concrete test function and to closed-form preconditions on |a|.
//
// Fixtures built on z^p + a z^(p+n) share one reduction of J:
//
//   J = p(mu+eta) + n mu H(b1 z^n) + n eta H(b2 z^n),   H(w) = w/(1+w)
//   b1 = a d1/c1,  b2 = a (p+n) d1/(p c1)
//   c1 = 1 + l(p-1),  d1 = 1 + l(p+n-1)
//
// so the H bounds give sufficient conditions on |a| for any lambda. The
// examples keep their own printed conditions instead.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gftcheck/classes.hpp"
#include "gftcheck/errors.hpp"
#include "gftcheck/function.hpp"
#include "gftcheck/harness.hpp"
#include "gftcheck/operators.hpp"
#include "gftcheck/sampling.hpp"
#include "gftcheck/thresholds.hpp"

namespace gftcheck {

enum class Family { Monomial, MonomialPlus, Exponential };
enum class ParamMode { Free, Gamma, Fixed };
enum class PreKind { None, HBound, Ex31, Ex32, Ex33, Ex34, ExpModulus, Ex310, Ex311, Ex312, Ex313, Ex314 };
enum class Display { None, Ex31, Ex33, Ex35, Ex37, Ex39, Ex310, Ex311, Ex312, Ex313, Ex314 };

struct Fixture {
  std::string id;
  std::string summary;
  Theorem theorem = Theorem::Bound;
  Family family = Family::MonomialPlus;
  ParamMode mode = ParamMode::Free;
  bool lambda_free = false;
  bool n_free = true;
  int p = 1;
  int n = 1;
  double lambda = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  double gamma = 0.0;
  double role_factor = 1.0;  // default M or delta as a multiple of C
  std::optional<ThresholdName> threshold;
  PreKind pre = PreKind::None;
  Display display = Display::None;
  bool real_a = false;
  std::vector<std::string> notes;
};

struct FixtureOverrides {
  std::optional<int> p;
  std::optional<int> n;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> eta;
  std::optional<double> gamma;
  std::optional<double> M;
  std::optional<double> delta;
  std::optional<cplx> a;
  std::optional<double> fraction;
  std::optional<double> phase;
};

inline constexpr double kDefaultAFraction = 0.9;

inline std::vector<Fixture> fixture_catalog() {
  using T = Theorem;
  using F = Family;
  using M = ParamMode;
  using N = ThresholdName;
  std::vector<Fixture> c;
  auto add = [&](Fixture f) { c.push_back(std::move(f)); };

  add({"thm1", "bound form, general parameters, f = z^p", T::Bound, F::Monomial, M::Free, true, true, 2, 1, 0.5, 1.0,
       1.0, 0.0, 2.0, std::nullopt, PreKind::None, Display::None, false, {}});
  add({"thm2", "real form, general parameters, f = z^p", T::Real, F::Monomial, M::Free, true, true, 2, 1, 0.5, 1.0,
       1.0, 0.0, 0.25, N::KGeneral, PreKind::None, Display::None, false, {}});

  add({"cor1", "lambda = 0, bound form", T::Bound, F::MonomialPlus, M::Free, false, true, 1, 1, 0.0, 1.0, 1.0, 0.0,
       2.0, std::nullopt, PreKind::HBound, Display::None, false, {}});
  add({"cor2", "lambda = 0, real form, threshold nu", T::Real, F::MonomialPlus, M::Free, false, true, 1, 1, 0.0, 1.0,
       1.0, 0.0, 0.25, N::Nu, PreKind::HBound, Display::None, false, {}});
  add({"cor3", "lambda = 0, mu = 1-gamma, eta = gamma, bound form", T::Bound, F::MonomialPlus, M::Gamma, false, true,
       2, 1, 0.0, 0.0, 0.0, 0.5, 2.0, std::nullopt, PreKind::HBound, Display::None, false, {}});
  add({"cor4", "lambda = 0, mu = 1-gamma, eta = gamma, threshold xi", T::Real, F::MonomialPlus, M::Gamma, false, true,
       2, 1, 0.0, 0.0, 0.0, 0.5, 0.25, N::Xi, PreKind::HBound, Display::None, false, {}});
  add({"cor5", "lambda = 1, bound form in f' and f' + z f''", T::Bound, F::MonomialPlus, M::Free, false, true, 1, 2,
       1.0, 1.0, 0.5, 0.0, 2.0, std::nullopt, PreKind::HBound, Display::None, false, {}});
  add({"cor6", "lambda = 1, real form, threshold sigma", T::Real, F::MonomialPlus, M::Free, false, true, 1, 2, 1.0,
       1.0, 0.5, 0.0, 0.75, N::Sigma, PreKind::HBound, Display::None, false, {}});
  add({"cor7", "lambda = 1, mu = 1-gamma, eta = gamma, bound form", T::Bound, F::MonomialPlus, M::Gamma, false, true,
       2, 1, 1.0, 0.0, 0.0, 0.5, 2.0, std::nullopt, PreKind::HBound, Display::None, false, {}});
  add({"cor8", "lambda = 1, mu = 1-gamma, eta = gamma, threshold varrho", T::Real, F::MonomialPlus, M::Gamma, false,
       true, 2, 1, 1.0, 0.0, 0.0, 0.5, 0.5, N::Varrho, PreKind::HBound, Display::None, false, {}});
  add({"cor9", "mu = 1-gamma, eta = gamma: M class at rho implies N class", T::Real, F::MonomialPlus, M::Gamma, true,
       true, 2, 1, 0.5, 0.0, 0.0, 0.5, 0.25, N::Rho, PreKind::HBound, Display::None, false, {}});
  add({"cor10", "n = 1, mu = 1, eta = 0: T class at rho1 implies N class", T::Real, F::MonomialPlus, M::Fixed, true,
       false, 2, 1, 0.5, 1.0, 0.0, 0.0, 0.25, N::Rho1, PreKind::HBound, Display::None, false, {}});
  add({"cor11", "mu = -1, eta = 1, bound form on z F'/F", T::Bound, F::MonomialPlus, M::Fixed, true, true, 1, 1, 0.5,
       -1.0, 1.0, 0.0, 2.0, std::nullopt, PreKind::HBound, Display::None, false, {}});
  add({"cor12", "mu = -1, eta = 1, threshold varsigma", T::Real, F::MonomialPlus, M::Fixed, true, true, 1, 1, 0.5,
       -1.0, 1.0, 0.0, 0.5, N::Varsigma, PreKind::HBound, Display::None, false, {}});
  add({"cor13", "mu = 1, eta = -1, bound form on F/(z F')", T::Bound, F::MonomialPlus, M::Fixed, true, true, 1, 1, 0.5,
       1.0, -1.0, 0.0, 2.0, std::nullopt, PreKind::HBound, Display::None, false, {}});
  add({"cor14", "mu = 1, eta = -1, threshold varsigma1", T::Real, F::MonomialPlus, M::Fixed, true, true, 1, 1, 0.5,
       1.0, -1.0, 0.0, 0.25, N::Varsigma1, PreKind::HBound, Display::None, false, {}});

  add({"ex3.1", "z^p + a z^(p+n), lambda = 0, mu, eta >= 0, bound form", T::Bound, F::MonomialPlus, M::Free, false,
       true, 1, 1, 0.0, 1.0, 1.0, 0.0, 1.0, std::nullopt, PreKind::Ex31, Display::Ex31, false, {}});
  add({"ex3.2", "z^p + a z^(p+n), lambda = 0, mu, eta <= 0, real form", T::Real, F::MonomialPlus, M::Free, false, true,
       1, 1, 0.0, -1.0, -0.5, 0.0, 0.25, N::Nu, PreKind::Ex32, Display::Ex31, false, {}});
  add({"ex3.3", "z^p e^(az), lambda = 0, mu = 1-gamma, eta = gamma, bound form", T::Bound, F::Exponential, M::Gamma,
       false, false, 1, 1, 0.0, 0.0, 0.0, 0.5, 1.0, std::nullopt, PreKind::Ex33, Display::Ex33, false, {}});
  add({"ex3.4", "z^p e^(az), lambda = 0, mu = 1-gamma, eta = gamma, real form", T::Real, F::Exponential, M::Gamma,
       false, false, 1, 1, 0.0, 0.0, 0.0, 0.5, 0.25, N::Xi, PreKind::Ex34, Display::Ex33,
       false,
       {"precondition checked as printed: -|a| + gamma|a|/(p+|a|); the H bound gives -|a| - gamma|a|/(p-|a|), "
        "so the printed form does not force the hypothesis and the run may be vacuous"}});
  add({"ex3.5", "z^p + a z^(p+n), lambda = 1, bound form", T::Bound, F::MonomialPlus, M::Free, false, true, 1, 1, 1.0,
       1.0, 0.5, 0.0, 1.0, std::nullopt, PreKind::HBound, Display::Ex35,
       false,
       {"reduced hypothesis used: corrected form (mu+eta) phi + eta z phi'/(p + n phi) with "
        "phi = a(p+n)z^n/(p + a(p+n)z^n); the printed form is reported alongside"}});
  add({"ex3.6", "z^p + a z^(p+n), lambda = 1, real form", T::Real, F::MonomialPlus, M::Free, false, true, 1, 1, 1.0,
       1.0, 0.5, 0.0, 0.25, N::Sigma, PreKind::HBound, Display::Ex35,
       false,
       {"reduced hypothesis used: corrected form (mu+eta) phi + eta z phi'/(p + n phi) with "
        "phi = a(p+n)z^n/(p + a(p+n)z^n); the printed form is reported alongside"}});
  add({"ex3.7", "z^p e^(az), a real, lambda = 1, mu = 1-gamma, eta = gamma, bound form", T::Bound, F::Exponential,
       M::Gamma, false, false, 1, 1, 1.0, 0.0, 0.0, 1.0, 1.0, std::nullopt, PreKind::ExpModulus, Display::Ex37, true, {}});
  add({"ex3.8", "z^p e^(az), a real, lambda = 1, mu = 1-gamma, eta = gamma, real form", T::Real, F::Exponential,
       M::Gamma, false, false, 1, 1, 1.0, 0.0, 0.0, 1.0, 0.25, N::Varrho, PreKind::ExpModulus, Display::Ex37, true, {}});
  add({"ex3.9", "z^p + a z^(p+n), lambda = 1/2, M class at rho implies N class", T::Real, F::MonomialPlus, M::Gamma,
       false, true, 1, 1, 0.5, 0.0, 0.0, 0.5, 0.25, N::Rho, PreKind::HBound, Display::Ex39,
       false, {"|a| defaults to 90% of the H-bound sufficient limit; search-a reports the grid limit"}});
  add({"ex3.10", "z^p + a z^(p+1), lambda = 1/2, T class at rho1 implies N class", T::Real, F::MonomialPlus, M::Fixed,
       false, false, 1, 1, 0.5, 1.0, 0.0, 0.0, 0.25, N::Rho1, PreKind::Ex310, Display::Ex310, false, {}});
  add({"ex3.11", "z^p + a z^(p+1), lambda = 1/2, |phi| < M", T::Bound, F::MonomialPlus, M::Fixed, false, false, 1, 1,
       0.5, -1.0, 1.0, 0.0, 1.0, std::nullopt, PreKind::Ex311, Display::Ex311, false, {}});
  add({"ex3.12", "z^p + a z^(p+1), lambda = 1/2, Re(p + phi) > delta", T::Real, F::MonomialPlus, M::Fixed, false,
       false, 1, 1, 0.5, -1.0, 1.0, 0.0, 0.3, N::Varsigma, PreKind::Ex312, Display::Ex312, false, {}});
  add({"ex3.13", "z^p + a z^(p+1), lambda = 1/2, |1/(p + phi) - 1/p| < M", T::Bound, F::MonomialPlus, M::Fixed, false,
       false, 1, 1, 0.5, 1.0, -1.0, 0.0, 1.0, std::nullopt, PreKind::Ex313, Display::Ex313, false, {}});
  add({"ex3.14", "z^p + a z^(p+1), lambda = 1/2, Re 1/(p + phi) > delta", T::Real, F::MonomialPlus, M::Fixed, false,
       false, 1, 1, 0.5, 1.0, -1.0, 0.0, 0.3, N::Varsigma1, PreKind::Ex314, Display::Ex314, false, {}});
  return c;
}

inline Fixture find_fixture(std::string_view id) {
  for (auto& f : fixture_catalog())
    if (f.id == id) return f;
  throw UnknownFixture(std::string(id));
}

/// A fixture with every parameter resolved.
struct FixtureInstance {
  Fixture fixture;
  OperatorParams q;
  double gamma = 0.0;
  double role = 0.0;  // M or delta
  double threshold = 0.0;
  std::optional<cplx> a;
  double a_bound = 0.0;
};

namespace detail {

// sup Re(c H) and inf Re(c H) over |w| < rho.
inline double h_up(double c, double rho) {
  if (c == 0.0) return 0.0;
  if (c > 0.0) return c * rho / (1.0 + rho);
  return rho >= 1.0 ? std::numeric_limits<double>::infinity() : -c * rho / (1.0 - rho);
}
inline double h_lo(double c, double rho) {
  if (c == 0.0) return 0.0;
  if (c > 0.0) return rho >= 1.0 ? -std::numeric_limits<double>::infinity() : -c * rho / (1.0 - rho);
  return c * rho / (1.0 + rho);
}

inline PreconditionCheck le(std::string name, double lhs, double rhs) { return {std::move(name), lhs, rhs, lhs <= rhs}; }
inline PreconditionCheck ge(std::string name, double lhs, double rhs) { return {std::move(name), lhs, rhs, lhs >= rhs}; }
inline PreconditionCheck advisory(PreconditionCheck c) {
  c.enforced = false;
  return c;
}

inline double printed_real_rhs(double delta, double cap) {
  return delta <= 0.5 * cap ? delta / (2.0 * (delta - cap)) : (delta - cap) / (2.0 * delta);
}

inline std::vector<PreconditionCheck> preconditions(const FixtureInstance& in, double abs_a) {
  const auto& q = in.q;
  const double p = q.p;
  const double n = q.n;
  const double C = capacity_C(q);
  const double base = p * (q.mu + q.eta);
  const bool bound = in.fixture.theorem == Theorem::Bound;
  std::vector<PreconditionCheck> out;
  switch (in.fixture.pre) {
    case PreKind::None: break;
    case PreKind::HBound: {
      const double c1 = base1_at_origin(q);
      const double d1 = 1.0 + q.lambda * (p + n - 1.0);
      out.push_back(le("|a| <= p(1+l(p-1))/((p+n)(1+l(p+n-1)))", abs_a, p * c1 / ((p + n) * d1)));
      const double r1 = abs_a * d1 / c1;
      const double r2 = abs_a * (p + n) * d1 / (p * c1);
      if (bound) {
        out.push_back(advisory(le("sup Re[mu H(b1 z^n) + eta H(b2 z^n)] <= M/(M+C)",
                                  h_up(q.mu, r1) + h_up(q.eta, r2), in.role / (in.role + C))));
      } else {
        out.push_back(advisory(ge("inf Re[mu H(b1 z^n) + eta H(b2 z^n)] >= (k - p(mu+eta))/n",
                                  h_lo(q.mu, r1) + h_lo(q.eta, r2), (in.threshold - base) / n)));
      }
      break;
    }
    case PreKind::Ex31:
    case PreKind::Ex32: {
      out.push_back(le("|a| <= p/(p+n)", abs_a, p / (p + n)));
      const double lhs = q.mu * abs_a / (1.0 + abs_a) + q.eta * (p + n) * abs_a / (p + (p + n) * abs_a);
      const double cap = std::pow(p, q.eta);
      if (in.fixture.pre == PreKind::Ex31)
        out.push_back(le("mu|a|/(1+|a|) + eta(p+n)|a|/(p+(p+n)|a|) <= M/(M+p^eta)", lhs, in.role / (in.role + cap)));
      else
        out.push_back(ge("mu|a|/(1+|a|) + eta(p+n)|a|/(p+(p+n)|a|) >= branch bound in delta", lhs,
                         printed_real_rhs(in.role, cap)));
      break;
    }
    case PreKind::Ex33:
    case PreKind::Ex34: {
      out.push_back(le("|a| <= p", abs_a, p));
      const double g = in.gamma;
      const double cap = std::pow(p, g);
      if (in.fixture.pre == PreKind::Ex33)
        out.push_back(le("|a| + gamma|a|/(p+|a|) <= M/(M+p^gamma)", abs_a + g * abs_a / (p + abs_a),
                         in.role / (in.role + cap)));
      else
        out.push_back(ge("-|a| + gamma|a|/(p+|a|) >= branch bound in delta", -abs_a + g * abs_a / (p + abs_a),
                         printed_real_rhs(in.role, cap)));
      break;
    }
    case PreKind::ExpModulus: {
      const double s = std::sqrt(4.0 * p + 1.0);
      const double root1 = (2.0 * p + 1.0 - s) / 2.0;
      const double root2 = (2.0 * p + 1.0 + s) / 2.0;
      out.push_back(le("|a| <= (2p+1-sqrt(4p+1))/2", abs_a, root1));
      const double g = in.gamma;
      double bnd = std::numeric_limits<double>::infinity();
      if (abs_a < root1) {
        bnd = abs_a * (1.0 + std::abs(1.0 - g) / (p - abs_a) +
                       std::abs(g) * (2.0 * abs_a + 2.0 * p + 1.0) / ((root1 - abs_a) * (root2 - abs_a)));
      }
      if (bound)
        out.push_back(advisory(le("sup |J - p| <= M/(M+p^(gamma+1))", bnd, in.role / (in.role + C))));
      else
        out.push_back(advisory(ge("-sup |J - p| >= k - p", -bnd, in.threshold - base)));
      break;
    }
    case PreKind::Ex310: {
      out.push_back(le("|a| <= p/(p+2)", abs_a, p / (p + 2.0)));
      const double d = in.role;
      const double rhs = d <= (p + 1.0) / 4.0 ? (p + 1.0) * d / ((p + 2.0) * (p + 1.0 - d))
                                              : (p + 1.0) * (p + 1.0 - 2.0 * d) / ((p + 2.0) * (p + 1.0 + 2.0 * d));
      out.push_back(le("|a| <= branch bound in delta", abs_a, rhs));
      break;
    }
    case PreKind::Ex311:
    case PreKind::Ex312:
    case PreKind::Ex313:
    case PreKind::Ex314: {
      out.push_back(le("|a| <= p/(p+2)", abs_a, p / (p + 2.0)));
      const ExampleBound which = in.fixture.pre == PreKind::Ex311   ? ExampleBound::Ex311
                                 : in.fixture.pre == PreKind::Ex312 ? ExampleBound::Ex312
                                 : in.fixture.pre == PreKind::Ex313 ? ExampleBound::Ex313
                                                                    : ExampleBound::Ex314;
      out.push_back(le("|a| <= closed-form bound", abs_a, example_bound_a(which, q.p, in.role)));
      break;
    }
  }
  return out;
}

inline bool all_hold(const std::vector<PreconditionCheck>& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& c) { return c.holds; });
}

// Largest |a| satisfying every precondition, assuming feasibility is
// monotone in |a|. The first precondition is always the nonvanishing cap.
inline double largest_admissible_a(const FixtureInstance& in) {
  const auto at_zero = preconditions(in, 0.0);
  if (at_zero.empty()) return 0.0;
  double hi = at_zero.front().rhs;
  if (all_hold(preconditions(in, hi))) return hi;
  double lo = 0.0;
  if (!all_hold(preconditions(in, 0.0))) return 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (all_hold(preconditions(in, mid)) ? lo : hi) = mid;
  }
  return lo;
}

inline FunctionSpec build_function(const FixtureInstance& in) {
  switch (in.fixture.family) {
    case Family::Monomial:
      return make_function(GeneralSeries{in.q.p, in.q.n, TruncatedSeries(in.q.p, {cplx(1.0)})});
    case Family::MonomialPlus: return make_function(MonomialPlusTerm{in.q.p, in.q.n, *in.a});
    case Family::Exponential: return make_function(ExponentialMonomial{in.q.p, *in.a});
  }
  throw InvalidParameter("unknown function family");
}

inline cplx ppow(cplx base, double e) { return std::exp(e * std::log(base)); }

// Closed-form displays of P and of the reduced hypothesis, compared point by
// point with the operator layer.
inline std::vector<AuxCheck> aux_checks(const FixtureInstance& in) {
  const auto& q = in.q;
  const double p = q.p;
  const int n = q.n;
  const double mu = q.mu;
  const double eta = q.eta;
  const double g = in.gamma;
  const double C = capacity_C(q);
  const cplx a = in.a.value_or(cplx(0.0));
  std::vector<AuxCheck> out;
  auto display = [&](auto fn) {
    out.push_back({"display_deviation", [fn](cplx z, cplx, cplx P) { return std::abs(fn(z) - P); }});
  };
  auto reduced = [&](std::string name, auto fn) {
    out.push_back({std::move(name), [fn](cplx z, cplx J, cplx) { return std::abs(fn(z) - J); }});
  };
  // phi for the lambda = 1/2 family with n = 1
  auto phi_half = [a, p](cplx z) { return a * (p + 2.0) * z / (p + 1.0 + a * (p + 2.0) * z); };
  auto zdphi_over = [a, p](cplx z) {
    const cplx tau = a * (p + 2.0) * z / p;
    const cplx sig = a * (p + 2.0) * z / (p + 1.0);
    return tau / (1.0 + tau) - sig / (1.0 + sig);
  };
  switch (in.fixture.display) {
    case Display::None: break;
    case Display::Ex31:
      display([=](cplx z) {
        const cplx w = ipow(z, n);
        return ppow(1.0 + a * w, mu) * ppow(p + a * (p + n) * w, eta);
      });
      break;
    case Display::Ex33:
      display([=](cplx z) { return std::exp(a * z) * ppow(p + a * z, g); });
      reduced("reduced_deviation", [=](cplx z) { return p + a * z + g * a * z / (p + a * z); });
      break;
    case Display::Ex35: {
      display([=](cplx z) {
        const cplx w = ipow(z, n);
        return ppow(p + a * (p + n) * w, mu) * ppow(p * p + a * double((p + n) * (p + n)) * w, eta);
      });
      // Both reduced forms are compared against p(mu+eta) + n R.
      auto form = [=](cplx z, cplx denom_coeff, double eta_factor) {
        const cplx w = ipow(z, n);
        const cplx A = a * (p + n);
        const cplx phi = A * w / (p + denom_coeff * w);
        const cplx zdphi = double(n) * A * w * p / ((p + denom_coeff * w) * (p + denom_coeff * w));
        return p * (mu + eta) + double(n) * ((mu + eta) * phi + eta_factor * zdphi / (double(n) * phi + p));
      };
      reduced("reduced_corrected_deviation", [=](cplx z) { return form(z, a * (p + n), eta); });
      reduced("reduced_printed_deviation", [=](cplx z) { return form(z, cplx(p + n), 1.0); });
      break;
    }
    case Display::Ex37:
      display([=](cplx z) {
        const cplx Q = a * a * z * z + a * (2.0 * p + 1.0) * z + p * p;
        return std::exp(a * z) * ppow(p + a * z, 1.0 - g) * ppow(Q, g);
      });
      reduced("reduced_deviation", [=](cplx z) {
        const cplx Q = a * a * z * z + a * (2.0 * p + 1.0) * z + p * p;
        return p + a * z * (1.0 + (1.0 - g) / (a * z + p) + g * (2.0 * a * z + 2.0 * p + 1.0) / Q);
      });
      break;
    case Display::Ex39:
      display([=](cplx z) {
        const cplx w = ipow(z, n);
        return 0.5 * ppow(p + 1.0 + a * (p + n + 1.0) * w, 1.0 - g) *
               ppow(p * (p + 1.0) + a * (p + n) * (p + n + 1.0) * w, g);
      });
      reduced("reduced_deviation", [=](cplx z) {
        const cplx w = ipow(z, n);
        const cplx den = p + 1.0 + a * (p + n + 1.0) * w;
        const cplx phi = a * double(n) * (p + n + 1.0) * w / den;
        const cplx zdphi = double(n) * phi * (p + 1.0) / den;
        return p + phi + g * zdphi / (p + phi);
      });
      break;
    case Display::Ex310:
      display([=](cplx z) { return 0.5 * (p + 1.0 + a * (p + 2.0) * z); });
      break;
    case Display::Ex311:
      display([=](cplx z) { return phi_half(z) + C; });
      reduced("reduced_deviation", zdphi_over);
      break;
    case Display::Ex312:
      display([=](cplx z) { return p + phi_half(z); });
      reduced("reduced_deviation", zdphi_over);
      break;
    case Display::Ex313:
    case Display::Ex314:
      display([=](cplx z) { return 1.0 / (p + phi_half(z)); });
      reduced("reduced_deviation", [=](cplx z) { return -zdphi_over(z); });
      break;
  }
  return out;
}

}  // namespace detail

/// Resolves defaults and overrides, rejecting overrides of parameters the
/// fixture fixes. Preconditions are evaluated but not enforced here.
inline FixtureInstance resolve_fixture(const Fixture& fx, const FixtureOverrides& ov = {}) {
  auto reject = [&](bool given, const char* what) {
    if (given) throw UsageError(std::string(what) + " is fixed for fixture " + fx.id);
  };
  reject(ov.lambda.has_value() && !fx.lambda_free, "lambda");
  reject(ov.n.has_value() && !fx.n_free, "n");
  reject((ov.mu || ov.eta) && fx.mode != ParamMode::Free, "mu/eta");
  reject(ov.gamma.has_value() && fx.mode != ParamMode::Gamma, "gamma");
  reject(ov.M.has_value() && fx.theorem != Theorem::Bound, "M (not used by a real-form fixture)");
  reject(ov.delta.has_value() && fx.theorem != Theorem::Real, "delta (not used by a bound-form fixture)");
  reject((ov.a || ov.fraction || ov.phase) && fx.family == Family::Monomial, "a (f = z^p has none)");
  if (ov.fraction && !(*ov.fraction > 0.0 && *ov.fraction <= 1.0))
    throw UsageError("fraction must lie in (0,1]");

  FixtureInstance in;
  in.fixture = fx;
  in.gamma = ov.gamma.value_or(fx.gamma);
  OperatorParams q{ov.p.value_or(fx.p), ov.n.value_or(fx.n), ov.lambda.value_or(fx.lambda), fx.mu, fx.eta};
  if (fx.mode == ParamMode::Free) {
    q.mu = ov.mu.value_or(fx.mu);
    q.eta = ov.eta.value_or(fx.eta);
  } else if (fx.mode == ParamMode::Gamma) {
    q.mu = 1.0 - in.gamma;
    q.eta = in.gamma;
  }
  q.validate();
  in.q = q;
  const double C = capacity_C(q);
  if (fx.theorem == Theorem::Bound) {
    in.role = ov.M.value_or(fx.role_factor * C);
    in.threshold = bound_threshold(q, in.role);
  } else {
    in.role = ov.delta.value_or(fx.role_factor * C);
    require_delta(q, in.role);
    in.threshold = named_threshold(fx.threshold.value_or(ThresholdName::KGeneral),
                                   ThresholdArgs{q.p, q.n, q.lambda, q.mu, q.eta, in.gamma}, in.role);
  }
  if (fx.family != Family::Monomial) {
    in.a_bound = detail::largest_admissible_a(in);
    if (ov.a) {
      in.a = *ov.a;
    } else {
      const double phase = ov.phase.value_or(0.0);
      in.a = std::polar(ov.fraction.value_or(kDefaultAFraction) * in.a_bound, phase);
      if (fx.real_a) in.a = cplx(in.a->real(), 0.0);
    }
  }
  return in;
}

/// Checks the closed-form preconditions, builds f and runs the grid.
inline VerificationReport verify_instance(const FixtureInstance& in, const SamplingPlan& plan) {
  const auto& fx = in.fixture;
  std::vector<PreconditionCheck> pre;
  if (fx.family != Family::Monomial) {
    const cplx a = *in.a;
    if (a == cplx(0.0))
      throw PreconditionViolated("a != 0: the closed-form |a| bound is " + std::to_string(in.a_bound));
    if (fx.real_a && a.imag() != 0.0) throw PreconditionViolated("a must be real for fixture " + fx.id);
    pre = detail::preconditions(in, std::abs(a));
    for (const auto& c : pre)
      if (!c.holds && c.enforced)
        throw PreconditionViolated(c.name + " (lhs " + std::to_string(c.lhs) + ", rhs " + std::to_string(c.rhs) + ")");
  }
  const auto f = detail::build_function(in);
  VerifyOptions opt;
  opt.aux = detail::aux_checks(in);
  opt.threshold_override = in.threshold;
  opt.threshold_name = fx.theorem == Theorem::Bound ? "bound" : std::string(to_string(*fx.threshold));
  auto rep = fx.theorem == Theorem::Bound ? verify_theorem1(f, in.q, in.role, plan, opt)
                                          : verify_theorem2(f, in.q, in.role, plan, opt);
  rep.fixture_id = fx.id;
  rep.a = in.a;
  if (fx.mode == ParamMode::Gamma) rep.params.push_back({"gamma", in.gamma});
  if (fx.family != Family::Monomial) rep.params.push_back({"a_bound", in.a_bound});
  rep.preconditions = std::move(pre);
  rep.notes.insert(rep.notes.begin(), fx.notes.begin(), fx.notes.end());
  for (const auto& c : rep.preconditions)
    if (!c.holds) rep.notes.push_back("sufficient condition not met (" + c.name + "); the hypothesis is left to the grid");
  return rep;
}

inline VerificationReport verify_fixture(std::string_view id, const SamplingPlan& plan,
                                         const FixtureOverrides& ov = {}) {
  return verify_instance(resolve_fixture(find_fixture(id), ov), plan);
}

inline std::vector<VerificationReport> verify_catalog(const SamplingPlan& plan) {
  std::vector<VerificationReport> out;
  for (const auto& fx : fixture_catalog()) out.push_back(verify_instance(resolve_fixture(fx), plan));
  return out;
}

/// The lambda = 1/2 family z^p + a z^(p+n) tested against M(gamma; rho).
struct Ex39Template {
  int p = 1;
  int n = 1;
  double gamma = 0.0;
  double delta = 0.0;
};

inline constexpr double kSearchTolerance = 1e-6;

/// Largest |a| (phase fixed) for which z^p + a z^(p+n) is in
/// M^(1/2)(gamma; rho(gamma, 1/2; delta)) on the grid, by bisection on
/// (0, p(p+1)/((p+n)(p+n+1))]. Assumes feasibility is monotone in |a|.
inline double search_max_a(const Ex39Template& t, double phase, const SamplingPlan& plan) {
  const OperatorParams q{t.p, t.n, 0.5, 1.0 - t.gamma, t.gamma};
  q.validate();
  require_delta(q, t.delta);
  const double rho = k_threshold(q, t.delta);
  const ClassId cls = MClass{0.5, t.gamma, rho};
  const double p = t.p;
  const double n = t.n;
  const double cap = p * (p + 1.0) / ((p + n) * (p + n + 1.0));
  auto feasible = [&](double r) {
    const auto f = make_function(MonomialPlusTerm{t.p, t.n, std::polar(r, phase)});
    const auto rep = class_scan(f, cls, plan);
    return rep.margin > 0.0 && rep.points_excluded == 0;
  };
  if (!feasible(1e-9)) throw NoFeasibleA("no feasible |a|: membership fails already at |a| = 1e-9");
  if (feasible(cap)) return cap;
  double lo = 1e-9;
  double hi = cap;
  while (hi - lo > kSearchTolerance) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace gftcheck

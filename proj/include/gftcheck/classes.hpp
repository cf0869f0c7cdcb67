#pragma once

// Class-membership predicates evaluated as grid minima.
//
// Strict inequalities over the open disk cannot be certified numerically,
// so every predicate reports the worst margin it saw. Starlike, convex and
// T are evaluated straight from the f jet; M and N go through the operator
// layer. The reduction table pairs classes that coincide, which gives two
// independent code paths for the same quantity.

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gftcheck/errors.hpp"
#include "gftcheck/function.hpp"
#include "gftcheck/operators.hpp"
#include "gftcheck/sampling.hpp"

namespace gftcheck {

struct Starlike {
  double alpha = 0.0;
};
struct Convex {
  double alpha = 0.0;
};
struct TLambda {
  double lambda = 0.0;
  double alpha = 0.0;
};
struct MClass {
  double lambda = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
};
struct NClass {
  double lambda = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  double delta = 0.0;
};
/// Realized as NClass{0, 1, eta, beta} on functions with p = 1.
struct Bazilevic {
  double eta = 0.0;
  double beta = 0.0;
};

using ClassId = std::variant<Starlike, Convex, TLambda, MClass, NClass, Bazilevic>;

inline std::string describe(const ClassId& c) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Starlike>) os << "starlike(alpha=" << x.alpha << ")";
        else if constexpr (std::is_same_v<T, Convex>) os << "convex(alpha=" << x.alpha << ")";
        else if constexpr (std::is_same_v<T, TLambda>) os << "T(lambda=" << x.lambda << ",alpha=" << x.alpha << ")";
        else if constexpr (std::is_same_v<T, MClass>)
          os << "M(lambda=" << x.lambda << ",gamma=" << x.gamma << ",beta=" << x.beta << ")";
        else if constexpr (std::is_same_v<T, NClass>)
          os << "N(lambda=" << x.lambda << ",mu=" << x.mu << ",eta=" << x.eta << ",delta=" << x.delta << ")";
        else os << "bazilevic(eta=" << x.eta << ",beta=" << x.beta << ")";
      },
      c);
  return os.str();
}

/// Operator parameters whose J (for M) or P (for N) defines the class.
inline OperatorParams class_operator_params(const ClassId& c, int p, int n) {
  if (const auto* m = std::get_if<MClass>(&c)) return {p, n, m->lambda, 1.0 - m->gamma, m->gamma};
  if (const auto* x = std::get_if<NClass>(&c)) return {p, n, x->lambda, x->mu, x->eta};
  if (const auto* b = std::get_if<Bazilevic>(&c)) return {p, n, 0.0, 1.0, b->eta};
  return {p, n, 0.0, 0.0, 0.0};
}

/// The constant the defining real part must exceed.
inline double class_order(const ClassId& c) {
  return std::visit(
      [](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Starlike> || std::is_same_v<T, Convex> || std::is_same_v<T, TLambda>)
          return x.alpha;
        else if constexpr (std::is_same_v<T, MClass> || std::is_same_v<T, Bazilevic>) return x.beta;
        else return x.delta;
      },
      c);
}

/// Parameter ranges of the class definitions for valence p.
inline void validate_class(const ClassId& c, int p) {
  auto order_range = [p](double v, const char* what) {
    if (!(v >= 0.0 && v < p)) throw InvalidParameter(std::string(what) + " must lie in [0,p)");
  };
  auto lambda_range = [](double l) {
    if (!(l >= 0.0 && l <= 1.0)) throw InvalidParameter("lambda must lie in [0,1]");
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Starlike> || std::is_same_v<T, Convex>) {
          order_range(x.alpha, "alpha");
        } else if constexpr (std::is_same_v<T, TLambda>) {
          lambda_range(x.lambda);
          order_range(x.alpha, "alpha");
        } else if constexpr (std::is_same_v<T, MClass>) {
          lambda_range(x.lambda);
          order_range(x.beta, "beta");
        } else if constexpr (std::is_same_v<T, NClass>) {
          lambda_range(x.lambda);
          require_delta(OperatorParams{p, 1, x.lambda, x.mu, x.eta}, x.delta);
        } else {
          if (p != 1) throw InvalidParameter("the Bazilevic class is defined for p = 1");
          if (!(x.eta >= -1.0)) throw InvalidParameter("eta must satisfy eta >= -1");
          if (!(x.beta >= 0.0 && x.beta < 1.0)) throw InvalidParameter("beta must lie in [0,1)");
        }
      },
      c);
}

/// One grid point of a class predicate.
struct ClassPointValue {
  std::optional<double> value;  // empty when the point is excluded
  double side_modulus = 0.0;    // smallest normalized denominator modulus
  bool branch_discrepancy = false;
};

/// The defining real part of class `c` at z. Denominators are measured
/// after dividing out the z^p (or z^(p-1)) factor, i.e. the nonvanishing
/// condition on the punctured disk.
inline ClassPointValue class_point_value(const FunctionSpec& f, const ClassId& c, cplx z, const Tolerances& tol) {
  ClassPointValue out;
  const int p = f.p();
  const double zp = std::pow(std::abs(z), p);
  const double zp1 = std::pow(std::abs(z), p - 1);
  auto direct = [&](auto&& expr, double side) {
    out.side_modulus = side;
    if (side <= tol.eps_zero) return;
    out.value = expr();
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Starlike>) {
          const auto j = eval_jet(f, z);
          direct([&] { return (z * j.f1 / j.f).real(); }, std::abs(j.f) / zp);
        } else if constexpr (std::is_same_v<T, Convex>) {
          const auto j = eval_jet(f, z);
          direct([&] { return (1.0 + z * j.f2 / j.f1).real(); }, std::abs(j.f1) / zp1);
        } else if constexpr (std::is_same_v<T, TLambda>) {
          const auto j = eval_jet(f, z);
          const cplx F = (1.0 - x.lambda) * j.f + x.lambda * z * j.f1;
          direct([&] { return ((z * j.f1 + x.lambda * z * z * j.f2) / F).real(); }, std::abs(F) / zp);
        } else if constexpr (std::is_same_v<T, MClass>) {
          const auto q = class_operator_params(c, p, f.n());
          const auto b = eval_bases(f, q, z);
          direct([&] { return J_from_bases(q, z, b).real(); }, std::min(std::abs(b.g1), std::abs(b.g2)));
        } else {
          const auto q = class_operator_params(c, p, f.n());
          const auto b = eval_bases(f, q, z);
          out.side_modulus = std::min(std::abs(b.g1), std::abs(b.g2));
          if (out.side_modulus <= tol.eps_zero) return;
          try {
            const auto pv = eval_P(f, q, z, BranchOptions{tol});
            out.value = pv.value.real();
            out.branch_discrepancy = !pv.principal_agrees;
          } catch (const BranchAmbiguity&) {
          } catch (const NearZeroDenominator&) {
          }
        }
      },
      c);
  return out;
}

struct MembershipReport {
  std::string class_label;
  std::size_t points_total = 0;
  std::size_t points_excluded = 0;
  double min_value = std::numeric_limits<double>::infinity();
  double order = 0.0;
  double margin = std::numeric_limits<double>::infinity();
  bool holds = false;
  double min_side_modulus = std::numeric_limits<double>::infinity();
  cplx argmin{0.0};
  std::size_t branch_discrepancies = 0;
  std::vector<WorstPoint> worst_points;
};

/// Grid scan of a class predicate without range validation (used where a
/// derived order may fall outside the textbook range, e.g. |a| searches).
inline MembershipReport class_scan(const FunctionSpec& f, const ClassId& c, const SamplingPlan& plan) {
  plan.validate();
  const Tolerances tol{plan.denominator_epsilon, plan.origin_epsilon};
  MembershipReport rep;
  rep.class_label = describe(c);
  rep.order = class_order(c);
  WorstPoints worst;
  for_each_point(plan, [&](const GridPoint& g) {
    ++rep.points_total;
    const auto v = class_point_value(f, c, g.z, tol);
    rep.min_side_modulus = std::min(rep.min_side_modulus, v.side_modulus);
    if (!v.value) {
      ++rep.points_excluded;
      return;
    }
    if (v.branch_discrepancy) ++rep.branch_discrepancies;
    if (*v.value < rep.min_value) {
      rep.min_value = *v.value;
      rep.argmin = g.z;
    }
    worst.offer(g.z, *v.value - rep.order);
  });
  rep.margin = rep.min_value - rep.order;
  rep.holds = rep.margin > 0.0 && rep.points_excluded == 0 && rep.min_side_modulus > tol.eps_zero;
  rep.worst_points = worst.points();
  return rep;
}

inline MembershipReport membership(const FunctionSpec& f, const ClassId& c, const SamplingPlan& plan) {
  validate_class(c, f.p());
  return class_scan(f, c, plan);
}

/// A pair of classes that coincide on the stated subfamily.
struct Reduction {
  std::string label;
  ClassId lhs;
  ClassId rhs;
  bool requires_p1 = false;  // only for p = 1
  bool requires_n1 = false;  // only for A(p) = A(p,1)
};

/// The six coincidences between the M/N families and the classical
/// classes, instantiated at order beta (and lambda, eta where free).
inline std::vector<Reduction> reduction_table(double beta, double lambda = 0.5, double eta = 0.5) {
  return {
      {"M^0_{p,n}(0;b) = S*_{p,n}(b)", MClass{0.0, 0.0, beta}, Starlike{beta}, false, false},
      {"N^0_{p,n}(-1,1;b) = S*_{p,n}(b)", NClass{0.0, -1.0, 1.0, beta}, Starlike{beta}, false, false},
      {"M^0_{1,n}(0;b) = N^0_{1,n}(-1,1;b) = S*_n(b)", MClass{0.0, 0.0, beta}, NClass{0.0, -1.0, 1.0, beta}, true,
       false},
      {"M^1_{p,n}(0;b) = C_{p,n}(b)", MClass{1.0, 0.0, beta}, Convex{beta}, false, false},
      {"M^l_{p,1}(0;b) = T_l(p;b)", MClass{lambda, 0.0, beta}, TLambda{lambda, beta}, false, true},
      {"N^0_{1,n}(1,eta;b) = B_n(eta;b)", NClass{0.0, 1.0, eta, beta}, Bazilevic{eta, beta}, true, false},
  };
}

}  // namespace gftcheck

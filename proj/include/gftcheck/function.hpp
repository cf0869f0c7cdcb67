#pragma once

// Members of A(p,n): f(z) = z^p + sum_{k >= p+n} a_k z^k.
//
// Every function is also available in reduced form g(z) = f(z) / z^p, which
// is analytic and equal to 1 at the origin. The operator layer works on g so
// that the removable singularities of F/z^p and F'/z^(p-1) never appear.

#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gftcheck/complex_util.hpp"
#include "gftcheck/errors.hpp"
#include "gftcheck/series.hpp"

namespace gftcheck {

/// An arbitrary member given by its coefficients; series.low_exp() == p.
struct GeneralSeries {
  int p = 1;
  int n = 1;
  TruncatedSeries series;
};

/// z^p + a z^(p+n).
struct MonomialPlusTerm {
  int p = 1;
  int n = 1;
  cplx a{0.0};
};

/// z^p exp(a z); lies in A(p,1).
struct ExponentialMonomial {
  int p = 1;
  cplx a{0.0};
};

using FunctionVariant = std::variant<GeneralSeries, MonomialPlusTerm, ExponentialMonomial>;

/// f, f', f'' at one point.
struct Jet2 {
  cplx f;
  cplx f1;
  cplx f2;
};

/// Value and first three derivatives of some function at one point.
using Jet3 = std::array<cplx, 4>;

class FunctionSpec;
FunctionSpec make_function(FunctionVariant v);

class FunctionSpec {
 public:
  int p() const noexcept { return p_; }
  int n() const noexcept { return n_; }
  const FunctionVariant& variant() const noexcept { return v_; }

  /// The CLI mini-grammar form of this function.
  std::string describe() const;

 private:
  friend FunctionSpec make_function(FunctionVariant v);
  FunctionSpec(FunctionVariant v, int p, int n) : v_(std::move(v)), p_(p), n_(n) {}

  FunctionVariant v_;
  int p_;
  int n_;
};

namespace detail {

inline void require_valence(int p, int n) {
  if (p < 1) throw InvalidParameter("p must be a positive integer");
  if (n < 1) throw InvalidParameter("n must be a positive integer");
}

// Shortest text that reads back to the same double.
inline std::string format_real(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::string format_complex(cplx c) {
  std::string s = format_real(c.real());
  if (c.imag() != 0.0) s += (c.imag() < 0 ? "-" : "+") + format_real(std::abs(c.imag())) + "i";
  return s;
}

// Value and derivatives 0..3 of a polynomial sum_k c_k z^k.
inline Jet3 polynomial_jet(std::span<const cplx> c, cplx z) {
  Jet3 d{cplx(0.0), cplx(0.0), cplx(0.0), cplx(0.0)};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d[3] = d[3] * z + 3.0 * d[2];
    d[2] = d[2] * z + 2.0 * d[1];
    d[1] = d[1] * z + d[0];
    d[0] = d[0] * z + *it;
  }
  return d;
}

}  // namespace detail

/// Validates the variant and builds the spec. GeneralSeries input must have
/// lowest exponent p, leading coefficient 1, and no terms strictly between
/// z^p and z^(p+n).
inline FunctionSpec make_function(FunctionVariant v) {
  return std::visit(
      [&](auto& x) -> FunctionSpec {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, MonomialPlusTerm>) {
          detail::require_valence(x.p, x.n);
          if (x.a == cplx(0.0)) throw InvalidParameter("a must be nonzero");
          if (!std::isfinite(x.a.real()) || !std::isfinite(x.a.imag())) throw InvalidParameter("a must be finite");
          return FunctionSpec(x, x.p, x.n);
        } else if constexpr (std::is_same_v<T, ExponentialMonomial>) {
          detail::require_valence(x.p, 1);
          if (x.a == cplx(0.0)) throw InvalidParameter("a must be nonzero");
          if (!std::isfinite(x.a.real()) || !std::isfinite(x.a.imag())) throw InvalidParameter("a must be finite");
          return FunctionSpec(x, x.p, 1);
        } else {
          detail::require_valence(x.p, x.n);
          const auto& s = x.series;
          if (s.is_zero() || s.low_exp() != x.p)
            throw InvalidNormalization("series must start at z^p with p = " + std::to_string(x.p));
          if (std::abs(s.coeffs()[0] - cplx(1.0)) > 1e-12)
            throw InvalidNormalization("leading coefficient must be 1, got " + detail::format_complex(s.coeffs()[0]));
          for (int e = x.p + 1; e < x.p + x.n && e < s.order(); ++e) {
            if (std::abs(s.coeff(e)) > kCoeffEpsilon)
              throw InvalidNormalization("coefficient of z^" + std::to_string(e) + " violates the gap n = " +
                                         std::to_string(x.n));
          }
          return FunctionSpec(x, x.p, x.n);
        }
      },
      v);
}

inline std::string FunctionSpec::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, MonomialPlusTerm>) {
          os << "monomial_plus:p=" << x.p << ",n=" << x.n << ",a=" << detail::format_complex(x.a);
        } else if constexpr (std::is_same_v<T, ExponentialMonomial>) {
          os << "exp_monomial:p=" << x.p << ",a=" << detail::format_complex(x.a);
        } else {
          os << "series:p=" << x.p << ",n=" << x.n << ",coeffs=[";
          const auto c = x.series.coeffs();
          for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << detail::format_complex(c[i]);
          os << "]";
        }
      },
      v_);
  return os.str();
}

/// Value and first three derivatives of g(z) = f(z) / z^p.
inline Jet3 eval_reduced(const FunctionSpec& f, cplx z) {
  return std::visit(
      [&](const auto& x) -> Jet3 {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, MonomialPlusTerm>) {
          Jet3 j{cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0)};
          for (int k = 0; k <= 3; ++k) {
            const double ff = falling_factorial(x.n, k);
            if (ff != 0.0) j[static_cast<std::size_t>(k)] += x.a * ff * ipow(z, x.n - k);
          }
          return j;
        } else if constexpr (std::is_same_v<T, ExponentialMonomial>) {
          const cplx e = std::exp(x.a * z);
          return Jet3{e, x.a * e, x.a * x.a * e, x.a * x.a * x.a * e};
        } else {
          return detail::polynomial_jet(x.series.coeffs(), z);
        }
      },
      f.variant());
}

/// f, f', f'', f''' at z.
inline Jet3 eval_jet3(const FunctionSpec& f, cplx z) {
  return std::visit(
      [&](const auto& x) -> Jet3 {
        using T = std::decay_t<decltype(x)>;
        Jet3 j{cplx(0.0), cplx(0.0), cplx(0.0), cplx(0.0)};
        if constexpr (std::is_same_v<T, MonomialPlusTerm>) {
          for (int k = 0; k <= 3; ++k) {
            const double f0 = falling_factorial(x.p, k);
            const double f1 = falling_factorial(x.p + x.n, k);
            if (f0 != 0.0) j[static_cast<std::size_t>(k)] += f0 * ipow(z, x.p - k);
            if (f1 != 0.0) j[static_cast<std::size_t>(k)] += x.a * f1 * ipow(z, x.p + x.n - k);
          }
        } else if constexpr (std::is_same_v<T, ExponentialMonomial>) {
          // Leibniz rule on z^p * exp(a z).
          const cplx e = std::exp(x.a * z);
          for (int k = 0; k <= 3; ++k) {
            cplx s(0.0);
            for (int i = 0; i <= k; ++i) {
              const double ff = falling_factorial(x.p, i);
              if (ff != 0.0) s += binomial(k, i) * ff * ipow(z, x.p - i) * ipow(x.a, k - i);
            }
            j[static_cast<std::size_t>(k)] = s * e;
          }
        } else {
          std::vector<cplx> c(static_cast<std::size_t>(x.p), cplx(0.0));
          c.insert(c.end(), x.series.coeffs().begin(), x.series.coeffs().end());
          j = detail::polynomial_jet(c, z);
        }
        return j;
      },
      f.variant());
}

inline Jet2 eval_jet(const FunctionSpec& f, cplx z) {
  const auto j = eval_jet3(f, z);
  return Jet2{j[0], j[1], j[2]};
}

/// Expansion of f truncated at O(z^order); order must exceed p.
inline TruncatedSeries to_series(const FunctionSpec& f, int order) {
  if (order <= f.p()) throw InvalidParameter("series order must exceed p");
  return std::visit(
      [&](const auto& x) -> TruncatedSeries {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, MonomialPlusTerm>) {
          std::vector<cplx> c(static_cast<std::size_t>(order - x.p), cplx(0.0));
          c[0] = 1.0;
          if (x.n < order - x.p) c[static_cast<std::size_t>(x.n)] = x.a;
          return TruncatedSeries(x.p, std::move(c));
        } else if constexpr (std::is_same_v<T, ExponentialMonomial>) {
          std::vector<cplx> c(static_cast<std::size_t>(order - x.p), cplx(0.0));
          cplx term(1.0);
          for (std::size_t k = 0; k < c.size(); ++k) {
            c[k] = term;
            term *= x.a / static_cast<double>(k + 1);
          }
          return TruncatedSeries(x.p, std::move(c));
        } else {
          // The stored coefficients define a polynomial, so it is exact to any order.
          return TruncatedSeries(x.p, detail::dense(x.series, x.p, order));
        }
      },
      f.variant());
}

/// Truncated expansion of g = f / z^p with `terms` stored coefficients.
inline TruncatedSeries reduced_series(const FunctionSpec& f, int terms = kDefaultTerms) {
  return series_shift(to_series(f, f.p() + terms), -f.p());
}

}  // namespace gftcheck

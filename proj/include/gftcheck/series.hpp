#pragma once

// Truncated Laurent-style power series over complex coefficients.
//
// A series stores the coefficients of z^low .. z^(order-1); everything from
// z^order on is unknown. All arithmetic propagates the valid order, so a
// result never claims more coefficients than its inputs determine.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "gftcheck/complex_util.hpp"
#include "gftcheck/errors.hpp"

namespace gftcheck {

/// Number of stored coefficients used when a caller does not choose one.
inline constexpr int kDefaultTerms = 64;

/// Coefficients below this modulus count as structural zeros in
/// order_of_vanishing and in the A(p,n) shape check.
inline constexpr double kCoeffEpsilon = 1e-10;

class TruncatedSeries {
 public:
  /// The zero series known up to O(z^order).
  static TruncatedSeries zero(int order) {
    TruncatedSeries s;
    s.low_ = order;
    s.order_ = order;
    return s;
  }

  /// c z^exponent + O(z^order); order must exceed exponent.
  static TruncatedSeries monomial(cplx c, int exponent, int order) {
    if (order <= exponent) return zero(order);
    std::vector<cplx> coeffs(static_cast<std::size_t>(order - exponent), cplx(0.0));
    coeffs[0] = c;
    return TruncatedSeries(exponent, std::move(coeffs));
  }

  static TruncatedSeries constant(cplx c, int order) { return monomial(c, 0, order); }

  TruncatedSeries() = default;

  /// Coefficient i belongs to z^(low_exp + i); order = low_exp + size.
  TruncatedSeries(int low_exp, std::vector<cplx> coeffs)
      : low_(low_exp), order_(low_exp + static_cast<int>(coeffs.size())), coeffs_(std::move(coeffs)) {
    normalize();
  }

  int low_exp() const noexcept { return low_; }
  int order() const noexcept { return order_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of z^exponent. Exponents below low_exp are zero; exponents
  /// at or beyond the truncation order are unknown and rejected.
  cplx coeff(int exponent) const {
    if (exponent >= order_) throw std::out_of_range("coefficient beyond truncation order");
    if (exponent < low_) return cplx(0.0);
    return coeffs_[static_cast<std::size_t>(exponent - low_)];
  }

  /// Sum of the stored terms at z (Horner).
  cplx evaluate(cplx z) const {
    if (coeffs_.empty()) return cplx(0.0);
    cplx acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc * ipow(z, low_);
  }

 private:
  void normalize() {
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c != cplx(0.0); });
    const auto dropped = static_cast<int>(first - coeffs_.begin());
    coeffs_.erase(coeffs_.begin(), first);
    low_ += dropped;
  }

  int low_ = 0;
  int order_ = 0;
  std::vector<cplx> coeffs_;
};

namespace detail {

// Dense coefficients of z^from .. z^(to-1), zero-filled outside the stored range.
inline std::vector<cplx> dense(const TruncatedSeries& s, int from, int to) {
  std::vector<cplx> out(static_cast<std::size_t>(std::max(0, to - from)), cplx(0.0));
  for (int e = std::max(from, s.low_exp()); e < std::min(to, s.order()); ++e) out[static_cast<std::size_t>(e - from)] = s.coeff(e);
  return out;
}

}  // namespace detail

inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int order = std::min(a.order(), b.order());
  const int low = std::min(a.low_exp(), b.low_exp());
  if (low >= order) return TruncatedSeries::zero(order);
  auto da = detail::dense(a, low, order);
  const auto db = detail::dense(b, low, order);
  for (std::size_t i = 0; i < da.size(); ++i) da[i] += db[i];
  return TruncatedSeries(low, std::move(da));
}

inline TruncatedSeries series_scale(const TruncatedSeries& a, cplx c) {
  std::vector<cplx> out(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : out) x *= c;
  if (out.empty()) return TruncatedSeries::zero(a.order());
  return TruncatedSeries(a.low_exp(), std::move(out));
}

inline TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series_add(a, series_scale(b, cplx(-1.0)));
}

/// Multiplies by z^k (k may be negative).
inline TruncatedSeries series_shift(const TruncatedSeries& a, int k) {
  if (a.is_zero()) return TruncatedSeries::zero(a.order() + k);
  return TruncatedSeries(a.low_exp() + k, std::vector<cplx>(a.coeffs().begin(), a.coeffs().end()));
}

/// Keeps only the terms below z^order.
inline TruncatedSeries series_truncate(const TruncatedSeries& a, int order) {
  if (order >= a.order()) return a;
  if (order <= a.low_exp()) return TruncatedSeries::zero(order);
  return TruncatedSeries(a.low_exp(), detail::dense(a, a.low_exp(), order));
}

inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int order = std::min(a.low_exp() + b.order(), b.low_exp() + a.order());
  if (a.is_zero() || b.is_zero()) return TruncatedSeries::zero(order);
  const int low = a.low_exp() + b.low_exp();
  const int terms = order - low;
  if (terms <= 0) return TruncatedSeries::zero(order);
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  std::vector<cplx> out(static_cast<std::size_t>(terms), cplx(0.0));
  for (std::size_t i = 0; i < ca.size() && i < out.size(); ++i) {
    for (std::size_t j = 0; j < cb.size() && i + j < out.size(); ++j) out[i + j] += ca[i] * cb[j];
  }
  return TruncatedSeries(low, std::move(out));
}

/// Laurent quotient a / b, inverting b's unit part coefficient by coefficient.
inline TruncatedSeries series_div(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (b.is_zero()) throw DivisionByZeroSeries();
  const int low = a.low_exp() - b.low_exp();
  const int b_terms = b.order() - b.low_exp();
  if (a.is_zero()) return TruncatedSeries::zero(a.order() - b.low_exp());
  const int terms = std::min(a.order() - a.low_exp(), b_terms);
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  std::vector<cplx> q(static_cast<std::size_t>(terms), cplx(0.0));
  for (int k = 0; k < terms; ++k) {
    cplx s = static_cast<std::size_t>(k) < ca.size() ? ca[static_cast<std::size_t>(k)] : cplx(0.0);
    for (int j = 1; j <= k && static_cast<std::size_t>(j) < cb.size(); ++j)
      s -= cb[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k - j)];
    q[static_cast<std::size_t>(k)] = s / cb[0];
  }
  return TruncatedSeries(low, std::move(q));
}

inline TruncatedSeries series_deriv(const TruncatedSeries& a) {
  if (a.is_zero()) return TruncatedSeries::zero(a.order() - 1);
  const auto ca = a.coeffs();
  std::vector<cplx> out(ca.size());
  for (std::size_t i = 0; i < ca.size(); ++i) out[i] = static_cast<double>(a.low_exp() + static_cast<int>(i)) * ca[i];
  return TruncatedSeries(a.low_exp() - 1, std::move(out));
}

/// Logarithm with the principal log of the constant term, from L' = a'/a.
inline TruncatedSeries series_log(const TruncatedSeries& a) {
  if (a.is_zero() || a.low_exp() != 0)
    throw InvalidLogArgument("series_log needs a nonzero constant term and no negative powers");
  const auto c = detail::dense(a, 0, a.order());
  const auto n = c.size();
  std::vector<cplx> l(n, cplx(0.0));
  l[0] = std::log(c[0]);
  for (std::size_t k = 1; k < n; ++k) {
    cplx s(0.0);
    for (std::size_t j = 1; j < k; ++j) s += static_cast<double>(j) * l[j] * c[k - j];
    l[k] = (c[k] - s / static_cast<double>(k)) / c[0];
  }
  return TruncatedSeries(0, std::move(l));
}

/// Exponential from E' = a' E, E(0) = exp(a(0)).
inline TruncatedSeries series_exp(const TruncatedSeries& a) {
  if (a.low_exp() < 0) throw InvalidParameter("series_exp needs a series without negative powers");
  const int order = a.order();
  if (order <= 0) return TruncatedSeries::zero(order);
  const auto c = detail::dense(a, 0, order);
  const auto n = c.size();
  std::vector<cplx> e(n, cplx(0.0));
  e[0] = std::exp(c[0]);
  for (std::size_t k = 1; k < n; ++k) {
    cplx s(0.0);
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * c[j] * e[k - j];
    e[k] = s / static_cast<double>(k);
  }
  return TruncatedSeries(0, std::move(e));
}

/// Principal power exp(mu log a); the branch is fixed by a's constant term.
inline TruncatedSeries series_pow(const TruncatedSeries& a, double mu) {
  return series_exp(series_scale(series_log(a), cplx(mu)));
}

/// Smallest exponent whose coefficient in (a - c) exceeds eps in modulus,
/// or a.order() when every stored coefficient vanishes.
inline int order_of_vanishing(const TruncatedSeries& a, cplx c, double eps = kCoeffEpsilon) {
  const int from = std::min(a.low_exp(), 0);
  for (int e = from; e < a.order(); ++e) {
    cplx v = a.coeff(e);
    if (e == 0) v -= c;
    if (std::abs(v) > eps) return e;
  }
  return a.order();
}

}  // namespace gftcheck

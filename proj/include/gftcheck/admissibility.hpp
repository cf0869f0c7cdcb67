#pragma once

// Numeric scans of the two psi shapes used by the subordination arguments:
//
//   bound form: psi(r, s) = p(mu+eta) + s / (r + C)
//   real form:  psi(r, s) = p(mu+eta) + (C - d) s / ((C - d) r + d)
//
// The bound form is sampled at r = M e^{it}, s = K e^{it} with K >= nM and
// must stay at or above p(mu+eta) + nM/(M+C). The real form is sampled at
// r = ix, s = y <= -n(1+x^2)/2 and must stay at or below k.

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "gftcheck/errors.hpp"
#include "gftcheck/operators.hpp"
#include "gftcheck/thresholds.hpp"

namespace gftcheck {

enum class PsiKind { Bound, Real };

struct PsiSpec {
  PsiKind kind = PsiKind::Bound;
  OperatorParams params{};
  double M = 0.0;      // bound form
  double delta = 0.0;  // real form

  static PsiSpec bound(const OperatorParams& q, double M) { return {PsiKind::Bound, q, M, 0.0}; }
  static PsiSpec real(const OperatorParams& q, double delta) { return {PsiKind::Real, q, 0.0, delta}; }
};

inline cplx eval_psi(const PsiSpec& s, cplx r, cplx sv) {
  const double base = s.params.p * (s.params.mu + s.params.eta);
  const double c = capacity_C(s.params);
  if (s.kind == PsiKind::Bound) return base + sv / (r + c);
  const double w = c - s.delta;
  return base + w * sv / (w * r + s.delta);
}

struct ScanGrid {
  int theta_count = 512;
  std::vector<double> K_multipliers{1.0, 2.0, 10.0};
  std::vector<double> x_samples;
  std::vector<double> y_multipliers{1.0, 2.0};

  /// x = 0 plus magnitudes 10^-2 .. 10^4 at ten per decade, both signs.
  static ScanGrid default_grid() {
    ScanGrid g;
    g.x_samples.push_back(0.0);
    const int m = 61;
    for (int i = 0; i < m; ++i) {
      const double x = std::pow(10.0, -2.0 + 6.0 * i / (m - 1));
      g.x_samples.push_back(x);
      g.x_samples.push_back(-x);
    }
    return g;
  }

  void validate() const {
    if (theta_count < 64) throw InvalidParameter("theta_count must be at least 64");
    if (K_multipliers.empty() || y_multipliers.empty()) throw InvalidParameter("multiplier lists must be nonempty");
    for (double m : K_multipliers)
      if (!(m >= 1.0)) throw InvalidParameter("K multipliers must be >= 1");
    for (double m : y_multipliers)
      if (!(m >= 1.0)) throw InvalidParameter("y multipliers must be >= 1");
    for (double x : x_samples)
      if (!std::isfinite(x)) throw InvalidParameter("x samples must be finite");
  }
};

/// One sample of a scan: (theta, K) for the bound form, (x, y) for the real
/// form. `margin` is signed so that positive means the condition holds.
struct ScanRow {
  double u = 0.0;
  double v = 0.0;
  double value = 0.0;
  double margin = 0.0;
  bool excluded = false;
};

struct ScanResult {
  PsiKind kind = PsiKind::Bound;
  double extreme = 0.0;  // min for the bound form, max for the real form
  double arg_u = 0.0;
  double arg_v = 0.0;
  double threshold = 0.0;
  double margin = 0.0;
  bool certified = false;
  std::size_t excluded = 0;
  std::vector<ScanRow> rows;
};

inline constexpr double kScanSlack = 1e-12;

inline ScanResult scan_lemma1(const PsiSpec& s, const ScanGrid& grid, const Tolerances& tol = {}) {
  if (s.kind != PsiKind::Bound) throw InvalidParameter("scan_lemma1 needs a bound-form spec");
  s.params.validate();
  grid.validate();
  const double c = capacity_C(s.params);
  ScanResult out;
  out.kind = PsiKind::Bound;
  out.threshold = bound_threshold(s.params, s.M);
  out.extreme = std::numeric_limits<double>::infinity();
  const double nM = s.params.n * s.M;
  for (int j = 0; j < grid.theta_count; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / grid.theta_count;
    const cplx e = std::polar(1.0, theta);
    const cplx r = s.M * e;
    for (double mult : grid.K_multipliers) {
      const double K = mult * nM;
      ScanRow row{theta, K, 0.0, 0.0, false};
      if (std::abs(r + c) < tol.eps_zero) {
        row.excluded = true;
        row.value = row.margin = std::numeric_limits<double>::quiet_NaN();
        ++out.excluded;
      } else {
        row.value = eval_psi(s, r, K * e).real();
        row.margin = row.value - out.threshold;
        if (row.value < out.extreme) {
          out.extreme = row.value;
          out.arg_u = theta;
          out.arg_v = K;
        }
      }
      out.rows.push_back(row);
    }
  }
  out.margin = out.extreme - out.threshold;
  out.certified = out.extreme >= out.threshold - kScanSlack;
  return out;
}

inline ScanResult scan_lemma2(const PsiSpec& s, const ScanGrid& grid) {
  if (s.kind != PsiKind::Real) throw InvalidParameter("scan_lemma2 needs a real-form spec");
  s.params.validate();
  grid.validate();
  ScanResult out;
  out.kind = PsiKind::Real;
  out.threshold = k_threshold(s.params, s.delta);
  out.extreme = -std::numeric_limits<double>::infinity();
  const double n = s.params.n;
  for (double x : grid.x_samples) {
    for (double mult : grid.y_multipliers) {
      const double y = -mult * n * (1.0 + x * x) / 2.0;
      ScanRow row{x, y, 0.0, 0.0, false};
      // At d = 0 the form degenerates to p(mu+eta) + y/(ix), undefined at x = 0.
      if (s.delta == 0.0 && x == 0.0) {
        row.excluded = true;
        row.value = row.margin = std::numeric_limits<double>::quiet_NaN();
        ++out.excluded;
      } else {
        row.value = eval_psi(s, cplx(0.0, x), cplx(y)).real();
        row.margin = out.threshold - row.value;
        if (row.value > out.extreme) {
          out.extreme = row.value;
          out.arg_u = x;
          out.arg_v = y;
        }
      }
      out.rows.push_back(row);
    }
  }
  out.margin = out.threshold - out.extreme;
  out.certified = out.extreme <= out.threshold + kScanSlack;
  return out;
}

}  // namespace gftcheck

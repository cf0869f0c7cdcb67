#pragma once

// Polar grids over the open unit disk. Real parts of analytic functions are
// harmonic, so extremes over a closed sub-disk sit on its outer ring; the
// inner rings show where a margin starts to degrade.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <tuple>
#include <vector>

#include "gftcheck/complex_util.hpp"
#include "gftcheck/errors.hpp"

namespace gftcheck {

struct SamplingPlan {
  std::vector<double> radii;
  int angles_per_ring = 256;
  double origin_epsilon = 1e-6;
  double denominator_epsilon = 1e-9;

  /// Radii 0.1 .. 0.9, 0.95, 0.99 with 256 angles each (2816 points).
  static SamplingPlan default_plan() {
    SamplingPlan plan;
    for (int i = 1; i <= 9; ++i) plan.radii.push_back(0.1 * i);
    plan.radii.push_back(0.95);
    plan.radii.push_back(0.99);
    return plan;
  }

  void validate() const {
    if (radii.empty()) throw InvalidParameter("sampling plan needs at least one radius");
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!(radii[i] > 0.0 && radii[i] < 1.0)) throw InvalidParameter("radii must lie in (0,1)");
      if (i > 0 && !(radii[i] > radii[i - 1])) throw InvalidParameter("radii must be strictly increasing");
    }
    if (angles_per_ring < 16) throw InvalidParameter("angles_per_ring must be at least 16");
    if (!(origin_epsilon > 0.0 && origin_epsilon <= 1e-3))
      throw InvalidParameter("origin_epsilon must lie in (0, 1e-3]");
    if (!(denominator_epsilon > 0.0 && denominator_epsilon <= 1e-3))
      throw InvalidParameter("denominator_epsilon must lie in (0, 1e-3]");
  }

  std::size_t size() const noexcept { return radii.size() * static_cast<std::size_t>(angles_per_ring); }

  cplx point(std::size_t ring, std::size_t angle) const {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(angle) / angles_per_ring;
    return std::polar(radii[ring], theta);
  }
};

struct GridPoint {
  std::size_t ring;
  std::size_t angle;
  cplx z;
};

/// Visits every grid point in (ring, angle) lexicographic order.
template <class Fn>
void for_each_point(const SamplingPlan& plan, Fn&& fn) {
  for (std::size_t r = 0; r < plan.radii.size(); ++r) {
    for (std::size_t a = 0; a < static_cast<std::size_t>(plan.angles_per_ring); ++a) fn(GridPoint{r, a, plan.point(r, a)});
  }
}

struct WorstPoint {
  cplx z;
  double value;
};

/// Keeps the `capacity` smallest values seen, ties broken by visiting order,
/// so the result does not depend on anything but the inputs.
class WorstPoints {
 public:
  explicit WorstPoints(std::size_t capacity = 5) : capacity_(capacity) {}

  void offer(cplx z, double value) {
    const Entry e{value, seq_++, z};
    auto pos = std::upper_bound(entries_.begin(), entries_.end(), e, [](const Entry& x, const Entry& y) {
      return std::tie(x.value, x.seq) < std::tie(y.value, y.seq);
    });
    if (static_cast<std::size_t>(pos - entries_.begin()) >= capacity_) return;
    entries_.insert(pos, e);
    if (entries_.size() > capacity_) entries_.pop_back();
  }

  std::vector<WorstPoint> points() const {
    std::vector<WorstPoint> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back({e.z, e.value});
    return out;
  }

 private:
  struct Entry {
    double value;
    std::size_t seq;
    cplx z;
  };
  std::size_t capacity_;
  std::size_t seq_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace gftcheck

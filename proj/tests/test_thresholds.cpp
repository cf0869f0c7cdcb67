#include <gtest/gtest.h>

#include <random>

#include "gftcheck/thresholds.hpp"

using namespace gftcheck;

TEST(Thresholds, KAtZeroIsBase) {
  EXPECT_DOUBLE_EQ(k_threshold({2, 1, 0.5, 1.0, -0.4}, 0.0), 2.0 * 0.6);
}

TEST(Thresholds, KAtHalfCapacityBothBranches) {
  const OperatorParams q{2, 3, 0.5, 1.0, 1.0};
  const double c = capacity_C(q);
  EXPECT_NEAR(k_threshold(q, 0.5 * c), 4.0 - 1.5, 1e-14);
  EXPECT_NEAR(k_threshold(q, std::nextafter(0.5 * c, c)), 4.0 - 1.5, 1e-12);
}

TEST(Thresholds, KQuarterValue) {
  EXPECT_NEAR(k_threshold({1, 1, 0.0, -1.0, 1.0}, 0.25), -1.0 / 6.0, 1e-15);
}

TEST(Thresholds, KRejectsDeltaOutsideRange) {
  const OperatorParams q{2, 1, 0.0, 1.0, 0.0};
  EXPECT_THROW(k_threshold(q, capacity_C(q)), InvalidDelta);
  EXPECT_THROW(k_threshold(q, -1e-3), InvalidDelta);
}

TEST(Thresholds, BoundThreshold) {
  const OperatorParams q{1, 2, 0.0, 1.0, 1.0};
  EXPECT_NEAR(bound_threshold(q, 1.0), 2.0 + 2.0 * 0.5, 1e-15);
  EXPECT_THROW(bound_threshold(q, 0.5), PreconditionViolated);
}

TEST(Thresholds, NamedValues) {
  EXPECT_NEAR(named_threshold(ThresholdName::Varsigma, {2, 1, 0.3, 0, 0, 0}, 1.0), -0.5, 1e-15);
  EXPECT_NEAR(named_threshold(ThresholdName::Rho1, {3, 1, 0.4, 0, 0, 0}, 0.0), 3.0, 1e-15);
  EXPECT_NEAR(named_threshold(ThresholdName::Xi, {1, 1, 0.0, 0, 0, 1.0}, 0.5), 0.5, 1e-15);
}

TEST(Thresholds, NameRoundTrip) {
  for (auto n : {ThresholdName::KGeneral, ThresholdName::Nu, ThresholdName::Xi, ThresholdName::Sigma,
                 ThresholdName::Varrho, ThresholdName::Rho, ThresholdName::Rho1, ThresholdName::Varsigma,
                 ThresholdName::Varsigma1}) {
    EXPECT_EQ(threshold_name_from_string(to_string(n)), n);
  }
  EXPECT_THROW(threshold_name_from_string("omega"), InvalidParameter);
}

TEST(ThresholdProperty, NamedAgreesWithSubstitution) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto name : {ThresholdName::Nu, ThresholdName::Xi, ThresholdName::Sigma, ThresholdName::Varrho,
                    ThresholdName::Rho, ThresholdName::Rho1, ThresholdName::Varsigma, ThresholdName::Varsigma1}) {
    for (int t = 0; t < 50; ++t) {
      ThresholdArgs a{1 + static_cast<int>(4 * u(rng)), 1 + static_cast<int>(3 * u(rng)), u(rng),
                      4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0, u(rng)};
      const auto q = threshold_substitution(name, a);
      const double delta = 0.999 * u(rng) * capacity_C(q);
      EXPECT_NEAR(named_threshold(name, a, delta), k_threshold(q, delta), 1e-11) << to_string(name);
    }
  }
}

TEST(ThresholdProperty, ShapeAndContinuity) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const OperatorParams q{1 + static_cast<int>(4 * u(rng)), 1 + static_cast<int>(3 * u(rng)), u(rng),
                           4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0};
    const double c = capacity_C(q);
    const double base = q.p * (q.mu + q.eta);
    const int steps = 1000;
    double prev = k_threshold(q, 0.0);
    for (int i = 1; i < steps; ++i) {
      const double d = c * i / steps;
      const double k = k_threshold(q, d);
      EXPECT_LE(k, base + 1e-12);
      if (d <= 0.5 * c) {
        EXPECT_LE(k, prev + 1e-12);
      } else {
        EXPECT_GE(k, prev - 1e-12);
      }
      // |dk/dd| <= 2n/C everywhere, so a grid step moves k by at most 2n/steps.
      EXPECT_LE(std::abs(k - prev), 2.0 * q.n / steps + 1e-12);
      prev = k;
    }
    const double mid = 0.5 * c;
    EXPECT_NEAR(k_threshold(q, mid * (1 - 1e-9)), k_threshold(q, mid * (1 + 1e-9)), 1e-7);
    EXPECT_NEAR(k_threshold(q, c * (1 - 1e-9)), base, 1e-6 * q.n);
  }
}

TEST(Thresholds, ReHBounds) {
  auto [lo0, up0] = re_H_bounds(0.0);
  EXPECT_EQ(lo0, 0.0);
  EXPECT_EQ(up0, 0.0);
  auto [lo, up] = re_H_bounds(0.5);
  EXPECT_DOUBLE_EQ(lo, -1.0);
  EXPECT_DOUBLE_EQ(up, 1.0 / 3.0);
  EXPECT_THROW(re_H_bounds(1.0), InvalidParameter);
}

TEST(ThresholdProperty, ReHBoundsContainSamples) {
  for (double rho : {0.1, 0.5, 0.9}) {
    auto [lo, up] = re_H_bounds(rho);
    for (int k = 0; k < 720; ++k) {
      const cplx z = std::polar(rho, 2.0 * std::numbers::pi * k / 720);
      const double v = (z / (1.0 + z)).real();
      EXPECT_GE(v, lo - 1e-14);
      EXPECT_LE(v, up + 1e-14);
    }
  }
}

TEST(Thresholds, ExampleBoundOracles) {
  EXPECT_NEAR(example_bound_a(ExampleBound::Ex311, 1, 1.0), 0.078689325833263232, 1e-15);
  EXPECT_NEAR(example_bound_a(ExampleBound::Ex313, 1, 1.0), 0.078689325833263232, 1e-15);
  EXPECT_NEAR(example_bound_a(ExampleBound::Ex312, 1, 0.3), 0.035313451475150350, 1e-15);
  EXPECT_NEAR(example_bound_a(ExampleBound::Ex312, 1, 0.75), 0.027587510099406563, 1e-15);
  EXPECT_NEAR(example_bound_a(ExampleBound::Ex314, 1, 0.3), 0.035313451475150350, 1e-15);
  EXPECT_EQ(example_bound_a(ExampleBound::Ex312, 1, 0.0), 0.0);
  EXPECT_EQ(example_bound_a(ExampleBound::Ex314, 2, 0.0), 0.0);
}

TEST(Thresholds, ExampleBoundRanges) {
  EXPECT_THROW(example_bound_a(ExampleBound::Ex311, 2, 1.0), InvalidParameter);
  EXPECT_THROW(example_bound_a(ExampleBound::Ex312, 1, 1.0), InvalidParameter);
  EXPECT_THROW(example_bound_a(ExampleBound::Ex313, 2, 0.4), InvalidParameter);
  EXPECT_THROW(example_bound_a(ExampleBound::Ex314, 2, 0.5), InvalidParameter);
  EXPECT_EQ(example_bound_from_string("ex3.12"), ExampleBound::Ex312);
  EXPECT_THROW(example_bound_from_string("ex3.15"), InvalidParameter);
}

#include <gtest/gtest.h>

#include <random>

#include "gftcheck/classes.hpp"

using namespace gftcheck;

namespace {

SamplingPlan small_plan() {
  SamplingPlan plan;
  plan.radii = {0.2, 0.5, 0.8, 0.95};
  plan.angles_per_ring = 64;
  return plan;
}

SamplingPlan koebe_plan() {
  SamplingPlan plan;
  for (int i = 1; i <= 19; ++i) plan.radii.push_back(0.05 * i);
  plan.angles_per_ring = 512;
  return plan;
}

FunctionSpec monomial(int p) { return make_function(GeneralSeries{p, 1, TruncatedSeries(p, {cplx(1.0)})}); }

}  // namespace

TEST(Classes, MonomialStarlikeMargin) {
  for (int p = 1; p <= 4; ++p) {
    const auto rep = membership(monomial(p), Starlike{0.25}, SamplingPlan::default_plan());
    EXPECT_TRUE(rep.holds);
    EXPECT_NEAR(rep.margin, p - 0.25, 1e-12);
    EXPECT_EQ(rep.points_excluded, 0u);
  }
}

TEST(Classes, MonomialConvexAndT) {
  const auto f = monomial(3);
  EXPECT_NEAR(membership(f, Convex{1.0}, small_plan()).margin, 2.0, 1e-12);
  EXPECT_NEAR(membership(f, TLambda{0.4, 0.5}, small_plan()).margin, 2.5, 1e-12);
}

TEST(Classes, KoebeTruncationIsStarlike) {
  // 0.95^N N must be negligible, which 64 terms is not.
  std::vector<cplx> c;
  for (int k = 1; k <= 1000; ++k) c.emplace_back(static_cast<double>(k));
  const auto f = make_function(GeneralSeries{1, 1, TruncatedSeries(1, c)});
  const auto rep = membership(f, Starlike{0.0}, koebe_plan());
  EXPECT_TRUE(rep.holds);
  EXPECT_GT(rep.min_value, 0.0);
  // Re((1+z)/(1-z)) on |z| = 0.95 bottoms out at (1-r)/(1+r).
  EXPECT_NEAR(rep.min_value, 0.05 / 1.95, 1e-6);
}

TEST(Classes, ShortKoebeSectionFailsNearTheBoundary) {
  std::vector<cplx> c;
  for (int k = 1; k <= 64; ++k) c.emplace_back(static_cast<double>(k));
  const auto f = make_function(GeneralSeries{1, 1, TruncatedSeries(1, c)});
  EXPECT_FALSE(membership(f, Starlike{0.0}, koebe_plan()).holds);
}

TEST(Classes, KoebeIsNotStarlikeOfOrderHalfAtTheBoundary) {
  std::vector<cplx> c;
  for (int k = 1; k <= 64; ++k) c.emplace_back(static_cast<double>(k));
  const auto f = make_function(GeneralSeries{1, 1, TruncatedSeries(1, c)});
  const auto rep = membership(f, Starlike{0.5}, small_plan());
  EXPECT_FALSE(rep.holds);
  EXPECT_LT(rep.margin, 0.0);
}

TEST(Classes, MAtZeroMatchesStarlike) {
  const auto f = make_function(MonomialPlusTerm{1, 1, 0.1});
  const auto a = membership(f, MClass{0.0, 0.0, 0.0}, small_plan());
  const auto b = membership(f, Starlike{0.0}, small_plan());
  EXPECT_NEAR(a.min_value, b.min_value, 1e-13);
  EXPECT_EQ(a.holds, b.holds);
  EXPECT_TRUE(a.holds);
}

TEST(Classes, ReductionTableShape) {
  const auto table = reduction_table(0.25);
  ASSERT_EQ(table.size(), 6u);
  EXPECT_TRUE(table[2].requires_p1);
  EXPECT_TRUE(table[4].requires_n1);
  EXPECT_TRUE(table[5].requires_p1);
  EXPECT_FALSE(table[0].requires_p1 || table[0].requires_n1);
  EXPECT_TRUE(std::holds_alternative<Convex>(table[3].rhs));
  EXPECT_TRUE(std::holds_alternative<TLambda>(table[4].rhs));
  for (const auto& r : table) EXPECT_EQ(class_order(r.lhs), class_order(r.rhs)) << r.label;
}

TEST(ClassesProperty, ReductionsAgreePointwise) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Tolerances tol{};
  for (int t = 0; t < 20; ++t) {
    const double beta = 0.5 * u(rng);
    const auto table = reduction_table(beta, u(rng), 2.0 * u(rng) - 0.5);
    for (const auto& red : table) {
      const int p = red.requires_p1 ? 1 : 1 + static_cast<int>(3 * u(rng));
      const int n = red.requires_n1 ? 1 : 1 + static_cast<int>(3 * u(rng));
      const double cap = static_cast<double>(p) / (4.0 * (p + n));
      const auto f = make_function(MonomialPlusTerm{p, n, std::polar(cap * u(rng), 6.28 * u(rng))});
      for (int k = 0; k < 40; ++k) {
        const cplx z = std::polar(0.05 + 0.9 * u(rng), 6.28 * u(rng));
        const auto lhs = class_point_value(f, red.lhs, z, tol);
        const auto rhs = class_point_value(f, red.rhs, z, tol);
        ASSERT_TRUE(lhs.value && rhs.value) << red.label;
        EXPECT_NEAR(*lhs.value, *rhs.value, 1e-10) << red.label << " at " << z;
      }
    }
  }
}

TEST(Classes, Validation) {
  EXPECT_THROW(validate_class(Starlike{2.0}, 2), InvalidParameter);
  EXPECT_THROW(validate_class(TLambda{1.5, 0.0}, 1), InvalidParameter);
  EXPECT_THROW(validate_class(MClass{0.5, 0.0, -0.1}, 1), InvalidParameter);
  EXPECT_THROW(validate_class(NClass{0.0, 1.0, 0.0, 2.0}, 2), InvalidDelta);
  EXPECT_THROW(validate_class(Bazilevic{0.5, 0.2}, 2), InvalidParameter);
  EXPECT_THROW(validate_class(Bazilevic{-2.0, 0.2}, 1), InvalidParameter);
  EXPECT_NO_THROW(validate_class(NClass{0.5, -1.0, 1.0, 0.5}, 2));
  EXPECT_THROW(membership(monomial(1), Starlike{1.0}, small_plan()), InvalidParameter);
}

TEST(Classes, DescribeLabels) {
  EXPECT_EQ(describe(Starlike{0.5}), "starlike(alpha=0.5)");
  EXPECT_EQ(describe(MClass{0.5, 1, 0.25}), "M(lambda=0.5,gamma=1,beta=0.25)");
}

TEST(Classes, ZeroOfFExcludesPoints) {
  // z - 2 z^2 vanishes at z = 1/2, which the plan samples at angle 0.
  const auto f = make_function(MonomialPlusTerm{1, 1, -2.0});
  const auto rep = class_scan(f, Starlike{0.0}, small_plan());
  EXPECT_FALSE(rep.holds);
  EXPECT_GE(rep.points_excluded, 1u);
}

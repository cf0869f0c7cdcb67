#include <gtest/gtest.h>

#include <set>

#include "gftcheck/catalog.hpp"

using namespace gftcheck;

namespace {

FunctionSpec monomial(int p, int n = 1) {
  return make_function(GeneralSeries{p, n, TruncatedSeries(p, {cplx(1.0)})});
}

SamplingPlan coarse_plan() {
  SamplingPlan plan;
  plan.radii = {0.1, 0.3, 0.5, 0.7, 0.9, 0.99};
  plan.angles_per_ring = 64;
  return plan;
}

}  // namespace

TEST(Harness, MonomialBoundForm) {
  const OperatorParams q{2, 1, 0.5, 1.0, 0.5};
  const double C = capacity_C(q);
  const double M = 2.0 * C;
  const auto rep = verify_theorem1(monomial(2), q, M, SamplingPlan::default_plan());
  EXPECT_TRUE(rep.hypothesis.holds);
  EXPECT_NEAR(rep.hypothesis.min_margin, q.n * M / (M + C), 1e-12);
  EXPECT_NEAR(rep.conclusion.min_margin, M, 1e-12);
  EXPECT_TRUE(rep.implication_ok);
  EXPECT_FALSE(rep.vacuous());
  EXPECT_EQ(rep.points_total, 2816u);
  EXPECT_EQ(rep.points_excluded, 0u);
  EXPECT_LT(rep.identity_max_residual, 1e-10);
}

TEST(Harness, MonomialRealForm) {
  const OperatorParams q{3, 2, 0.25, -0.5, 1.0};
  const double C = capacity_C(q);
  const auto rep = verify_theorem2(monomial(3, 2), q, 0.4 * C, coarse_plan());
  EXPECT_TRUE(rep.hypothesis.holds);
  EXPECT_NEAR(rep.hypothesis.min_margin, 3.0 * 0.5 - k_threshold(q, 0.4 * C), 1e-12);
  EXPECT_NEAR(rep.conclusion.min_margin, 0.6 * C, 1e-12);
  EXPECT_TRUE(rep.implication_ok);
}

TEST(Harness, MonomialRealFormAtZeroDeltaIsVacuous) {
  const OperatorParams q{1, 1, 0.0, 1.0, 1.0};
  const auto rep = verify_theorem2(monomial(1), q, 0.0, coarse_plan());
  EXPECT_FALSE(rep.hypothesis.holds);
  EXPECT_NEAR(rep.hypothesis.min_margin, 0.0, 1e-14);
  EXPECT_TRUE(rep.conclusion.holds);
  EXPECT_TRUE(rep.implication_ok);
  EXPECT_TRUE(rep.vacuous());
  EXPECT_FALSE(rep.notes.empty());
}

TEST(Harness, FixtureEx31SmallA) {
  FixtureOverrides ov;
  ov.a = cplx(0.02);
  const auto rep = verify_fixture("ex3.1", SamplingPlan::default_plan(), ov);
  EXPECT_TRUE(rep.hypothesis.holds);
  EXPECT_TRUE(rep.conclusion.holds);
  EXPECT_TRUE(rep.implication_ok);
  ASSERT_EQ(rep.preconditions.size(), 2u);
  for (const auto& c : rep.preconditions) EXPECT_TRUE(c.holds) << c.name;
  ASSERT_FALSE(rep.checks.empty());
  EXPECT_LT(rep.checks.front().value, 1e-12);
}

TEST(Harness, AdversarialAKeepsImplicationContract) {
  // a = 0.45 breaks the ex3.1 closed form but keeps 1 + a z away from 0.
  const auto f = make_function(MonomialPlusTerm{1, 1, 0.45});
  const OperatorParams q{1, 1, 0.0, 1.0, 1.0};
  const auto rep = verify_theorem1(f, q, 1.0, SamplingPlan::default_plan());
  EXPECT_FALSE(rep.hypothesis.holds);
  EXPECT_TRUE(rep.implication_ok);
  EXPECT_EQ(rep.implication_ok, !rep.hypothesis.holds || rep.conclusion.holds);
}

TEST(Harness, FixtureEx311Defaults) {
  FixtureOverrides ov;
  ov.p = 1;
  ov.M = 1.0;
  const auto rep = verify_fixture("ex3.11", SamplingPlan::default_plan(), ov);
  ASSERT_TRUE(rep.a.has_value());
  EXPECT_NEAR(std::abs(*rep.a), 0.9 * 0.078689325833263232, 1e-12);
  EXPECT_TRUE(rep.hypothesis.holds);
  EXPECT_TRUE(rep.conclusion.holds);
  EXPECT_TRUE(rep.implication_ok);
  for (const auto& c : rep.checks) EXPECT_LT(c.value, 1e-12) << c.name;
}

TEST(Harness, FixtureCor12AtBranchPoint) {
  FixtureOverrides ov;
  ov.p = 2;
  ov.delta = 1.0;
  const auto in = resolve_fixture(find_fixture("cor12"), ov);
  EXPECT_NEAR(in.threshold, -0.5, 1e-15);
  const auto rep = verify_instance(in, coarse_plan());
  EXPECT_EQ(rep.threshold_name, "varsigma");
  EXPECT_NEAR(rep.threshold_value, -0.5, 1e-15);
  EXPECT_TRUE(rep.implication_ok);
}

TEST(Harness, FixtureEx37HalfRoot) {
  FixtureOverrides ov;
  ov.p = 1;
  ov.gamma = 1.0;
  ov.M = 10.0;
  ov.a = cplx(0.5 * (3.0 - std::sqrt(5.0)) / 2.0);
  const auto rep = verify_fixture("ex3.7", SamplingPlan::default_plan(), ov);
  EXPECT_TRUE(rep.implication_ok);
  EXPECT_TRUE(rep.conclusion.holds);
  ASSERT_EQ(rep.preconditions.size(), 2u);
  EXPECT_TRUE(rep.preconditions[0].holds);
  EXPECT_TRUE(rep.preconditions[0].enforced);
  EXPECT_FALSE(rep.preconditions[1].enforced);
  for (const auto& c : rep.checks) EXPECT_LT(c.value, 1e-12) << c.name;
}

TEST(Harness, FixtureEx37RejectsComplexA) {
  FixtureOverrides ov;
  ov.a = cplx(0.05, 0.01);
  EXPECT_THROW(verify_fixture("ex3.7", coarse_plan(), ov), PreconditionViolated);
}

TEST(Harness, PreconditionViolationNamesPredicate) {
  FixtureOverrides ov;
  ov.a = cplx(0.5);
  try {
    verify_fixture("ex3.11", coarse_plan(), ov);
    FAIL();
  } catch (const PreconditionViolated& e) {
    EXPECT_NE(std::string(e.what()).find("|a| <="), std::string::npos);
  }
  ov.a = cplx(0.0);
  EXPECT_THROW(verify_fixture("ex3.11", coarse_plan(), ov), PreconditionViolated);
}

TEST(Harness, TooManyNearZeroDenominators) {
  // g = 1 - 2z vanishes at z = 1/2, a sampled point of a 16-point plan.
  const auto f = make_function(MonomialPlusTerm{1, 1, -2.0});
  SamplingPlan plan;
  plan.radii = {0.5};
  plan.angles_per_ring = 16;
  EXPECT_THROW(verify_theorem1(f, {1, 1, 0.0, 1.0, 0.0}, 1.0, plan), PreconditionViolated);
}

TEST(Harness, UnknownFixtureAndOverrides) {
  EXPECT_THROW(find_fixture("ex9.9"), UnknownFixture);
  FixtureOverrides ov;
  ov.lambda = 0.3;
  EXPECT_THROW(resolve_fixture(find_fixture("ex3.11"), ov), UsageError);
  ov = {};
  ov.a = cplx(0.1);
  EXPECT_THROW(resolve_fixture(find_fixture("thm1"), ov), UsageError);
  ov = {};
  ov.mu = 0.5;
  EXPECT_THROW(resolve_fixture(find_fixture("cor3"), ov), UsageError);
  ov = {};
  ov.delta = 0.1;
  EXPECT_THROW(resolve_fixture(find_fixture("cor1"), ov), UsageError);
}

TEST(Harness, OperatorMustMatchFunctionClass) {
  EXPECT_THROW(verify_theorem1(monomial(2), {1, 1, 0.0, 1.0, 0.0}, 2.0, coarse_plan()), InvalidParameter);
}

TEST(Catalog, ContainsEveryFixtureOnce) {
  const auto cat = fixture_catalog();
  ASSERT_EQ(cat.size(), 30u);
  std::set<std::string> ids;
  for (const auto& f : cat) ids.insert(f.id);
  EXPECT_EQ(ids.size(), 30u);
  for (const char* id : {"thm1", "thm2", "cor1", "cor14", "ex3.1", "ex3.5", "ex3.10", "ex3.14"})
    EXPECT_TRUE(ids.count(id)) << id;
}

TEST(Catalog, DefaultRunsHoldAndAreConsistent) {
  const auto reps = verify_catalog(SamplingPlan::default_plan());
  ASSERT_EQ(reps.size(), 30u);
  for (const auto& r : reps) {
    EXPECT_TRUE(r.implication_ok) << r.fixture_id;
    EXPECT_EQ(r.points_excluded, 0u) << r.fixture_id;
    EXPECT_LT(r.identity_max_residual, 1e-8) << r.fixture_id;
    for (const auto& c : r.checks) {
      if (c.name == "reduced_printed_deviation") continue;
      EXPECT_LT(c.value, 1e-10) << r.fixture_id << " " << c.name;
    }
    for (const auto& c : r.preconditions) EXPECT_TRUE(c.holds) << r.fixture_id << " " << c.name;
  }
}

TEST(Catalog, RefinementIsStable) {
  SamplingPlan coarse = SamplingPlan::default_plan();
  SamplingPlan fine = coarse;
  fine.angles_per_ring *= 2;
  for (const char* id : {"ex3.1", "ex3.11", "cor9", "ex3.7"}) {
    const auto a = verify_fixture(id, coarse);
    const auto b = verify_fixture(id, fine);
    EXPECT_LT(std::abs(a.conclusion.min_margin - b.conclusion.min_margin), 1e-3) << id;
    EXPECT_LT(std::abs(a.hypothesis.min_margin - b.hypothesis.min_margin), 1e-3) << id;
  }
}

TEST(SearchA, DegenerateTemplateHasNoFeasibleA) {
  EXPECT_THROW(search_max_a({1, 1, 0.0, 0.0}, 0.0, coarse_plan()), NoFeasibleA);
}

TEST(SearchA, BothPhasesPositive) {
  const Ex39Template t{1, 1, 0.5, 0.25};
  const double a0 = search_max_a(t, 0.0, coarse_plan());
  const double api = search_max_a(t, std::numbers::pi, coarse_plan());
  EXPECT_GT(a0, 0.0);
  EXPECT_GT(api, 0.0);
}

TEST(SearchA, ShrinksAsDeltaApproachesCapacity) {
  const OperatorParams q{1, 1, 0.5, 0.5, 0.5};
  const double C = capacity_C(q);
  const double mid = search_max_a({1, 1, 0.5, 0.5 * C}, 0.0, coarse_plan());
  const double near = search_max_a({1, 1, 0.5, 0.98 * C}, 0.0, coarse_plan());
  EXPECT_LT(near, mid);
  EXPECT_LT(near, 0.05);
}

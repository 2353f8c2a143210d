#include <gtest/gtest.h>

#include <random>
#include <set>

#include "seqbin/seqbin.hpp"
#include "test_support.hpp"

using namespace seqbin;
using namespace testing_support;

namespace {

const RelationKind kChangeOps[] = {RelationKind::Eq, RelationKind::Neq, RelationKind::Lt,
                                   RelationKind::Leq, RelationKind::Gt, RelationKind::Geq};

std::vector<Domain> full(int n, Value d) { return std::vector<Domain>(n, full_domain(d)); }

std::vector<Domain> random_domains(std::mt19937& rng, int n, Value d) {
  std::vector<Domain> out;
  for (int i = 0; i < n; ++i) out.push_back(random_domain(rng, d));
  return out;
}

std::vector<int> random_n(std::mt19937& rng, int n) {
  std::vector<int> out;
  for (int x = 1; x <= n; ++x) {
    if (rng() % 2) out.push_back(x);
  }
  if (out.empty()) out.push_back(1);
  return out;
}

}  // namespace

TEST(Change, Examples) {
  const Instance neq = make_change(3, 2, full(3, 2), {1, 2, 3}, RelationKind::Neq);
  EXPECT_EQ(seqbin_count({1, 1, 2}, neq), 2);
  const Instance eq = make_change(3, 5, full(3, 5), {1}, RelationKind::Eq);
  EXPECT_EQ(seqbin_count({5, 5, 5}, eq), 1);
  EXPECT_EQ(eq.b(0).kind(), RelationKind::True);
}

TEST(Change, RejectsOtherRelations) {
  EXPECT_THROW(make_change(3, 2, full(3, 2), {1}, RelationKind::AbsGt), std::invalid_argument);
  EXPECT_THROW(make_change(3, 2, full(3, 2), {1}, RelationKind::True), std::invalid_argument);
  EXPECT_THROW(make_change(3, 2, full(2, 2), {1}, RelationKind::Eq), std::invalid_argument);
}

TEST(Change, LtAndLeqAreCountingContinuous) {
  for (auto op : {RelationKind::Lt, RelationKind::Leq}) {
    EXPECT_TRUE(is_counting_continuous(make_change(4, 3, full(4, 3), {1}, op)));
  }
}

TEST(Smooth, Examples) {
  const Instance s = make_smooth(3, 3, full(3, 3), {1, 2, 3}, 1);
  EXPECT_EQ(seqbin_count({0, 3, 3}, s), 2);
  EXPECT_THROW(make_smooth(3, 3, full(3, 3), {1}, -1), std::invalid_argument);
}

TEST(Smooth, LargeCstForcesEveryViolation) {
  const Instance s = make_smooth(4, 3, full(4, 3), {1, 2, 3, 4}, 3);
  const ExplicitCostTable ct = exact_cost_sets(s);
  EXPECT_EQ(ct.achievable, (std::vector<int>{4}));
  const PropagationResult r = propagate(s);
  EXPECT_EQ(r.n_domain, (std::vector<int>{4}));
  EXPECT_TRUE(r.removed.empty());
}

TEST(Smooth, ZeroCstIsChangeNeq) {
  for (Value d = 0; d <= 6; ++d) {
    const Instance s = make_smooth(2, d, full(2, d), {1}, 0);
    const Instance c = make_change(2, d, full(2, d), {1}, RelationKind::Neq);
    EXPECT_TRUE(s.c(0).same_tuples(c.c(0)));
  }
}

TEST(IncreasingNValue, Examples) {
  const Instance inc = make_increasing_nvalue(3, 2, full(3, 2), {1, 2, 3});
  EXPECT_EQ(seqbin_count({1, 1, 2}, inc), 2);
  EXPECT_EQ(seqbin_count({2, 2, 2}, inc), 1);
  EXPECT_THROW(seqbin_count({2, 1, 2}, inc), std::invalid_argument);
}

TEST(IncreasingNValue, TwoValuesCannotReachThree) {
  const Instance inst = make_increasing_nvalue(3, 2, {{1, 2}, {1, 2}, {1, 2}}, {3});
  EXPECT_TRUE(brute_force_dc(inst).failed());
  EXPECT_TRUE(propagate(inst).failed());
}

TEST(IncreasingNValue, CountIsDistinctValues) {
  const Instance inc = make_increasing_nvalue(5, 3, full(5, 3), {1, 2, 3, 4, 5});
  for_each_coherent(inc, [&](const std::vector<Value>& a, int k) {
    ASSERT_TRUE(std::is_sorted(a.begin(), a.end()));
    ASSERT_EQ(k + 1, static_cast<int>(std::set<Value>(a.begin(), a.end()).size()));
  });
}

TEST(Catalog, AutoSelectsConvex) {
  for (auto op : kChangeOps) EXPECT_EQ(select_engine(make_change(3, 4, full(3, 4), {1}, op)), Engine::Convex);
  for (int cst : {0, 1, 2}) EXPECT_EQ(select_engine(make_smooth(3, 4, full(3, 4), {1}, cst)), Engine::Convex);
  EXPECT_EQ(select_engine(make_increasing_nvalue(3, 4, full(3, 4), {1})), Engine::Convex);
}

// Oracle counts agree with the graph and every engine reaches the DC fixpoint.
TEST(Catalog, RandomInstancesAgreeWithOracle) {
  std::mt19937 rng(77);
  std::vector<std::function<Instance(int, Value)>> makers;
  for (auto op : kChangeOps) {
    makers.push_back([&, op](int n, Value d) { return make_change(n, d, random_domains(rng, n, d), random_n(rng, n), op); });
  }
  for (int cst : {0, 1, 2}) {
    makers.push_back(
        [&, cst](int n, Value d) { return make_smooth(n, d, random_domains(rng, n, d), random_n(rng, n), cst); });
  }
  makers.push_back([&](int n, Value d) { return make_increasing_nvalue(n, d, random_domains(rng, n, d), random_n(rng, n)); });
  for (const auto& make : makers) {
    for (int it = 0; it < 60; ++it) {
      const Instance inst = make(2 + it % 6, 2 + it % 4);
      const PropagationResult want = brute_force_dc(inst);
      const PropagationResult got = propagate(inst);
      ASSERT_EQ(got.mode, Engine::Convex);
      ASSERT_EQ(got.status, want.status);
      if (!want.failed()) {
        ASSERT_EQ(got.domains, want.domains);
        ASSERT_EQ(got.n_domain, want.n_domain);
      }
    }
  }
}

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "seqbin/seqbin.hpp"
#include "test_support.hpp"

using namespace seqbin;
using namespace testing_support;

namespace {

bool reference_holds(RelationKind k, int cst, int j, int v) {
  switch (k) {
    case RelationKind::True: return true;
    case RelationKind::Eq: return j == v;
    case RelationKind::Neq: return j != v;
    case RelationKind::Lt: return j < v;
    case RelationKind::Leq: return j <= v;
    case RelationKind::Gt: return j > v;
    case RelationKind::Geq: return j >= v;
    case RelationKind::AbsGt: return std::abs(j - v) > cst;
    default: return false;
  }
}

const RelationKind kBuiltins[] = {RelationKind::True, RelationKind::Eq, RelationKind::Neq, RelationKind::Lt,
                                  RelationKind::Leq,  RelationKind::Gt, RelationKind::Geq, RelationKind::AbsGt};

}  // namespace

TEST(Ordering, RejectsNonPermutation) {
  EXPECT_THROW(Ordering({0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(Ordering({0, 3}), std::invalid_argument);
  const Ordering o({2, 0, 1});
  EXPECT_EQ(o.bottom(), 2);
  EXPECT_EQ(o.top(), 1);
  EXPECT_TRUE(o.precedes(0, 1));
  EXPECT_EQ(o.rank(2), 0);
}

TEST(BinaryRelation, BuiltinTablesMatchDefinitions) {
  for (Value d = 0; d <= 6; ++d) {
    for (RelationKind k : kBuiltins) {
      for (int cst : {0, 1, 2, 7}) {
        if (k != RelationKind::AbsGt && cst) continue;
        const BinaryRelation r = BinaryRelation::builtin(k, d, cst);
        EXPECT_EQ(r.kind(), k);
        for (Value j = 0; j <= d; ++j) {
          for (Value v = 0; v <= d; ++v) {
            ASSERT_EQ(r.contains(j, v), reference_holds(k, cst, j, v)) << to_string(k) << " " << j << "," << v;
            ASSERT_EQ(r.cost(j, v), reference_holds(k, cst, j, v) ? 0 : 1);
          }
        }
      }
    }
  }
}

TEST(BinaryRelation, NamesRoundTrip) {
  for (RelationKind k : kBuiltins) EXPECT_EQ(relation_kind_from_name(to_string(k)), k);
  EXPECT_FALSE(relation_kind_from_name("table"));
  EXPECT_FALSE(relation_kind_from_name("less"));
}

TEST(BinaryRelation, TablesAreNotRetagged) {
  const BinaryRelation t = BinaryRelation::from_pairs(1, {{0, 0}, {1, 1}});
  EXPECT_EQ(t.kind(), RelationKind::Table);
  EXPECT_TRUE(t.same_tuples(BinaryRelation::builtin(RelationKind::Eq, 1)));
  EXPECT_THROW(BinaryRelation::from_pairs(1, {{0, 2}}), std::invalid_argument);
}

TEST(BinaryRelation, TransposeAndComplement) {
  const BinaryRelation lt = BinaryRelation::builtin(RelationKind::Lt, 4);
  EXPECT_TRUE(lt.transposed().same_tuples(BinaryRelation::builtin(RelationKind::Gt, 4)));
  EXPECT_TRUE(lt.complement().same_tuples(BinaryRelation::builtin(RelationKind::Geq, 4)));
}

TEST(Monotone, Examples) {
  EXPECT_TRUE(is_monotone(BinaryRelation::builtin(RelationKind::True, 3), Ordering::identity(3)));
  EXPECT_TRUE(is_monotone(multi_pass_b(), Ordering::identity(3)));
  EXPECT_FALSE(is_monotone(BinaryRelation::builtin(RelationKind::Leq, 3), Ordering::identity(3)));
  EXPECT_THROW(is_monotone(multi_pass_b(), Ordering::identity(2)), std::invalid_argument);
}

TEST(Monotone, MatchesClosureDefinition) {
  std::mt19937 rng(3);
  for (int it = 0; it < 3000; ++it) {
    const Value d = 1 + it % 4;
    const BinaryRelation b = random_c(rng, d, 0.7);
    std::vector<Value> perm(d + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Ordering pi(perm);
    bool closed = true;
    for (Value j = 0; j <= d; ++j) {
      for (Value k = 0; k <= d; ++k) {
        if (!b.contains(j, k)) continue;
        for (Value w = 0; w <= d; ++w) {
          if (pi.rank(w) >= pi.rank(j) && !b.contains(w, k)) closed = false;
          if (pi.rank(w) >= pi.rank(k) && !b.contains(j, w)) closed = false;
        }
      }
    }
    ASSERT_EQ(is_monotone(b, pi), closed);
  }
}

TEST(Convexity, Examples) {
  const auto eq = BinaryRelation::builtin(RelationKind::Eq, 5);
  const auto neq = BinaryRelation::builtin(RelationKind::Neq, 5);
  EXPECT_TRUE(is_row_convex(eq));
  EXPECT_TRUE(is_col_convex(eq));
  EXPECT_FALSE(is_row_convex(neq));
  EXPECT_FALSE(is_col_convex(neq));
  EXPECT_TRUE(is_row_convex(neq.complement()));
  EXPECT_TRUE(is_row_convex(BinaryRelation::builtin(RelationKind::True, 5)));
  EXPECT_TRUE(is_row_convex(BinaryRelation::builtin(RelationKind::AbsGt, 5, 1).complement()));
}

TEST(Convexity, RowEqualsTransposedColumn) {
  std::mt19937 rng(9);
  for (int it = 0; it < 2000; ++it) {
    const BinaryRelation c = random_c(rng, 1 + it % 5, 0.5);
    ASSERT_EQ(is_row_convex(c), is_col_convex(c.transposed()));
    ASSERT_EQ(is_col_convex(c), is_row_convex(c.transposed()));
  }
}

TEST(MonotoneOrder, Examples) {
  EXPECT_FALSE(find_monotone_order(BinaryRelation::builtin(RelationKind::Geq, 3)));
  EXPECT_EQ(find_monotone_order(BinaryRelation::builtin(RelationKind::True, 3)), Ordering::identity(3));
  EXPECT_EQ(find_monotone_order(BinaryRelation::from_pairs(1, {{0, 1}, {1, 1}})), Ordering::identity(1));
  const auto rev = BinaryRelation::from_pairs(1, {{0, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(find_monotone_order(rev), Ordering::reversed(1));
}

TEST(MonotoneOrder, FoundOrdersAreMonotone) {
  std::mt19937 rng(12);
  int found = 0;
  for (int it = 0; it < 500; ++it) {
    const Value d = 1 + it % 4;
    std::vector<Value> perm(d + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    // relabel a monotone relation so that only a shuffled order works
    const BinaryRelation base = random_monotone_b(rng, d);
    const BinaryRelation b =
        BinaryRelation::from_predicate(d, [&](Value j, Value k) { return base.contains(perm[j], perm[k]); });
    auto o = find_monotone_order(b);
    ASSERT_TRUE(o);
    ASSERT_TRUE(is_monotone(b, *o));
    ++found;
  }
  EXPECT_EQ(found, 500);
}

// On a DC-filtered chain with monotone B, the top value of each domain is
// compatible with every value of both neighbours.
TEST(Monotone, TopValueSupportsNeighbours) {
  std::mt19937 rng(8);
  for (int it = 0; it < 800; ++it) {
    const Instance inst = random_monotone_instance(rng, 2 + it % 6, 2 + it % 4, it % 2);
    const PropagationResult r = brute_force_dc(inst);
    if (r.failed()) continue;
    for (int i = 0; i + 1 < inst.n; ++i) {
      const Value top_i = r.domains[i].back();
      const Value top_next = r.domains[i + 1].back();
      for (Value v : r.domains[i + 1]) ASSERT_TRUE(inst.b(i).contains(top_i, v));
      for (Value u : r.domains[i]) ASSERT_TRUE(inst.b(i).contains(u, top_next));
    }
  }
}

TEST(CountingContinuous, Examples) {
  const Instance inc = make_increasing_nvalue(3, 2, {full_domain(2), full_domain(2), full_domain(2)}, {1, 2, 3});
  EXPECT_TRUE(is_counting_continuous(inc));
  EXPECT_FALSE(is_counting_continuous(alternating_chain()));
  const Instance single = make_instance({{0, 1}}, {1}, BinaryRelation::builtin(RelationKind::True, 1),
                                        BinaryRelation::builtin(RelationKind::Eq, 1));
  EXPECT_TRUE(is_counting_continuous(single));
}

TEST(CountingContinuous, ChangeLtAndLeq) {
  for (auto op : {RelationKind::Lt, RelationKind::Leq}) {
    const Instance inst = make_change(4, 3, std::vector<Domain>(4, full_domain(3)), {1}, op);
    EXPECT_TRUE(is_counting_continuous(inst)) << to_string(op);
  }
}

TEST(CountingContinuous, GuardRefuses) {
  const Instance big = make_change(12, 9, std::vector<Domain>(12, full_domain(9)), {1}, RelationKind::Eq);
  EXPECT_THROW(is_counting_continuous(big), GuardExceeded);
}

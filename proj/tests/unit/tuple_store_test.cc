#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"
#include "swarmcit/errors.h"
#include "swarmcit/tuple_store.h"

namespace swarmcit {
namespace {

using testing::running_example_model;

TupleStore pruned_running_example() {
  const auto model = running_example_model();
  TupleStore store = TupleStore::build(model);
  store.prune_constrained(model.constraints());
  return store;
}

TEST(TupleStoreBuild, Sizes) {
  const std::vector<int> binary{2, 2, 2};
  TupleStore a(binary, 2);
  EXPECT_EQ(a.bucket_count(), 3u);
  EXPECT_EQ(a.uncovered_total(), 12u);

  const std::vector<int> ternary{3, 3, 3, 3};
  TupleStore b(ternary, 2);
  EXPECT_EQ(b.bucket_count(), 6u);
  EXPECT_EQ(b.uncovered_total(), 54u);

  const std::vector<int> single{2};
  TupleStore c(single, 1);
  EXPECT_EQ(c.bucket_count(), 1u);
  EXPECT_EQ(c.uncovered_total(), 2u);
}

TEST(TupleStoreBuild, BucketsSortedAndKeyed) {
  const std::vector<int> values{2, 3, 4, 2};
  TupleStore store(values, 3);
  for (std::size_t b = 0; b < store.bucket_count(); ++b) {
    const auto& bucket = store.bucket(b);
    EXPECT_EQ(store.find_bucket(bucket.combination), b);
    for (std::size_t i = 1; i < bucket.size(); ++i) {
      auto prev = bucket.tuple(i - 1);
      auto cur = bucket.tuple(i);
      EXPECT_TRUE(std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end()));
    }
  }
  EXPECT_FALSE(store.find_bucket(std::vector{0, 0, 1}));
}

TEST(TupleStoreBuild, TooLargeUniverse) {
  const std::vector<int> values(60, 40);
  EXPECT_THROW(TupleStore(values, 6), CapacityError);
}

TEST(PruneConstrained, RunningExampleRemovesTwo) {
  const auto model = running_example_model();
  TupleStore store = TupleStore::build(model);
  EXPECT_EQ(store.prune_constrained(model.constraints()), 2u);
  EXPECT_EQ(store.uncovered_total(), 10u);
  EXPECT_EQ(store.removed_total(), 2u);
}

TEST(PruneConstrained, EmptySetRemovesNothing) {
  const std::vector<int> values{2, 2, 2};
  TupleStore store(values, 2);
  EXPECT_EQ(store.prune_constrained(ConstraintSet{}), 0u);
}

TEST(PruneConstrained, WiderThanStrengthRemovesNothing) {
  const std::vector<int> values{2, 2, 2};
  TupleStore store(values, 2);
  EXPECT_EQ(store.prune_constrained(ConstraintSet{ForbiddenTuple({{0, 0}, {1, 0}, {2, 0}})}),
            0u);
}

TEST(PruneConstrained, PartialOverlapSurvives) {
  const std::vector<int> values{2, 2, 2, 2};
  TupleStore store(values, 3);
  // Removes every triple containing (p0=1, p3=0): buckets {0,1,3} and {0,2,3}.
  EXPECT_EQ(store.prune_constrained(ConstraintSet{ForbiddenTuple({{0, 1}, {3, 0}})}), 4u);
}

TEST(CoveredCount, Examples) {
  const std::vector<int> values{2, 2, 2};
  TupleStore store(values, 2);
  const std::vector row{0, 0, 0};
  EXPECT_EQ(store.covered_count(row), 3u);
  store.mark_covered(row);
  EXPECT_EQ(store.covered_count(row), 0u);

  const auto pruned = pruned_running_example();
  EXPECT_EQ(pruned.covered_count(std::vector{0, 0, 1}), 2u);
}

TEST(MarkCovered, Examples) {
  const std::vector<int> values{2, 2, 2};
  TupleStore store(values, 2);
  EXPECT_EQ(store.mark_covered(std::vector{0, 0, 0}), 3u);
  EXPECT_EQ(store.uncovered_total(), 9u);
  EXPECT_EQ(store.mark_covered(std::vector{0, 0, 0}), 0u);

  auto pruned = pruned_running_example();
  EXPECT_EQ(pruned.mark_covered(std::vector{0, 0, 1}), 2u);
  EXPECT_EQ(pruned.uncovered_total(), 8u);
}

TEST(IsEmpty, Cases) {
  const std::vector<int> values{2, 2, 2};
  TupleStore store(values, 2);
  EXPECT_FALSE(store.is_empty());
  for (const auto& row : testing::all_rows(SystemModel(2, values))) store.mark_covered(row);
  EXPECT_TRUE(store.is_empty());

  const SystemModel all_forbidden(
      2, {2, 2},
      ConstraintSet{ForbiddenTuple({{0, 0}, {1, 0}}), ForbiddenTuple({{0, 0}, {1, 1}}),
                    ForbiddenTuple({{0, 1}, {1, 0}}), ForbiddenTuple({{0, 1}, {1, 1}})});
  TupleStore empty = TupleStore::build(all_forbidden);
  empty.prune_constrained(all_forbidden.constraints());
  EXPECT_TRUE(empty.is_empty());
}

TEST(RemoveTuple, OnlyOpenTuples) {
  auto store = pruned_running_example();
  EXPECT_TRUE(store.remove_tuple({{0, 1}, {0, 0}}));
  EXPECT_FALSE(store.remove_tuple({{0, 1}, {0, 0}}));
  EXPECT_FALSE(store.remove_tuple({{0, 2}, {0, 0}}));  // pruned already
  EXPECT_EQ(store.uncovered_total(), 9u);
  EXPECT_EQ(store.removed_total(), 3u);
}

TEST(TupleDump, StatesAndOrder) {
  auto store = pruned_running_example();
  store.mark_covered(std::vector{1, 1, 1});
  const auto& first = store.bucket(0);
  EXPECT_EQ(first.combination, (ParamCombination{0, 1}));
  EXPECT_EQ(first.states[3], TupleState::kCovered);
  EXPECT_EQ(std::string(to_string(store.bucket(1).states[0])), "removed");
  EXPECT_EQ(std::string(to_string(first.states[0])), "open");
}

// Hash store and linear scan agree on every query and every mark.
TEST(TupleStoreProperty, AgreesWithFullScan) {
  Rng rng(2024);
  for (int n = 0; n < 60; ++n) {
    const auto model = testing::random_model(rng, {8, 4, 6, 3});
    TupleStore store = TupleStore::build(model);
    testing::FullScanStore oracle(model.value_counts(), model.strength());
    ASSERT_EQ(store.prune_constrained(model.constraints()), oracle.prune(model.constraints()));
    std::vector<int> row(static_cast<std::size_t>(model.parameter_count()));
    for (int q = 0; q < 40; ++q) {
      for (int p = 0; p < model.parameter_count(); ++p) row[p] = rng.below(model.value_count(p));
      QueryStats stats;
      ASSERT_EQ(store.covered_count(row, &stats), oracle.count(row));
      ASSERT_FALSE(stats.bound_violated);
      for (int p = 0; p < model.parameter_count(); ++p) {
        std::uint64_t expected = 0;
        for (std::size_t b = 0; b < store.bucket_count(); ++b) {
          const auto& c = store.bucket(b).combination;
          if (std::find(c.begin(), c.end(), p) == c.end()) continue;
          std::vector<int> key;
          for (int x : c) key.push_back(row[x]);
          const auto hit = *store.find_tuple(b, key);
          if (store.bucket(b).states[hit] == TupleState::kOpen) ++expected;
        }
        ASSERT_EQ(store.covered_count_at(row, p), expected);
      }
      if (q % 3 == 0) {
        ASSERT_EQ(store.mark_covered(row), oracle.mark(row));
        ASSERT_EQ(store.uncovered_total(), oracle.open_count());
      }
    }
  }
}

TEST(TupleStoreProperty, ComparisonsWithinBinarySearchBound) {
  const std::vector<int> values{9, 7, 5, 8};
  TupleStore store(values, 3);
  for (std::size_t b = 0; b < store.bucket_count(); ++b) {
    const auto& bucket = store.bucket(b);
    const auto bound = static_cast<std::uint64_t>(std::ceil(std::log2(bucket.size()))) + 3;
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      std::uint64_t comparisons = 0;
      auto tuple = bucket.tuple(i);
      ASSERT_EQ(store.find_tuple(b, tuple, &comparisons), i);
      ASSERT_LE(comparisons, bound);
    }
  }
}

TEST(TupleStoreProperty, CoverageIsConserved) {
  Rng rng(77);
  for (int n = 0; n < 30; ++n) {
    const auto model = testing::random_model(rng, {6, 3, 5, 3});
    TupleStore store = TupleStore::build(model);
    store.prune_constrained(model.constraints());
    const auto start = store.uncovered_total();
    std::uint64_t sum = 0;
    for (const auto& row : testing::all_rows(model)) sum += store.mark_covered(row);
    EXPECT_EQ(sum, start);
    EXPECT_TRUE(store.is_empty());
    EXPECT_EQ(store.covered_total() + store.removed_total(), store.initial_total());
  }
}

}  // namespace
}  // namespace swarmcit

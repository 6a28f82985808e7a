#include <gtest/gtest.h>

#include <stdexcept>

#include "oracles.h"
#include "swarmcit/combinations.h"

namespace swarmcit {
namespace {

using Combos = std::vector<ParamCombination>;

TEST(GenerateCombinations, ThreeChooseTwo) {
  EXPECT_EQ(generate_combinations(3, 2), (Combos{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(GenerateCombinations, AllOfThem) {
  EXPECT_EQ(generate_combinations(4, 4), (Combos{{0, 1, 2, 3}}));
}

TEST(GenerateCombinations, FiveChooseThree) {
  const auto combos = generate_combinations(5, 3);
  ASSERT_EQ(combos.size(), 10u);
  EXPECT_EQ(combos.front(), (ParamCombination{0, 1, 2}));
  EXPECT_EQ(combos.back(), (ParamCombination{2, 3, 4}));
}

TEST(GenerateCombinations, MatchesRecursiveEnumeratorUpToTwenty) {
  for (int k = 1; k <= 20; ++k) {
    for (int t = 1; t <= k; ++t) {
      if (testing::pascal(k, t) > 200'000) continue;  // the rest runs in acceptance
      ASSERT_EQ(generate_combinations(k, t), testing::recursive_combinations(k, t))
          << "k=" << k << " t=" << t;
    }
  }
}

TEST(GenerateCombinations, RejectsBadArguments) {
  EXPECT_THROW(generate_combinations(3, 0), std::invalid_argument);
  EXPECT_THROW(generate_combinations(3, 4), std::invalid_argument);
}

TEST(ForEachCombination, VisitsInLexicographicOrder) {
  ParamCombination previous;
  std::uint64_t n = 0;
  for_each_combination(12, 5, [&](std::span<const int> c) {
    ParamCombination current(c.begin(), c.end());
    if (n++ > 0) {
      EXPECT_LT(previous, current);
    }
    previous = std::move(current);
  });
  EXPECT_EQ(n, 792u);
}

TEST(CombinationCount, Examples) {
  EXPECT_EQ(combination_count(400, 2), 79800u);
  EXPECT_EQ(combination_count(10, 3), 120u);
  EXPECT_EQ(combination_count(17, 17), 1u);
  EXPECT_EQ(combination_count(1000, 6), 1'368'173'298'991'500ull);
}

TEST(CombinationCount, MatchesPascal) {
  for (int k = 1; k <= 60; ++k) {
    for (int t = 1; t <= k; ++t) {
      ASSERT_EQ(combination_count(k, t), testing::pascal(k, t)) << k << ' ' << t;
    }
  }
}

TEST(CombinationCount, OverflowIsReported) {
  EXPECT_THROW(combination_count(1000, 500), std::overflow_error);
  EXPECT_NO_THROW(combination_count(67, 33));
}

}  // namespace
}  // namespace swarmcit

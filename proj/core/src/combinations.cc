#include "swarmcit/combinations.h"

#include <numeric>

namespace swarmcit {

void check_combination_arguments(int k, int t) {
  if (t < 1) {
    throw std::invalid_argument("combination size t must be at least 1");
  }
  if (t > k) {
    throw std::invalid_argument("t exceeds k (t=" + std::to_string(t) +
                                ", k=" + std::to_string(k) + ")");
  }
}

std::uint64_t combination_count(int k, int t) {
  check_combination_arguments(k, t);
  if (t > k - t) t = k - t;
  std::uint64_t result = 1;
  for (int i = 0; i < t; ++i) {
    // result * (k - i) is divisible by (i + 1); reduce first so the product
    // only overflows when the final value would.
    std::uint64_t divisor = static_cast<std::uint64_t>(i) + 1;
    std::uint64_t g = std::gcd(result, divisor);
    result /= g;
    divisor /= g;
    std::uint64_t factor = static_cast<std::uint64_t>(k - i) / divisor;
    if (__builtin_mul_overflow(result, factor, &result)) {
      throw std::overflow_error("C(" + std::to_string(k) + ", " +
                                std::to_string(t) + ") overflows 64 bits");
    }
  }
  return result;
}

std::vector<ParamCombination> generate_combinations(int k, int t) {
  std::vector<ParamCombination> out;
  out.reserve(static_cast<std::size_t>(combination_count(k, t)));
  for_each_combination(k, t, [&](std::span<const int> comb) {
    out.emplace_back(comb.begin(), comb.end());
  });
  return out;
}

}  // namespace swarmcit

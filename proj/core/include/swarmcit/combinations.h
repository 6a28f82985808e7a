#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swarmcit {

// Strictly increasing parameter indices of length t.
using ParamCombination = std::vector<int>;

// Binomial coefficient C(k, t). Throws std::overflow_error when the result
// does not fit in 64 bits and std::invalid_argument unless 1 <= t <= k.
std::uint64_t combination_count(int k, int t);

void check_combination_arguments(int k, int t);

// Stack-driven enumeration of all t-combinations of {0, ..., k-1}.
//
// The stack holds, for every filled slot, the next candidate index for that
// slot. Each pass pops the top candidate and keeps writing increasing indices
// into the buffer, pushing each successor, until the buffer is full or the
// candidates run past k. Output order is lexicographic. `visit` receives a view
// of the internal buffer that is only valid for the duration of the call.
//
// Throws std::invalid_argument unless 1 <= t <= k.
template <typename Visitor>
void for_each_combination(int k, int t, Visitor&& visit) {
  check_combination_arguments(k, t);
  std::vector<int> comb(static_cast<std::size_t>(t));
  std::vector<int> stack;
  stack.reserve(static_cast<std::size_t>(t) + 1);
  stack.push_back(0);
  while (!stack.empty()) {
    auto i = stack.size() - 1;
    int v = stack.back();
    stack.pop_back();
    while (v < k) {
      comb[i] = v;
      ++i;
      ++v;
      stack.push_back(v);
      if (i == static_cast<std::size_t>(t)) {
        visit(std::span<const int>(comb));
        break;
      }
    }
  }
}

// All C(k, t) combinations in lexicographic order.
std::vector<ParamCombination> generate_combinations(int k, int t);

}  // namespace swarmcit

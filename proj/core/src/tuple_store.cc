#include "swarmcit/tuple_store.h"

#include <algorithm>
#include <bit>
#include <new>

#include "swarmcit/errors.h"

namespace swarmcit {
namespace {

constexpr std::uint64_t kMaxTuples = std::uint64_t{1} << 32;

int compare_key(std::span<const int> key, std::span<const int> tuple) {
  for (std::size_t j = 0; j < key.size(); ++j) {
    if (key[j] != tuple[j]) return key[j] < tuple[j] ? -1 : 1;
  }
  return 0;
}

std::uint64_t ceil_log2(std::uint64_t n) {
  return n <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(n - 1));
}

}  // namespace

const char* to_string(TupleState state) {
  switch (state) {
    case TupleState::kOpen:
      return "open";
    case TupleState::kCovered:
      return "covered";
    case TupleState::kRemoved:
      return "removed";
  }
  return "?";
}

std::size_t TupleStore::KeyHash::operator()(
    const ParamCombination& key) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (int p : key) {
    h ^= static_cast<std::size_t>(p) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

TupleStore::TupleStore(std::span<const int> value_counts, int strength)
    : strength_(strength), value_counts_(value_counts.begin(), value_counts.end()) {
  const int k = static_cast<int>(value_counts_.size());
  const std::uint64_t combos = combination_count(k, strength);

  // Size the universe first so an oversized model fails before allocating.
  std::uint64_t total = 0;
  bool overflow = false;
  for_each_combination(k, strength, [&](std::span<const int> comb) {
    if (overflow) return;
    std::uint64_t product = 1;
    for (int p : comb) {
      if (__builtin_mul_overflow(product, static_cast<std::uint64_t>(value_counts_[p]),
                                 &product)) {
        overflow = true;
        return;
      }
    }
    if (__builtin_add_overflow(total, product, &total)) overflow = true;
  });
  if (overflow || total > kMaxTuples) {
    throw CapacityError("tuple universe too large: " + std::to_string(combos) +
                            " parameter combinations" +
                            (overflow ? "" : " holding " + std::to_string(total) +
                                                 " tuples"),
                        combos);
  }

  try {
    buckets_.reserve(static_cast<std::size_t>(combos));
    index_.reserve(static_cast<std::size_t>(combos));
    std::vector<int> odometer(static_cast<std::size_t>(strength));
    for_each_combination(k, strength, [&](std::span<const int> comb) {
      Bucket b;
      b.combination.assign(comb.begin(), comb.end());
      std::size_t count = 1;
      for (int p : comb) count *= static_cast<std::size_t>(value_counts_[p]);
      b.values.reserve(count * comb.size());
      b.states.assign(count, TupleState::kOpen);
      b.open = count;
      // Odometer with the last position fastest yields sorted order.
      std::fill(odometer.begin(), odometer.end(), 0);
      for (std::size_t n = 0; n < count; ++n) {
        b.values.insert(b.values.end(), odometer.begin(), odometer.end());
        for (std::size_t j = comb.size(); j-- > 0;) {
          if (++odometer[j] < value_counts_[comb[j]]) break;
          odometer[j] = 0;
        }
      }
      index_.emplace(b.combination, buckets_.size());
      buckets_.push_back(std::move(b));
    });
    buckets_by_param_.resize(value_counts_.size());
    for (std::size_t i = 0; i < buckets_.size(); ++i) {
      for (int p : buckets_[i].combination) {
        buckets_by_param_[static_cast<std::size_t>(p)].push_back(i);
      }
    }
  } catch (const std::bad_alloc&) {
    throw CapacityError("out of memory building " + std::to_string(total) +
                            " tuples over " + std::to_string(combos) +
                            " parameter combinations",
                        combos);
  }
  initial_ = total;
  uncovered_ = total;
}

TupleStore TupleStore::build(const SystemModel& model) {
  return TupleStore(model.value_counts(), model.strength());
}

std::uint64_t TupleStore::prune_constrained(const ConstraintSet& constraints) {
  std::uint64_t removed = 0;
  std::vector<std::size_t> positions;
  for (const auto& forbidden : constraints) {
    if (forbidden.size() > static_cast<std::size_t>(strength_)) continue;
    for (auto& b : buckets_) {
      // Where each forbidden parameter sits inside this combination, if at all.
      positions.clear();
      std::size_t j = 0;
      for (const auto& a : forbidden.assignments()) {
        while (j < b.combination.size() && b.combination[j] < a.param) ++j;
        if (j == b.combination.size() || b.combination[j] != a.param) break;
        positions.push_back(j);
      }
      if (positions.size() != forbidden.size()) continue;
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (b.states[i] != TupleState::kOpen) continue;
        auto tuple = b.tuple(i);
        bool contained = true;
        for (std::size_t n = 0; n < positions.size(); ++n) {
          if (tuple[positions[n]] != forbidden.assignments()[n].value) {
            contained = false;
            break;
          }
        }
        if (contained) {
          b.states[i] = TupleState::kRemoved;
          --b.open;
          ++removed;
        }
      }
    }
  }
  removed_ += removed;
  uncovered_ -= removed;
  return removed;
}

std::optional<std::size_t> TupleStore::find_tuple(std::size_t bucket,
                                                  std::span<const int> values,
                                                  std::uint64_t* comparisons) const {
  const Bucket& b = buckets_[bucket];
  std::size_t lo = 0;
  std::size_t hi = b.size();
  std::uint64_t count = 0;
  std::optional<std::size_t> found;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    ++count;
    int c = compare_key(values, b.tuple(mid));
    if (c == 0) {
      found = mid;
      break;
    }
    if (c < 0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (comparisons) *comparisons = count;
  return found;
}

std::optional<std::size_t> TupleStore::locate(const Bucket& b,
                                              std::span<const int> row,
                                              std::vector<int>& key,
                                              std::uint64_t* comparisons) const {
  key.resize(b.combination.size());
  for (std::size_t j = 0; j < key.size(); ++j) {
    key[j] = row[static_cast<std::size_t>(b.combination[j])];
  }
  return find_tuple(static_cast<std::size_t>(&b - buckets_.data()), key,
                    comparisons);
}

std::uint64_t TupleStore::covered_count(std::span<const int> row,
                                        QueryStats* stats) const {
  std::uint64_t count = 0;
  std::vector<int> key;
  for (const auto& b : buckets_) {
    if (b.open == 0) continue;
    std::uint64_t comparisons = 0;
    auto hit = locate(b, row, key, stats ? &comparisons : nullptr);
    if (hit && b.states[*hit] == TupleState::kOpen) ++count;
    if (stats) {
      ++stats->buckets_searched;
      stats->comparisons += comparisons;
      if (comparisons > stats->max_bucket_comparisons) {
        stats->max_bucket_comparisons = comparisons;
        stats->max_bucket_size = b.size();
      }
      if (comparisons > ceil_log2(b.size()) + static_cast<std::uint64_t>(strength_)) {
        stats->bound_violated = true;
      }
    }
  }
  return count;
}

std::uint64_t TupleStore::covered_count_at(std::span<const int> row,
                                           int param) const {
  std::uint64_t count = 0;
  std::vector<int> key;
  for (std::size_t i : buckets_by_param_[static_cast<std::size_t>(param)]) {
    const Bucket& b = buckets_[i];
    if (b.open == 0) continue;
    auto hit = locate(b, row, key, nullptr);
    if (hit && b.states[*hit] == TupleState::kOpen) ++count;
  }
  return count;
}

std::uint64_t TupleStore::open_bucket_count() const {
  return static_cast<std::uint64_t>(
      std::count_if(buckets_.begin(), buckets_.end(),
                    [](const Bucket& b) { return b.open > 0; }));
}

std::uint64_t TupleStore::mark_covered(std::span<const int> row) {
  std::uint64_t count = 0;
  std::vector<int> key;
  for (auto& b : buckets_) {
    if (b.open == 0) continue;
    auto hit = locate(b, row, key, nullptr);
    if (hit && b.states[*hit] == TupleState::kOpen) {
      b.states[*hit] = TupleState::kCovered;
      --b.open;
      ++count;
    }
  }
  uncovered_ -= count;
  return count;
}

bool TupleStore::remove_tuple(const ValueTuple& tuple) {
  auto b = find_bucket(tuple.params);
  if (!b) return false;
  auto i = find_tuple(*b, tuple.values);
  auto& bucket = buckets_[*b];
  if (!i || bucket.states[*i] != TupleState::kOpen) return false;
  bucket.states[*i] = TupleState::kRemoved;
  --bucket.open;
  ++removed_;
  --uncovered_;
  return true;
}

std::optional<std::size_t> TupleStore::find_bucket(
    std::span<const int> combination) const {
  auto it = index_.find(ParamCombination(combination.begin(), combination.end()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<ValueTuple> TupleStore::open_tuples() const {
  std::vector<ValueTuple> out;
  for (const auto& b : buckets_) {
    if (b.open == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b.states[i] != TupleState::kOpen) continue;
      auto values = b.tuple(i);
      out.push_back({b.combination, std::vector<int>(values.begin(), values.end())});
    }
  }
  return out;
}

}  // namespace swarmcit

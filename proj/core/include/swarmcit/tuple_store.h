#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "swarmcit/combinations.h"
#include "swarmcit/model.h"

namespace swarmcit {

enum class TupleState : std::uint8_t { kOpen, kCovered, kRemoved };

const char* to_string(TupleState state);

// Instrumentation for coverage queries. Counts tuple-versus-key comparisons
// made by the in-bucket binary search.
struct QueryStats {
  std::uint64_t buckets_searched = 0;
  std::uint64_t comparisons = 0;
  // Worst single-bucket comparison count, and that bucket's size.
  std::uint64_t max_bucket_comparisons = 0;
  std::uint64_t max_bucket_size = 0;
  // True if any bucket exceeded ceil(log2(size)) + t comparisons.
  bool bound_violated = false;
};

// All t-tuples of a model, bucketed by parameter combination.
//
// Each bucket is keyed by its combination (hash lookup) and holds the value
// vectors of that combination sorted lexicographically, so a row's tuple in a
// bucket is located by binary search. Tuples are never deleted: each carries an
// open/covered/removed flag, and uncovered_total() tracks the open ones.
//
// Queries (covered_count, find_tuple, is_empty) are const and may run from any
// number of threads. Mutations need exclusive access.
class TupleStore {
 public:
  struct Bucket {
    ParamCombination combination;
    std::vector<int> values;  // size() * t entries, row-major, sorted
    std::vector<TupleState> states;
    std::uint64_t open = 0;

    std::size_t size() const { return states.size(); }
    std::span<const int> tuple(std::size_t i) const {
      return std::span<const int>(values).subspan(i * combination.size(),
                                                  combination.size());
    }
  };

  // Every t-tuple over `value_counts`, all open. t == 1 is accepted here.
  // Throws std::invalid_argument for t outside [1, k] and CapacityError when
  // the universe is too large to hold.
  TupleStore(std::span<const int> value_counts, int strength);

  static TupleStore build(const SystemModel& model);

  // Flags as removed every open tuple that contains a forbidden tuple of size
  // <= t. Returns the number of tuples removed.
  std::uint64_t prune_constrained(const ConstraintSet& constraints);

  // Number of open tuples `row` would cover. Read-only.
  std::uint64_t covered_count(std::span<const int> row,
                              QueryStats* stats = nullptr) const;

  // covered_count restricted to the buckets whose combination contains
  // `param`. Used for single-dimension moves.
  std::uint64_t covered_count_at(std::span<const int> row, int param) const;

  // Upper bound on covered_count for any row: buckets with an open tuple.
  std::uint64_t open_bucket_count() const;

  // Flags every open tuple covered by `row` as covered and returns how many
  // changed.
  std::uint64_t mark_covered(std::span<const int> row);

  // Flags one open tuple as removed, for tuples found to be uncoverable after
  // pruning. Returns false if it is not open.
  bool remove_tuple(const ValueTuple& tuple);

  bool is_empty() const { return uncovered_ == 0; }
  std::uint64_t uncovered_total() const { return uncovered_; }
  std::uint64_t initial_total() const { return initial_; }
  std::uint64_t removed_total() const { return removed_; }
  std::uint64_t covered_total() const { return initial_ - removed_ - uncovered_; }

  int strength() const { return strength_; }
  std::span<const int> value_counts() const { return value_counts_; }

  std::size_t bucket_count() const { return buckets_.size(); }
  const Bucket& bucket(std::size_t i) const { return buckets_[i]; }

  // Bucket index for a combination key.
  std::optional<std::size_t> find_bucket(std::span<const int> combination) const;

  // Position of `values` inside its bucket, by binary search.
  std::optional<std::size_t> find_tuple(std::size_t bucket,
                                        std::span<const int> values,
                                        std::uint64_t* comparisons = nullptr) const;

  std::vector<ValueTuple> open_tuples() const;

 private:
  struct KeyHash {
    std::size_t operator()(const ParamCombination& key) const noexcept;
  };

  // Locates the tuple `row` selects in bucket b.
  std::optional<std::size_t> locate(const Bucket& b, std::span<const int> row,
                                    std::vector<int>& key,
                                    std::uint64_t* comparisons) const;

  int strength_;
  std::vector<int> value_counts_;
  std::vector<Bucket> buckets_;
  std::unordered_map<ParamCombination, std::size_t, KeyHash> index_;
  std::vector<std::vector<std::size_t>> buckets_by_param_;
  std::uint64_t initial_ = 0;
  std::uint64_t removed_ = 0;
  std::uint64_t uncovered_ = 0;
};

}  // namespace swarmcit

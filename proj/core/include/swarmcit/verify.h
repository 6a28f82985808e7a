#pragma once

#include <cstdint>
#include <vector>

#include "swarmcit/model.h"

namespace swarmcit {

struct RowViolation {
  std::size_t row = 0;
  ForbiddenTuple tuple;
};

struct VerificationResult {
  std::uint64_t valid_tuples = 0;  // t-tuples containing no forbidden tuple of size <= t
  std::uint64_t covered = 0;       // of those, covered by at least one row
  std::vector<ValueTuple> missing;
  // Uncovered valid tuples that no violation-free row can contain, so no suite
  // could cover them. Not counted as missing.
  std::vector<ValueTuple> uncoverable;
  std::vector<RowViolation> violating_rows;
  bool passed = false;
};

// Brute-force audit of a finished suite. Enumerates every t-tuple by plain
// nested iteration, drops the ones containing a forbidden tuple, and reports
// any the suite misses; then scans every row against every forbidden tuple.
// Each uncovered tuple is tried against an exhaustive search for a
// violation-free row containing it, and lands in `uncoverable` if none exists.
// Independent of TupleStore and the combination generator.
//
// Throws ModelError if a row does not fit the model.
VerificationResult check(const TestSuite& suite, const SystemModel& model);

// One-row-at-a-time greedy baseline for size comparison. Each row starts from
// a random open tuple; the remaining parameters are visited in random order
// and take the value that covers the most open tuples among those that keep
// the row violation-free, backtracking one parameter on a dead end.
//
// A seed tuple the greedy pass cannot extend gets an exhaustive search; tuples
// that fit no violation-free row are skipped. Throws StuckTuples when that
// search runs out of budget for every remaining open tuple.
TestSuite greedy_baseline(const SystemModel& model, std::uint64_t seed);

}  // namespace swarmcit

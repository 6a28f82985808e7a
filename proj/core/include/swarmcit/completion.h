#pragma once

#include <cstdint>
#include <vector>

#include "swarmcit/model.h"

namespace swarmcit {

enum class Completion { kFound, kInfeasible, kUnknown };

struct CompletionResult {
  Completion status = Completion::kUnknown;
  std::vector<int> row;  // a violation-free row containing the tuple when found
  std::uint64_t nodes = 0;
};

// Depth-first search for a violation-free row that contains `tuple`. Only
// parameters named by some forbidden tuple are searched; the others take
// value 0. Gives up with kUnknown after `node_budget` value assignments.
CompletionResult complete_row(const SystemModel& model, const ValueTuple& tuple,
                              std::uint64_t node_budget);

}  // namespace swarmcit

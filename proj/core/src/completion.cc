#include "swarmcit/completion.h"

namespace swarmcit {
namespace {

class Search {
 public:
  Search(const SystemModel& model, std::uint64_t budget)
      : model_(model), budget_(budget) {
    const auto k = static_cast<std::size_t>(model.parameter_count());
    through_.resize(k);
    for (const auto& f : model.constraints()) {
      for (const auto& a : f.assignments()) {
        through_[static_cast<std::size_t>(a.param)].push_back(&f);
      }
    }
    row_.assign(k, -1);
  }

  CompletionResult run(const ValueTuple& tuple) {
    CompletionResult result;
    for (std::size_t j = 0; j < tuple.params.size(); ++j) {
      row_[static_cast<std::size_t>(tuple.params[j])] = tuple.values[j];
    }
    for (int p : tuple.params) {
      if (violated_at(p)) {
        result.status = Completion::kInfeasible;
        return result;
      }
    }
    for (std::size_t p = 0; p < row_.size(); ++p) {
      if (row_[p] >= 0) continue;
      if (through_[p].empty()) {
        row_[p] = 0;
      } else {
        free_.push_back(static_cast<int>(p));
      }
    }
    const bool found = descend(0);
    result.nodes = nodes_;
    if (found) {
      result.status = Completion::kFound;
      result.row = row_;
    } else {
      result.status = out_of_budget_ ? Completion::kUnknown : Completion::kInfeasible;
    }
    return result;
  }

 private:
  bool violated_at(int p) const {
    for (const ForbiddenTuple* f : through_[static_cast<std::size_t>(p)]) {
      bool all = true;
      for (const auto& a : f->assignments()) {
        if (row_[static_cast<std::size_t>(a.param)] != a.value) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  }

  bool descend(std::size_t depth) {
    if (depth == free_.size()) return true;
    const int p = free_[depth];
    auto& slot = row_[static_cast<std::size_t>(p)];
    for (int v = 0; v < model_.value_count(p); ++v) {
      if (++nodes_ > budget_) {
        out_of_budget_ = true;
        slot = -1;
        return false;
      }
      slot = v;
      if (!violated_at(p) && descend(depth + 1)) return true;
      if (out_of_budget_) break;
    }
    slot = -1;
    return false;
  }

  const SystemModel& model_;
  std::uint64_t budget_;
  std::vector<std::vector<const ForbiddenTuple*>> through_;
  std::vector<int> row_;
  std::vector<int> free_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
};

}  // namespace

CompletionResult complete_row(const SystemModel& model, const ValueTuple& tuple,
                              std::uint64_t node_budget) {
  return Search(model, node_budget).run(tuple);
}

}  // namespace swarmcit

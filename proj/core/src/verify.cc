#include "swarmcit/verify.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "swarmcit/errors.h"
#include "swarmcit/random.h"

namespace swarmcit {
namespace {

// Every t-tuple of a model, laid out as one flag array per parameter
// combination indexed by mixed radix (last parameter fastest). Deliberately
// separate from TupleStore so the two can check each other.
class Universe {
 public:
  struct Group {
    std::vector<int> params;
    std::vector<std::size_t> strides;
    std::vector<char> valid;
    std::vector<char> covered;
  };

  explicit Universe(const SystemModel& model) : model_(model) {
    std::vector<int> current;
    enumerate(0, current);
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      lookup_.emplace(key(groups_[g].params), g);
      fill_validity(groups_[g]);
    }
  }

  std::vector<Group>& groups() { return groups_; }
  const std::vector<Group>& groups() const { return groups_; }

  const Group* find(const std::vector<int>& params) const {
    auto it = lookup_.find(key(params));
    return it == lookup_.end() ? nullptr : &groups_[it->second];
  }

  static std::size_t index_of(const Group& g, std::span<const int> row) {
    std::size_t index = 0;
    for (std::size_t j = 0; j < g.params.size(); ++j) {
      index += static_cast<std::size_t>(row[static_cast<std::size_t>(g.params[j])]) * g.strides[j];
    }
    return index;
  }

  std::vector<int> decode(const Group& g, std::size_t index) const {
    std::vector<int> values(g.params.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      values[j] = static_cast<int>(index / g.strides[j]);
      index %= g.strides[j];
    }
    return values;
  }

  // Marks every tuple of `row` covered; returns how many were valid and open.
  std::uint64_t cover(std::span<const int> row) {
    std::uint64_t fresh = 0;
    for (auto& g : groups_) {
      std::size_t i = index_of(g, row);
      if (g.valid[i] && !g.covered[i]) ++fresh;
      g.covered[i] = 1;
    }
    return fresh;
  }

 private:
  static std::string key(const std::vector<int>& params) {
    return std::string(reinterpret_cast<const char*>(params.data()),
                       params.size() * sizeof(int));
  }

  void enumerate(int next, std::vector<int>& current) {
    if (static_cast<int>(current.size()) == model_.strength()) {
      Group g;
      g.params = current;
      g.strides.assign(current.size(), 1);
      std::size_t size = 1;
      for (std::size_t j = current.size(); j-- > 0;) {
        g.strides[j] = size;
        size *= static_cast<std::size_t>(model_.value_count(current[j]));
      }
      g.valid.assign(size, 1);
      g.covered.assign(size, 0);
      groups_.push_back(std::move(g));
      return;
    }
    for (int p = next; p < model_.parameter_count(); ++p) {
      current.push_back(p);
      enumerate(p + 1, current);
      current.pop_back();
    }
  }

  void fill_validity(Group& g) const {
    for (std::size_t i = 0; i < g.valid.size(); ++i) {
      const auto values = decode(g, i);
      for (const auto& forbidden : model_.constraints()) {
        if (forbidden.size() > g.params.size()) continue;
        bool contained = true;
        for (const auto& a : forbidden.assignments()) {
          auto it = std::find(g.params.begin(), g.params.end(), a.param);
          if (it == g.params.end() || values[static_cast<std::size_t>(it - g.params.begin())] != a.value) {
            contained = false;
            break;
          }
        }
        if (contained) {
          g.valid[i] = 0;
          break;
        }
      }
    }
  }

  const SystemModel& model_;
  std::vector<Group> groups_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

enum class Extends { kYes, kNo, kUnknown };

// Exhaustive search for a violation-free row agreeing with (params, values).
// Parameters outside every forbidden tuple cannot cause a violation and are
// left at 0. Counts value trials against `budget`.
Extends extend(const SystemModel& model, const std::vector<int>& params,
               const std::vector<int>& values, std::uint64_t budget,
               std::vector<int>* out) {
  const int k = model.parameter_count();
  std::vector<int> row(static_cast<std::size_t>(k), -1);
  std::vector<char> constrained(static_cast<std::size_t>(k), 0);
  for (const auto& f : model.constraints()) {
    for (const auto& a : f.assignments()) constrained[static_cast<std::size_t>(a.param)] = 1;
  }
  for (std::size_t j = 0; j < params.size(); ++j) {
    row[static_cast<std::size_t>(params[j])] = values[j];
  }
  std::vector<int> order;
  for (int p = 0; p < k; ++p) {
    if (row[static_cast<std::size_t>(p)] >= 0) continue;
    if (constrained[static_cast<std::size_t>(p)]) {
      order.push_back(p);
    } else {
      row[static_cast<std::size_t>(p)] = 0;
    }
  }

  // True when some forbidden tuple is fully assigned and matched.
  auto violated = [&] {
    for (const auto& f : model.constraints()) {
      bool all = true;
      for (const auto& a : f.assignments()) {
        if (row[static_cast<std::size_t>(a.param)] != a.value) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  };

  std::uint64_t trials = 0;
  bool exhausted = false;
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (violated()) return false;
    if (depth == order.size()) return true;
    auto& slot = row[static_cast<std::size_t>(order[depth])];
    for (int v = 0; v < model.value_count(order[depth]); ++v) {
      if (++trials > budget) {
        exhausted = true;
        break;
      }
      slot = v;
      if (self(self, depth + 1)) return true;
    }
    slot = -1;
    return false;
  };
  if (search(search, 0)) {
    if (out) *out = row;
    return Extends::kYes;
  }
  return exhausted ? Extends::kUnknown : Extends::kNo;
}

}  // namespace

VerificationResult check(const TestSuite& suite, const SystemModel& model) {
  for (const auto& row : suite.rows) {
    if (!model.accepts(row.values())) {
      throw ModelError("suite row does not fit the model");
    }
  }

  VerificationResult result;
  Universe universe(model);
  for (const auto& row : suite.rows) universe.cover(row.values());
  for (const auto& g : universe.groups()) {
    for (std::size_t i = 0; i < g.valid.size(); ++i) {
      if (!g.valid[i]) continue;
      ++result.valid_tuples;
      if (g.covered[i]) {
        ++result.covered;
        continue;
      }
      auto values = universe.decode(g, i);
      const auto fits = extend(model, g.params, values,
                               std::numeric_limits<std::uint64_t>::max(), nullptr);
      if (fits == Extends::kNo) {
        result.uncoverable.push_back({g.params, std::move(values)});
      } else {
        result.missing.push_back({g.params, std::move(values)});
      }
    }
  }

  for (std::size_t r = 0; r < suite.rows.size(); ++r) {
    for (const auto& forbidden : model.constraints()) {
      if (forbidden.matches(suite.rows[r].values())) {
        result.violating_rows.push_back({r, forbidden});
      }
    }
  }
  result.passed = result.missing.empty() && result.violating_rows.empty();
  return result;
}

namespace {

class GreedyRowBuilder {
 public:
  GreedyRowBuilder(const SystemModel& model, const Universe& universe, Rng& rng)
      : model_(model), universe_(universe), rng_(rng) {
    by_param_.resize(static_cast<std::size_t>(model.parameter_count()));
    for (const auto& forbidden : model.constraints()) {
      for (const auto& a : forbidden.assignments()) {
        by_param_[static_cast<std::size_t>(a.param)].push_back(&forbidden);
      }
    }
  }

  // Extends the open tuple (params, values) to a full violation-free row, or
  // returns an empty vector on failure.
  std::vector<int> build(const std::vector<int>& params, const std::vector<int>& values) {
    const int k = model_.parameter_count();
    row_.assign(static_cast<std::size_t>(k), -1);
    assigned_.clear();
    for (std::size_t j = 0; j < params.size(); ++j) assign(params[j], values[j]);

    std::vector<int> rest;
    for (int p = 0; p < k; ++p) {
      if (row_[static_cast<std::size_t>(p)] < 0) rest.push_back(p);
    }
    shuffle(rest);

    std::vector<std::vector<int>> ranked(rest.size());
    std::vector<std::size_t> choice(rest.size(), 0);
    std::size_t backtracked_at = rest.size();
    std::size_t i = 0;
    while (i < rest.size()) {
      ranked[i] = rank_values(rest[i]);
      if (!ranked[i].empty()) {
        choice[i] = 0;
        assign(rest[i], ranked[i][0]);
        ++i;
        continue;
      }
      // Dead end: try the previous parameter's next choice once.
      if (i == 0 || backtracked_at == i || choice[i - 1] + 1 >= ranked[i - 1].size()) {
        return {};
      }
      backtracked_at = i;
      unassign(rest[i - 1]);
      ++choice[i - 1];
      assign(rest[i - 1], ranked[i - 1][choice[i - 1]]);
    }
    return row_;
  }

 private:
  void assign(int p, int v) {
    row_[static_cast<std::size_t>(p)] = v;
    assigned_.push_back(p);
  }

  void unassign(int p) {
    row_[static_cast<std::size_t>(p)] = -1;
    assigned_.erase(std::find(assigned_.begin(), assigned_.end(), p));
  }

  void shuffle(std::vector<int>& items) {
    for (std::size_t n = items.size(); n > 1; --n) {
      std::swap(items[n - 1], items[static_cast<std::size_t>(rng_.below(static_cast<int>(n)))]);
    }
  }

  // A fully assigned forbidden tuple through p matches.
  bool violated_at(int p) const {
    for (const ForbiddenTuple* f : by_param_[static_cast<std::size_t>(p)]) {
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

  // Open valid tuples over p plus t-1 already assigned parameters.
  std::uint64_t gain(int p) {
    const auto t = static_cast<std::size_t>(model_.strength());
    std::uint64_t total = 0;
    std::vector<int> subset;
    std::vector<int> sorted_assigned = assigned_;
    std::sort(sorted_assigned.begin(), sorted_assigned.end());
    auto recurse = [&](auto&& self, std::size_t from) -> void {
      if (subset.size() + 1 == t) {
        std::vector<int> params = subset;
        params.insert(std::upper_bound(params.begin(), params.end(), p), p);
        const auto* g = universe_.find(params);
        std::size_t idx = Universe::index_of(*g, row_);
        if (g->valid[idx] && !g->covered[idx]) ++total;
        return;
      }
      for (std::size_t n = from; n < sorted_assigned.size(); ++n) {
        subset.push_back(sorted_assigned[n]);
        self(self, n + 1);
        subset.pop_back();
      }
    };
    recurse(recurse, 0);
    return total;
  }

  // Feasible values of p, best gain first; ties in random order.
  std::vector<int> rank_values(int p) {
    std::vector<int> order(static_cast<std::size_t>(model_.value_count(p)));
    std::iota(order.begin(), order.end(), 0);
    shuffle(order);
    std::vector<std::pair<std::uint64_t, int>> scored;
    for (int v : order) {
      row_[static_cast<std::size_t>(p)] = v;
      if (!violated_at(p)) scored.emplace_back(gain(p), v);
    }
    row_[static_cast<std::size_t>(p)] = -1;
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<int> ranked;
    for (const auto& [score, v] : scored) ranked.push_back(v);
    return ranked;
  }

  const SystemModel& model_;
  const Universe& universe_;
  Rng& rng_;
  std::vector<std::vector<const ForbiddenTuple*>> by_param_;
  std::vector<int> row_;
  std::vector<int> assigned_;
};

}  // namespace

constexpr std::uint64_t kGreedySearchBudget = 1'000'000;

TestSuite greedy_baseline(const SystemModel& model, std::uint64_t seed) {
  Universe universe(model);
  Rng rng(seed);
  GreedyRowBuilder builder(model, universe, rng);
  TestSuite suite;

  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> open;
    const auto& groups = universe.groups();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (std::size_t i = 0; i < groups[g].valid.size(); ++i) {
        if (groups[g].valid[i] && !groups[g].covered[i]) open.emplace_back(g, i);
      }
    }
    if (open.empty()) break;

    std::vector<int> row;
    std::vector<ValueTuple> stuck;
    bool retired = false;
    // Seed tuples in random order until one extends to a valid row.
    for (std::size_t n = open.size(); n > 0 && row.empty(); --n) {
      std::swap(open[n - 1], open[static_cast<std::size_t>(rng.below(static_cast<int>(n)))]);
      const auto& [g, i] = open[n - 1];
      auto values = universe.decode(groups[g], i);
      row = builder.build(groups[g].params, values);
      if (!row.empty()) break;
      switch (extend(model, groups[g].params, values, kGreedySearchBudget, &row)) {
        case Extends::kYes:
          break;
        case Extends::kNo:
          universe.groups()[g].valid[i] = 0;
          retired = true;
          break;
        case Extends::kUnknown:
          stuck.push_back({groups[g].params, std::move(values)});
          break;
      }
    }
    if (row.empty()) {
      if (retired && stuck.empty()) continue;
      std::sort(stuck.begin(), stuck.end());
      throw StuckTuples(std::to_string(stuck.size()) +
                            " open tuples cannot be extended to a violation-free row",
                        std::move(stuck), std::move(suite));
    }
    universe.cover(row);
    suite.rows.emplace_back(std::move(row));
  }
  return suite;
}

}  // namespace swarmcit

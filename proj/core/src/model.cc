#include "swarmcit/model.h"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "swarmcit/errors.h"

namespace swarmcit {

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : Error("line " + std::to_string(line) +
            (column > 0 ? ", column " + std::to_string(column) : "") + ": " +
            what),
      line_(line),
      column_(column) {}

ForbiddenTuple::ForbiddenTuple(std::vector<Assignment> assignments)
    : assignments_(std::move(assignments)) {
  if (assignments_.size() < 2) {
    throw ModelError(
        "a constraint must forbid at least two assignments; drop the value "
        "from the model instead of forbidding it alone");
  }
  std::sort(assignments_.begin(), assignments_.end());
  for (std::size_t i = 1; i < assignments_.size(); ++i) {
    if (assignments_[i].param == assignments_[i - 1].param) {
      throw ModelError("constraint mentions parameter " +
                       std::to_string(assignments_[i].param) + " twice");
    }
  }
}

bool ForbiddenTuple::matches(std::span<const int> row) const {
  return std::all_of(assignments_.begin(), assignments_.end(),
                     [&](const Assignment& a) {
                       return row[static_cast<std::size_t>(a.param)] == a.value;
                     });
}

ConstraintSet::ConstraintSet(std::initializer_list<ForbiddenTuple> tuples) {
  for (const auto& t : tuples) add(t);
}

bool ConstraintSet::add(ForbiddenTuple tuple) {
  if (std::find(tuples_.begin(), tuples_.end(), tuple) != tuples_.end()) {
    return false;
  }
  tuples_.push_back(std::move(tuple));
  return true;
}

int violates(std::span<const int> row, const ConstraintSet& constraints) {
  int count = 0;
  for (const auto& tuple : constraints) {
    if (tuple.matches(row)) ++count;
  }
  return count;
}

SystemModel::SystemModel(int strength, std::vector<int> value_counts,
                         ConstraintSet constraints,
                         std::vector<std::vector<std::string>> value_names)
    : strength_(strength),
      value_counts_(std::move(value_counts)),
      constraints_(std::move(constraints)),
      value_names_(std::move(value_names)) {
  const int k = parameter_count();
  if (strength_ < 2) {
    throw ModelError("interaction strength t must be at least 2 (got " +
                     std::to_string(strength_) + ")");
  }
  if (strength_ > k) {
    throw ModelError("t exceeds k (t=" + std::to_string(strength_) +
                     ", k=" + std::to_string(k) + ")");
  }
  for (int p = 0; p < k; ++p) {
    if (value_counts_[p] < 2) {
      throw ModelError("parameter " + std::to_string(p) +
                       " needs at least 2 values (got " +
                       std::to_string(value_counts_[p]) + ")");
    }
  }
  for (const auto& tuple : constraints_) {
    if (static_cast<int>(tuple.size()) > k) {
      throw ModelError("constraint has more assignments than parameters");
    }
    for (const auto& a : tuple.assignments()) {
      if (a.param < 0 || a.param >= k) {
        throw ModelError("constraint references parameter " +
                         std::to_string(a.param) + " outside [0, " +
                         std::to_string(k) + ")");
      }
      if (a.value < 0 || a.value >= value_counts_[a.param]) {
        throw ModelError("constraint references value " +
                         std::to_string(a.value) + " of parameter " +
                         std::to_string(a.param) + " outside [0, " +
                         std::to_string(value_counts_[a.param]) + ")");
      }
    }
  }
  if (!value_names_.empty()) {
    if (static_cast<int>(value_names_.size()) != k) {
      throw ModelError("names section must have one line per parameter");
    }
    for (int p = 0; p < k; ++p) {
      if (static_cast<int>(value_names_[p].size()) != value_counts_[p]) {
        throw ModelError("parameter " + std::to_string(p) + " has " +
                         std::to_string(value_counts_[p]) + " values but " +
                         std::to_string(value_names_[p].size()) + " labels");
      }
    }
  }
}

unsigned long long SystemModel::exhaustive_size() const {
  unsigned long long total = 1;
  for (int v : value_counts_) {
    if (total > std::numeric_limits<unsigned long long>::max() /
                    static_cast<unsigned long long>(v)) {
      return std::numeric_limits<unsigned long long>::max();
    }
    total *= static_cast<unsigned long long>(v);
  }
  return total;
}

bool SystemModel::accepts(std::span<const int> row) const {
  if (row.size() != value_counts_.size()) return false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] < 0 || row[i] >= value_counts_[i]) return false;
  }
  return true;
}

TestCase TestCase::checked(const SystemModel& model, std::vector<int> values) {
  if (!model.accepts(values)) {
    throw ModelError("test case does not fit the model (expected " +
                     std::to_string(model.parameter_count()) +
                     " in-range values)");
  }
  return TestCase(std::move(values));
}

bool ValueTuple::covered_by(std::span<const int> row) const {
  for (std::size_t j = 0; j < params.size(); ++j) {
    if (row[static_cast<std::size_t>(params[j])] != values[j]) return false;
  }
  return true;
}

std::string to_string(const ValueTuple& tuple) {
  std::string out;
  for (std::size_t j = 0; j < tuple.params.size(); ++j) {
    if (j > 0) out += ' ';
    out += std::to_string(tuple.params[j]);
    out += ':';
    out += std::to_string(tuple.values[j]);
  }
  return out;
}

namespace {

// "2^13 4^5" from counts {2:13, 4:5}, ascending by base.
std::string exponential_form(const std::map<int, int>& groups) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [base, exponent] : groups) {
    if (!first) out << ' ';
    out << base << '^' << exponent;
    first = false;
  }
  return out.str();
}

}  // namespace

Notation to_notation(const SystemModel& model) {
  std::map<int, int> levels;
  for (int v : model.value_counts()) ++levels[v];
  std::map<int, int> shapes;
  for (const auto& tuple : model.constraints()) {
    ++shapes[static_cast<int>(tuple.size())];
  }

  Notation n;
  n.array = std::string(levels.size() == 1 ? "CA" : "MCA") + "(N; " +
            std::to_string(model.strength()) + ", " + exponential_form(levels) +
            ")";
  n.constraints = exponential_form(shapes);
  return n;
}

std::string Notation::str() const {
  if (constraints.empty()) return array;
  return array + " constraints " + constraints;
}

}  // namespace swarmcit

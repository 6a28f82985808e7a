#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace swarmcit {

// One (parameter, value) pair. Parameters and values are 0-indexed.
struct Assignment {
  int param = 0;
  int value = 0;

  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

// A conjunction of assignments that must never all hold in one test case.
// Assignments are kept sorted by parameter index and never share a parameter.
class ForbiddenTuple {
 public:
  // Throws ModelError if fewer than two assignments are given or a parameter
  // appears twice.
  explicit ForbiddenTuple(std::vector<Assignment> assignments);

  std::span<const Assignment> assignments() const { return assignments_; }
  std::size_t size() const { return assignments_.size(); }

  // True when every assignment holds in `row`.
  bool matches(std::span<const int> row) const;

  friend bool operator==(const ForbiddenTuple&, const ForbiddenTuple&) = default;
  friend auto operator<=>(const ForbiddenTuple&, const ForbiddenTuple&) = default;

 private:
  std::vector<Assignment> assignments_;
};

// Deduplicated list of forbidden tuples, in insertion order.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  ConstraintSet(std::initializer_list<ForbiddenTuple> tuples);

  // Returns false (and keeps the set unchanged) when `tuple` is already present.
  bool add(ForbiddenTuple tuple);

  std::span<const ForbiddenTuple> tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  auto begin() const { return tuples_.begin(); }
  auto end() const { return tuples_.end(); }

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;

 private:
  std::vector<ForbiddenTuple> tuples_;
};

// Number of forbidden tuples in `constraints` fully matched by `row`.
int violates(std::span<const int> row, const ConstraintSet& constraints);

// The system under test: interaction strength t, per-parameter value counts
// and the forbidden tuples. Immutable after construction.
class SystemModel {
 public:
  // Validates every invariant and throws ModelError on the first violation:
  // 2 <= t <= k, every v_i >= 2, constraints reference existing parameters and
  // values, and value labels (when given) match the value counts.
  SystemModel(int strength, std::vector<int> value_counts,
              ConstraintSet constraints = {},
              std::vector<std::vector<std::string>> value_names = {});

  int strength() const { return strength_; }
  int parameter_count() const { return static_cast<int>(value_counts_.size()); }
  std::span<const int> value_counts() const { return value_counts_; }
  int value_count(int param) const { return value_counts_[param]; }
  const ConstraintSet& constraints() const { return constraints_; }

  bool has_value_names() const { return !value_names_.empty(); }
  const std::vector<std::vector<std::string>>& value_names() const {
    return value_names_;
  }

  // Number of full rows, saturating at the largest unsigned 64-bit value.
  unsigned long long exhaustive_size() const;

  // True when `row` has length k and every entry lies in its range.
  bool accepts(std::span<const int> row) const;

  friend bool operator==(const SystemModel&, const SystemModel&) = default;

 private:
  int strength_;
  std::vector<int> value_counts_;
  ConstraintSet constraints_;
  std::vector<std::vector<std::string>> value_names_;
};

// One row of a test suite.
class TestCase {
 public:
  TestCase() = default;
  explicit TestCase(std::vector<int> values) : values_(std::move(values)) {}

  // Throws ModelError unless `values` is a valid row of `model`.
  static TestCase checked(const SystemModel& model, std::vector<int> values);

  std::span<const int> values() const { return values_; }
  int operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  friend bool operator==(const TestCase&, const TestCase&) = default;

 private:
  std::vector<int> values_;
};

// Rows in generation order. All rows have the same length.
struct TestSuite {
  std::vector<TestCase> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }

  friend bool operator==(const TestSuite&, const TestSuite&) = default;
};

// A concrete value assignment to one parameter combination; the unit of
// coverage. params is strictly increasing, values[j] belongs to params[j].
struct ValueTuple {
  std::vector<int> params;
  std::vector<int> values;

  // True when `row` agrees with every assignment of the tuple.
  bool covered_by(std::span<const int> row) const;

  friend bool operator==(const ValueTuple&, const ValueTuple&) = default;
  friend auto operator<=>(const ValueTuple&, const ValueTuple&) = default;
};

// "p:v p:v ..." form used by the CLI and error messages.
std::string to_string(const ValueTuple& tuple);

// Exponential covering-array notation, e.g. "MCA(N; 2, 2^13 4^5)" for the
// array and "2^13" for the constraints (13 forbidden tuples of size 2).
struct Notation {
  std::string array;
  std::string constraints;  // empty when the model is unconstrained

  std::string str() const;
};

Notation to_notation(const SystemModel& model);

}  // namespace swarmcit

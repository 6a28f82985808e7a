#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmcit/model.h"

namespace swarmcit {

// Base for every error the library raises on bad input or failed searches.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Model text that does not follow the model-file grammar. Line and column
// are 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A model that parses but breaks a semantic rule (t > k, v_i < 2, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// The tuple universe does not fit in memory.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, unsigned long long combinations)
      : Error(what), combinations_(combinations) {}

  unsigned long long combinations() const { return combinations_; }

 private:
  unsigned long long combinations_;
};

// Open tuples that no search could place in a violation-free row. They are
// possibly uncoverable under the constraint set.
class StuckTuples : public Error {
 public:
  StuckTuples(const std::string& what, std::vector<ValueTuple> tuples,
              TestSuite partial)
      : Error(what), tuples_(std::move(tuples)), partial_(std::move(partial)) {}

  const std::vector<ValueTuple>& tuples() const { return tuples_; }
  const TestSuite& partial_suite() const { return partial_; }

 private:
  std::vector<ValueTuple> tuples_;
  TestSuite partial_;
};

}  // namespace swarmcit

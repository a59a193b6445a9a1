#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "seqsavage/rational.hpp"

namespace seqsavage {

// Syntax error in a formula or action; position is a 0-based byte offset
// into the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " +
                           std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// An enumeration would exceed the configured object budget. Carries the
// exact cardinality the enumeration would have produced.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what_would_grow, const BigInt& required,
              const BigInt& budget)
      : std::runtime_error(what_would_grow + " needs " + required.str() +
                           " objects, budget is " + budget.str()),
        required_(required) {}

  const BigInt& required() const { return required_; }

 private:
  BigInt required_;
};

// A transition was requested from an olt state whose progress function has
// no recorded generating action, so the extension rule cannot be applied.
class ProvenanceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The selection table has no entry for a (state, effect) pair that an
// interpretation needed.
class SelUndefinedError : public std::runtime_error {
 public:
  SelUndefinedError(const std::string& state, const std::string& effect)
      : std::runtime_error("selection undefined for state '" + state +
                           "' and effect " + effect),
        state_(state),
        effect_(effect) {}

  const std::string& state() const { return state_; }
  const std::string& effect() const { return effect_; }

 private:
  std::string state_;
  std::string effect_;
};

}  // namespace seqsavage

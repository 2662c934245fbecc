#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "tsearch/varset.hpp"

namespace tsearch {

/// Malformed input: bad DIMACS text, out-of-range literal, bad generator arguments.
class FormulaError : public std::runtime_error {
 public:
  explicit FormulaError(const std::string& what, std::optional<std::size_t> clause = std::nullopt)
      : std::runtime_error(what), clause_{clause} {}
  /// Zero-based index of the offending clause, when the error is tied to one.
  std::optional<std::size_t> clause_index() const { return clause_; }

 private:
  std::optional<std::size_t> clause_;
};

/// A configured size limit (node cap, oracle variable cap, expansion cap) was hit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The formula has no model at all.
class Unsatisfiable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition of a solver entry point does not hold for the given formula.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A model strictly closer than the requested radius was found.
///
/// Enumeration at a fixed depth is only defined under the promise that no
/// model lies closer; the witness is the offending model.
class PromiseViolation : public std::runtime_error {
 public:
  PromiseViolation(VarSet witness, std::size_t depth)
      : std::runtime_error("promise violated: model of weight " + std::to_string(witness.size()) +
                           " found below depth " + std::to_string(depth)),
        witness_{std::move(witness)},
        depth_{depth} {}
  const VarSet& witness() const { return witness_; }
  std::size_t requested_depth() const { return depth_; }

 private:
  VarSet witness_;
  std::size_t depth_;
};

}  // namespace tsearch

#pragma once

#include <stdexcept>
#include <string>

namespace freedep {

/// Malformed or out-of-contract input: unknown letters, arity mismatches,
/// words that are not members of a subgroup they are required to lie in.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A well-formed request that has no answer, e.g. asking for an equation
/// satisfied by an element that is independent of the subgroup.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace freedep

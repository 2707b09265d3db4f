#pragma once

#include <stdexcept>
#include <string>

namespace dspace {

/// A point was passed to a space that does not contain it, or a map
/// produced a point outside the enumerable domain.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an operation argument was violated (non-positive
/// radius, empty grid, a < 1, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed custom-space document. `where` names the offending JSON field
/// (e.g. "matrix[2][0]") so the CLI can print a precise diagnostic.
class IngestError : public std::runtime_error {
 public:
  IngestError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace dspace

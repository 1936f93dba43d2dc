#pragma once

#include <stdexcept>
#include <string>

namespace kse {

struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};

// Bad user input: malformed weights, non-dominant data, inconsistent shapes.
struct ValidationError : Error {
  explicit ValidationError(const std::string& m) : Error(m) {}
};

// The generator set admits no strictly positive linear functional, so the
// attempted operation (partition counts, Kostka sums) is undefined for it.
struct PointednessViolation : Error {
  explicit PointednessViolation(const std::string& m) : Error(m) {}
};

// A configured resource cap (Weyl group size, partition level, enumeration
// size) would be exceeded; the computation was refused, not attempted.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& m) : Error(m) {}
};

// A cross-check between two independent engines failed, or an internal
// invariant broke. Never expected on valid input.
struct InternalError : Error {
  explicit InternalError(const std::string& m) : Error(m) {}
};

}  // namespace kse

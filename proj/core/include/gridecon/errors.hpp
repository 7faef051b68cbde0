#pragma once

#include <stdexcept>
#include <string>

namespace gridecon {

// Bad input values: malformed quantities, schema violations, broken invariants.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Missing, unreadable, or syntactically invalid input files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gridecon

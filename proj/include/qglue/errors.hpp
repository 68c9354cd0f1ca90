#pragma once

// Error types shared across the library.  All contract violations throw one
// of these; domain-level "not representable" results use std::optional.

#include <stdexcept>
#include <string>

namespace qglue {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Reading a coefficient that lies outside an object's known window.
struct WindowError : Error {
  explicit WindowError(const std::string& msg) : Error(msg) {}
};

// Inverting (or dividing by) an element that is not a unit.
struct NonUnitError : Error {
  explicit NonUnitError(const std::string& msg) : Error(msg) {}
};

// Combining objects whose contexts (truncation orders, variables, ...)
// do not match, or calling an operation outside its domain.
struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

// A computation left the range in which exact results are guaranteed.
struct InsufficientWindowError : Error {
  explicit InsufficientWindowError(const std::string& msg) : Error(msg) {}
};

}  // namespace qglue

#pragma once

#include <stdexcept>
#include <string>

namespace backflow {

// Numerical routine exhausted its budget without reaching the requested
// tolerance.
class NonConvergence : public std::runtime_error {
public:
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Root bracket whose endpoints carry the same strict sign.
class InvalidBracket : public std::runtime_error {
public:
  explicit InvalidBracket(const std::string& what) : std::runtime_error(what) {}
};

// Fully destructive superposition: the normalization denominator is ~0 and
// the state is (numerically) the zero wave function.
class DegenerateState : public std::runtime_error {
public:
  explicit DegenerateState(const std::string& what) : std::runtime_error(what) {}
};

// Requested constraint has no solution in the allowed parameter range.
class Unattainable : public std::runtime_error {
public:
  explicit Unattainable(const std::string& what) : std::runtime_error(what) {}
};

// Search window clipped the feature of interest even after auto-expansion.
class WindowTooSmall : public std::runtime_error {
public:
  explicit WindowTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// Bad run configuration (CLI / JSON config layer).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace backflow

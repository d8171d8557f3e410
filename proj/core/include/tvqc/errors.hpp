#pragma once

#include <stdexcept>
#include <string>

namespace tvqc {

// Thrown when a distribution with sigma == 0 is asked for a density or CDF;
// callers are expected to special-case the point mass instead.
class DegenerateDistributionError : public std::domain_error {
 public:
  explicit DegenerateDistributionError(const std::string& what)
      : std::domain_error(what) {}
};

// Thrown when a monotone inversion has no solution in its bracket
// (e.g. a rate outside the achievable capacity range).
class NoSolutionError : public std::runtime_error {
 public:
  explicit NoSolutionError(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown when a requested level does not lie inside a curve's y-range.
class NotBracketedError : public std::runtime_error {
 public:
  explicit NotBracketedError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace tvqc

#pragma once

#include <stdexcept>
#include <string>

namespace ermt {

// Thrown when an iterative or refinement procedure fails to meet its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Step-halving on a uniform grid changed a result by more than the tolerance.
class GridTooCoarseError : public ConvergenceError {
 public:
  explicit GridTooCoarseError(const std::string& what) : ConvergenceError(what) {}
};

namespace detail {

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

inline void require_finite(double x, const char* msg) {
  if (!(x - x == 0.0)) throw std::domain_error(msg);
}

}  // namespace detail
}  // namespace ermt

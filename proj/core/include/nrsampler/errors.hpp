#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "nrsampler/linalg.hpp"

namespace nrs {

/// The Jacobian of the reaction coordinate lost full column rank at `point`.
class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(const std::string& what, Vector point, double smallest_singular_value)
      : std::runtime_error(what),
        point_(std::move(point)),
        smallest_singular_value_(smallest_singular_value) {}

  const Vector& point() const noexcept { return point_; }
  double smallest_singular_value() const noexcept { return smallest_singular_value_; }

 private:
  Vector point_;
  double smallest_singular_value_;
};

/// A small dense solve (Phi, Pi, a - A) failed.
class LinearSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampler run aborted because a projection did not converge.
class RunFailure : public std::runtime_error {
 public:
  RunFailure(const std::string& what, Vector state, std::int64_t step_index)
      : std::runtime_error(what), state_(std::move(state)), step_index_(step_index) {}

  /// Intermediate (pre-projection) state that could not be projected.
  const Vector& state() const noexcept { return state_; }
  std::int64_t step_index() const noexcept { return step_index_; }

 private:
  Vector state_;
  std::int64_t step_index_;
};

}  // namespace nrs

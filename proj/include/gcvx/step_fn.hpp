#pragma once

#include <vector>

#include "gcvx/rational.hpp"

namespace gcvx::kernel {

/// A step function [0,1] -> [0,1].
///
/// Pieces are right-open: piece i covers [b_i, b_{i+1}). The point 1 carries its
/// own value so that indicators of [0,1) and {1} stay distinguishable.
/// Construction canonicalizes by merging adjacent pieces with equal values.
class StepFn {
 public:
  /// Throws DomainError unless 0 = b_0 < ... < b_k = 1, |values| = k and all values lie in [0,1].
  StepFn(std::vector<Rational> breakpoints, std::vector<Rational> values, Rational value_at_one);

  static StepFn constant(const Rational& c);

  [[nodiscard]] const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  [[nodiscard]] const std::vector<Rational>& values() const { return values_; }
  [[nodiscard]] const Rational& value_at_one() const { return value_at_one_; }

  /// Pointwise value; x must lie in [0,1].
  [[nodiscard]] Rational operator()(const Rational& x) const;

  friend bool operator==(const StepFn&, const StepFn&) = default;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
  Rational value_at_one_;
};

/// Lebesgue integral: sum of value * width over the pieces. The point {1} is null.
Rational step_integrate(const StepFn& f);

/// Pointwise (1 - alpha) f + alpha g on the common refinement. alpha must lie in [0,1].
StepFn step_pointwise_mix(const StepFn& f, const StepFn& g, const Rational& alpha);

}  // namespace gcvx::kernel

#include "gcvx/step_fn.hpp"

#include <algorithm>

#include "gcvx/errors.hpp"

namespace gcvx::kernel {

StepFn::StepFn(std::vector<Rational> breakpoints, std::vector<Rational> values, Rational value_at_one)
    : value_at_one_(std::move(value_at_one)) {
  if (breakpoints.size() < 2 || breakpoints.front() != Rational(0) || breakpoints.back() != Rational(1)) {
    throw DomainError("step function breakpoints must run from 0 to 1");
  }
  if (values.size() + 1 != breakpoints.size()) {
    throw DomainError("step function needs one value per piece");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) throw DomainError("step function breakpoints must increase strictly");
  }
  for (const auto& v : values) {
    if (!v.in_unit_interval()) throw DomainError("step function value outside [0,1]: " + v.str());
  }
  if (!value_at_one_.in_unit_interval()) throw DomainError("step function value at 1 outside [0,1]");

  // merge equal neighbours
  breakpoints_.push_back(breakpoints.front());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values_.empty() && values_.back() == values[i]) {
      breakpoints_.back() = breakpoints[i + 1];
    } else {
      values_.push_back(values[i]);
      breakpoints_.push_back(breakpoints[i + 1]);
    }
  }
}

StepFn StepFn::constant(const Rational& c) { return StepFn({0, 1}, {c}, c); }

Rational StepFn::operator()(const Rational& x) const {
  if (!x.in_unit_interval()) throw DomainError("step function argument outside [0,1]");
  if (x == Rational(1)) return value_at_one_;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

Rational step_integrate(const StepFn& f) {
  Rational total;
  const auto& b = f.breakpoints();
  for (std::size_t i = 0; i < f.values().size(); ++i) total += f.values()[i] * (b[i + 1] - b[i]);
  return total;
}

StepFn step_pointwise_mix(const StepFn& f, const StepFn& g, const Rational& alpha) {
  if (!alpha.in_unit_interval()) throw DomainError("mixing weight outside [0,1]: " + alpha.str());
  std::vector<Rational> merged;
  std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(), g.breakpoints().end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  std::vector<Rational> values;
  values.reserve(merged.size() - 1);
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) values.push_back(mix(f(merged[i]), g(merged[i]), alpha));
  return StepFn(std::move(merged), std::move(values), mix(f.value_at_one(), g.value_at_one(), alpha));
}

}  // namespace gcvx::kernel

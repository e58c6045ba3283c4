#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcvx/measurable.hpp"
#include "gcvx/rational.hpp"
#include "gcvx/step_fn.hpp"

// The symmetric monoidal closed structure of finite measurable spaces, plus
// the threshold maps on the unit interval and the Lebesgue section.
namespace gcvx::smcc {

using kernel::Rational;
using kernel::StepFn;
using measurable::FinMeasSpace;
using measurable::MeasFn;
using measurable::SpaceRef;
using measurable::Subset;

/// Guard on the product carrier. The tensor σ-algebra is computed by a
/// union-find over graph images, so the only hard limit is the bitset width.
inline constexpr std::size_t kMaxProductPoints = measurable::kMaxPoints;

/// Index of the pair (x, y) in the x-major product carrier.
inline std::size_t pair_index(std::size_t x, std::size_t y, std::size_t right_size) { return x * right_size + y; }

/// Point ids "(x,y)" in x-major order.
std::vector<std::string> product_points(const FinMeasSpace& left, const FinMeasSpace& right);

struct TensorSpace {
  SpaceRef left;
  SpaceRef right;
  /// Coinduced by the graphs of all measurable maps in both directions.
  SpaceRef carrier;
  /// Coinduced by the constant graphs only; always at least as fine as `carrier`.
  SpaceRef constant_graph_carrier;
};

/// Throws CapacityError when |X x Y| > kMaxProductPoints or a map enumeration guard trips.
TensorSpace tensor_space(const SpaceRef& x, const SpaceRef& y);

/// σ-algebra generated by measurable rectangles.
FinMeasSpace product_space(const FinMeasSpace& x, const FinMeasSpace& y);

struct FnSpace {
  SpaceRef base;
  SpaceRef target;
  std::vector<MeasFn> elements;
  /// Induced by the point evaluations.
  SpaceRef carrier;

  /// Position of the element equal to `mapping`, if any.
  [[nodiscard]] std::optional<std::size_t> find(const std::vector<std::size_t>& mapping) const;
};

FnSpace function_space(const SpaceRef& x, const SpaceRef& y);

/// The raw map (x, f) -> f(x) on the carrier of X (x) Y^X.
std::vector<std::size_t> eval_mapping(const FnSpace& fs);

struct EvalMap {
  FnSpace fn_space;
  TensorSpace tensor;
  MeasFn ev;
};

/// Builds ev: X (x) Y^X -> Y. A measurability failure throws std::logic_error.
EvalMap eval_map(const SpaceRef& x, const SpaceRef& y);

/// z -> (x -> f(x, z)) for f on the carrier of X (x) Z.
/// Throws MeasurabilityError naming z if some section is not in Y^X.
MeasFn curry(const MeasFn& f, const TensorSpace& xz, const FnSpace& yx);

/// (x, z) -> g(z)(x).
MeasFn uncurry(const MeasFn& g, const TensorSpace& xz, const FnSpace& yx);

/// 1 iff v <= u. Both arguments in [0,1].
int ge_map(const Rational& u, const Rational& v);

/// Indicator of [0,u] as a step function. For u < 1 the representative is
/// the indicator of [0,u), which differs from it only on the null set {u}.
StepFn down_map(const Rational& u);

using Integrator = std::function<Rational(const StepFn&)>;

struct LebesgueEntry {
  Rational u;
  Rational integral;
  bool passed = false;
};

struct LebesgueReport {
  std::vector<LebesgueEntry> entries;
  [[nodiscard]] bool all_passed() const;
};

/// Checks integral(down(u)) = u for every sample and every supplied functional value.
LebesgueReport lebesgue_section_check(const std::vector<Rational>& samples,
                                      const std::vector<Rational>& functional_values = {},
                                      const Integrator& integrate = kernel::step_integrate);

}  // namespace gcvx::smcc

#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "gcvx/convex.hpp"
#include "gcvx/giry.hpp"
#include "gcvx/measurable.hpp"
#include "gcvx/report.hpp"

// The Σ functor on semilattices, the counit, adjuncts and the passage between
// Giry algebras and convex spaces.
namespace gcvx::adjunction {

using convex::GeomCvx;
using convex::SemiCvx;
using giry::FinDist;
using giry::FinSupp;
using kernel::Rational;
using kernel::Vec;
using measurable::MeasFn;
using measurable::SpaceRef;
using measurable::Subset;

struct SigmaOfA {
  SemiCvx base;
  /// Points are the elements of `base`; σ generated by the Boolean subobjects.
  SpaceRef space;
  std::vector<Subset> boolean_subobjects;
};

/// Throws CapacityError above 20 elements.
SigmaOfA sigma_functor(const SemiCvx& a);

/// 0 for α < 1 and 1 for α = 1. Throws DomainError outside [0,1].
int epsilon_two(const Rational& alpha);

/// Meet of every element carrying positive mass.
std::size_t counit(const SemiCvx& a, const FinDist& p);
/// Barycenter Σ P(a)·a. Throws DomainError if a support point leaves the hull.
Vec counit(const GeomCvx& a, const FinSupp<Vec>& p);

/// m⁻¹(1) as the closed halfspace {c·x >= 1 - t}; m must map the hull into [0,1].
convex::HalfspaceSplit epsilon2_postcompose(const convex::GeomToI& m, const GeomCvx& a);
/// {a : m(a) = 1} for a map given by its values.
convex::SemiSubset epsilon2_postcompose(const std::vector<Rational>& m, const SemiCvx& a);

using MeasureMap = std::function<std::size_t(const FinDist&)>;

/// f̂ = ε_A ∘ P(f) for f : X -> ΣA.
MeasureMap adjunct(const MeasFn& f, const SigmaOfA& sigma);
/// x -> g(δ_x) as a measurable map X -> ΣA. Throws MeasurabilityError if it is not one.
MeasFn adjunct_inverse(const MeasureMap& g, const SpaceRef& x, const SigmaOfA& sigma);

/// ε_{P(X)} ∘ P(η_X) = id on diracs, the uniform measure and the grid, and
/// Σ(ε_A) ∘ η_{ΣA} = id on every element of A.
void triangle_check(report::Harness& h, const SpaceRef& x);
void triangle_check(report::Harness& h, const SigmaOfA& sigma);

/// Round trip, affinity on mixtures and uniqueness against exhaustive search
/// over maps on the dirac/midpoint grid.
void adjunct_bijection_check(report::Harness& h, const SpaceRef& x, const SigmaOfA& sigma);

struct TelescopeTerm {
  Rational coefficient;
  Subset set = 0;
  friend bool operator==(const TelescopeTerm&, const TelescopeTerm&) = default;
};

/// Σᵢ αᵢ χ_{Sᵢ} rewritten as (α₁, S₁ ∪ ... ∪ Sₙ), (α₂ - α₁, S₂ ∪ ... ∪ Sₙ), ..., (1 - αₙ, ∅).
/// Throws DomainError on unsorted or out-of-range coefficients and on blocks
/// that do not partition the n points.
std::vector<TelescopeTerm> telescope(const std::vector<Rational>& coefficients, const std::vector<Subset>& blocks,
                                     std::size_t n);
/// Σ over terms containing the point.
Rational telescope_value(const std::vector<TelescopeTerm>& terms, std::size_t point);

struct EvalHullReport {
  bool passed = true;
  std::size_t checked = 0;
  std::optional<std::size_t> failing_fn;
  Rational lhs;
  Rational rhs;
};

/// Σαᵢ m(aᵢ) = m(Σαᵢaᵢ) for every m in the family.
EvalHullReport eval_hull_identity(const GeomCvx& a, const std::vector<Rational>& weights,
                                  const std::vector<Vec>& points, const std::vector<convex::GeomToI>& fns);

// ---------------------------------------------------------------------------
// Giry algebras

struct FiniteAlgebra {
  SpaceRef space;
  MeasureMap h;
};

/// A polytope with the barycenter as structure map.
struct BarycentricAlgebra {
  GeomCvx space;
};

using GiryAlgebra = std::variant<FiniteAlgebra, BarycentricAlgebra>;

/// Unit and multiplication laws on diracs, pairwise grid mixtures and two-level
/// mixtures of those.
void algebra_law_report(report::Harness& h, const std::string& name, const GiryAlgebra& alg, std::size_t grid = 4);

struct ConvexFromAlgebra {
  convex::ConvexSpace space;
  /// θ = Σq ∘ η_X, pointwise (finite algebras only).
  std::vector<std::size_t> theta;
  bool theta_bijective = true;
};

/// x +_α y := h((1 - α)δ_x + αδ_y). Throws DomainError if the combination
/// on a finite carrier depends on α or the resulting table is not a semilattice.
ConvexFromAlgebra algebra_to_convex(const GiryAlgebra& alg);

/// h = counit on measures over ΣA.
FiniteAlgebra convex_to_algebra(const SemiCvx& a);

}  // namespace gcvx::adjunction

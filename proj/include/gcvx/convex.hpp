#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gcvx/exact_lp.hpp"
#include "gcvx/measurable.hpp"
#include "gcvx/rational.hpp"

// Convex spaces in two executable families: rational polytopes, where the
// combination a +_α b depends on α, and finite meet-semilattices, where every
// interior combination collapses to the meet.
namespace gcvx::convex {

using kernel::Rational;
using kernel::Vec;
using measurable::Subset;

/// Convex hull of finitely many rational points. May be empty.
class GeomCvx {
 public:
  /// Throws DomainError on a generator of the wrong dimension. Duplicates are dropped.
  GeomCvx(std::size_t dim, std::vector<Vec> generators);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<Vec>& generators() const { return generators_; }
  [[nodiscard]] bool empty() const { return generators_.empty(); }

  friend bool operator==(const GeomCvx&, const GeomCvx&) = default;

 private:
  std::size_t dim_;
  std::vector<Vec> generators_;
};

/// A finite meet-semilattice viewed as a convex space:
/// a +_0 b = a, a +_1 b = b and a +_α b = a ∧ b for 0 < α < 1.
class SemiCvx {
 public:
  /// Throws DomainError unless the table is total, associative, commutative and idempotent.
  SemiCvx(std::vector<std::string> elements, std::vector<std::vector<std::size_t>> meet);

  [[nodiscard]] const std::vector<std::string>& elements() const { return elements_; }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& table() const { return meet_; }
  [[nodiscard]] bool leq(std::size_t a, std::size_t b) const { return meet_[a][b] == a; }
  [[nodiscard]] Subset up_set(std::size_t a) const;
  [[nodiscard]] Subset full() const { return measurable::full_set(size()); }
  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& id) const;
  [[nodiscard]] std::string describe(Subset s) const;

  friend bool operator==(const SemiCvx&, const SemiCvx&) = default;

 private:
  std::vector<std::string> elements_;
  std::vector<std::vector<std::size_t>> meet_;
};

using ConvexSpace = std::variant<SemiCvx, GeomCvx>;
/// A point of a ConvexSpace: an element index for SemiCvx, a vector for GeomCvx.
using Point = std::variant<std::size_t, Vec>;

std::string describe(const Point& p, const ConvexSpace& a);
/// Elements and covering relations, e.g. "(a,b,c;a<b,b<c)".
std::string describe(const SemiCvx& a);

// ---------------------------------------------------------------------------
// Standard spaces

/// The two-element space 𝟐 = {0, 1} with 0 ∧ 1 = 0.
SemiCvx two_space();
/// Standard (n-1)-simplex in ℚ^n.
GeomCvx free_convex(std::size_t n);
/// [0,1] presented in one dimension by the generators 0 and 1.
GeomCvx unit_interval();
/// Chain a < b < c < ... (ids e0, e1, ... beyond 26 elements).
SemiCvx chain(std::size_t n);
/// Every finite meet-semilattice with exactly n elements, one per isomorphism class.
std::vector<SemiCvx> all_semilattices(std::size_t n);
/// An isomorphism a -> b as an element permutation, if one exists.
std::optional<std::vector<std::size_t>> find_isomorphism(const SemiCvx& a, const SemiCvx& b);

// ---------------------------------------------------------------------------
// Membership and combination

struct SeparatingFunctional {
  Vec c;
  Rational t;  ///< c·g <= t < c·p for every generator g
};

struct HullMembership {
  bool member = false;
  Vec weights;                                     ///< barycentric weights (member only)
  std::optional<SeparatingFunctional> certificate; ///< non-members only
};

/// Exact feasibility of p ∈ conv(generators). Throws DomainError on a dimension mismatch.
HullMembership hull_member(const GeomCvx& a, const Vec& p);

/// (1 - α) a + α b after checking both points lie in the hull.
Vec convex_combine(const GeomCvx& a, const Vec& x, const Vec& y, const Rational& alpha);
std::size_t convex_combine(const SemiCvx& a, std::size_t x, std::size_t y, const Rational& alpha);
Point convex_combine(const ConvexSpace& a, const Point& x, const Point& y, const Rational& alpha);

/// Σ wᵢ pᵢ by repeated binary combination; weights nonnegative and summing to 1.
Point convex_sum(const ConvexSpace& a, const std::vector<std::pair<Rational, Point>>& terms);

struct PathMap {
  ConvexSpace target;
  Point a1;
  Point a2;
};

Point path_eval(const PathMap& path, const Rational& alpha);

/// The affine endomorphism α -> sα + t of [0,1].
class EndoI {
 public:
  /// Throws DomainError unless s ∈ [-1,1], t ∈ [0,1] and 0 <= s + t <= 1.
  EndoI(Rational s, Rational t);

  [[nodiscard]] const Rational& s() const { return s_; }
  [[nodiscard]] const Rational& t() const { return t_; }
  [[nodiscard]] Rational operator()(const Rational& alpha) const;

  friend bool operator==(const EndoI&, const EndoI&) = default;

 private:
  Rational s_;
  Rational t_;
};

Rational endo_apply(const EndoI& e, const Rational& alpha);
/// e1 after e2.
EndoI endo_compose(const EndoI& e1, const EndoI& e2);

// ---------------------------------------------------------------------------
// Boolean subobjects

/// {x : c·x >= t} when upper_closed, else {x : c·x > t}; the complement is the other side.
struct HalfspaceSplit {
  Vec normal;
  Rational threshold;
  bool upper_closed = true;

  [[nodiscard]] bool contains(const Vec& x) const;
  friend bool operator==(const HalfspaceSplit&, const HalfspaceSplit&) = default;
};

struct SemiSubset {
  Subset members = 0;
  friend bool operator==(const SemiSubset&, const SemiSubset&) = default;
};

using BooleanSubobject = std::variant<HalfspaceSplit, SemiSubset>;

bool contains(const BooleanSubobject& s, const Point& p);

/// A triple (x, y, α) whose combination violates a closure property.
struct TripleWitness {
  Point x;
  Point y;
  Rational alpha;
};

struct SubobjectCheck {
  bool passed = true;
  std::optional<TripleWitness> witness;
};

/// Both the subset and its complement closed under convex combination.
SubobjectCheck is_boolean_subobject(const ConvexSpace& a, const BooleanSubobject& s);

/// Every Boolean subobject of a semilattice, ascending by bitmask (|A| <= 20).
std::vector<Subset> boolean_subobjects(const SemiCvx& a);

/// Whether χ_S : A -> 𝟐 is affine. Report-only: Boolean subobjects need not have affine indicators.
SubobjectCheck chi_affinity_check(const ConvexSpace& a, const BooleanSubobject& s);

/// ⟨⟨a⟩⟩ = { b : a = c +_β b for some c and β ∈ (0,1] }, by unfolding the definition.
Subset generated_subobject(const SemiCvx& a, std::size_t point);
/// Membership b ∈ ⟨⟨a⟩⟩ in a polytope, decided by an exact LP on the direction a - b.
bool in_generated_subobject(const GeomCvx& a, const Vec& point, const Vec& b);

/// Runs the Boolean-subobject test on S1 ∩ S2 and reports, without asserting the outcome.
SubobjectCheck boolean_intersection_check(const ConvexSpace& a, const BooleanSubobject& s1,
                                          const BooleanSubobject& s2);

struct UnionIdentityCheck {
  bool passed = true;
  Subset union_of_generated = 0;
  std::optional<std::size_t> witness;  ///< element of the union missing from S
};

/// Compares the union of ⟨⟨a⟩⟩ over a ∈ S with S itself.
UnionIdentityCheck boolean_union_identity(const SemiCvx& a, Subset s);

// ---------------------------------------------------------------------------
// Positively convex wrapper

class PositivelyConvex {
 public:
  /// Throws DomainError if `zero` is not a point of `space`.
  PositivelyConvex(ConvexSpace space, Point zero);
  /// Σ αᵢ aᵢ with Σ αᵢ <= 1, padded by (1 - Σ αᵢ)·zero.
  [[nodiscard]] Point evaluate(const std::vector<std::pair<Rational, Point>>& terms) const;
  [[nodiscard]] const Point& zero() const { return zero_; }

 private:
  ConvexSpace space_;
  Point zero_;
};

PositivelyConvex with_zero(const ConvexSpace& a, const Point& zero);

/// The Boolean subobjects of A under intersection, χ_∅ as the zero element.
struct BooleanFunctionSpace {
  SemiCvx space;
  std::vector<Subset> subobjects;  ///< element i of `space` is χ of subobjects[i]
  std::size_t zero = 0;
};

/// Throws CapacityError above 20 elements and DomainError (naming the pair)
/// when two Boolean subobjects intersect outside the family.
BooleanFunctionSpace function_space_convex(const SemiCvx& a);

// ---------------------------------------------------------------------------
// Affine maps

struct GeomToGeom {
  lp::Matrix matrix;  ///< dim' x dim
  Vec offset;
  [[nodiscard]] Vec operator()(const Vec& x) const;
};

struct SemiToSemi {
  std::vector<std::size_t> table;
  [[nodiscard]] std::size_t operator()(std::size_t x) const { return table[x]; }
};

/// x -> c·x + t.
struct GeomToI {
  Vec c;
  Rational t;
  [[nodiscard]] Rational operator()(const Vec& x) const;
};

struct AnyToTwo {
  BooleanSubobject subobject;
};

using AffineMap = std::variant<GeomToGeom, SemiToSemi, GeomToI, AnyToTwo>;

bool is_valid_map(const GeomToGeom& m, const GeomCvx& dom, const GeomCvx& cod);
bool is_valid_map(const SemiToSemi& m, const SemiCvx& dom, const SemiCvx& cod);
bool is_valid_map(const GeomToI& m, const GeomCvx& dom);

/// Coordinate functionals rescaled into [0,1] on the hull, plus the constants 0 and 1.
std::vector<GeomToI> spanning_functionals(const GeomCvx& a);

/// Affine maps A -> [0,1] with values on the grid {0, 1/k, ..., 1}, found by exhaustive search.
std::vector<std::vector<Rational>> affine_maps_to_interval(const SemiCvx& a, std::size_t grid = 4);

/// ev_a on the variant's affine-map family.
std::vector<Rational> double_dual_embed(const ConvexSpace& a, const Point& p);

struct InjectivityReport {
  bool injective = true;
  std::size_t family_size = 0;
  std::optional<std::pair<Point, Point>> witness;
};

/// Searches for a ≠ b with ev_a = ev_b. Geometric spaces are probed on their
/// generators plus `extra_points`.
InjectivityReport injectivity_check(const ConvexSpace& a, const std::vector<Vec>& extra_points = {});

/// Halfspace with normal b - a through b: a lies strictly below, b on the closed side.
HalfspaceSplit separate_points(const GeomCvx& a, const Vec& x, const Vec& y);

}  // namespace gcvx::convex

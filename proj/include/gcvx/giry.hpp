#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gcvx/convex.hpp"
#include "gcvx/errors.hpp"
#include "gcvx/measurable.hpp"
#include "gcvx/rational.hpp"
#include "gcvx/report.hpp"

// Finitely supported probability measures. A measure on a finite space is
// stored by its masses on the atoms of the σ-algebra, so equality is exact
// and does not depend on how mass is spread inside an atom.
namespace gcvx::giry {

using kernel::Rational;
using kernel::Vec;
using measurable::FinMeasSpace;
using measurable::MeasFn;
using measurable::SpaceRef;
using measurable::Subset;

class FinDist {
 public:
  /// Throws DomainError unless there is one nonnegative mass per atom and they sum to 1.
  FinDist(SpaceRef space, Vec mass);

  [[nodiscard]] const SpaceRef& space() const { return space_; }
  [[nodiscard]] const Vec& mass() const { return mass_; }
  [[nodiscard]] const Rational& atom_mass(std::size_t atom) const { return mass_[atom]; }
  /// P(U) for U in the σ-algebra; throws MeasurabilityError otherwise.
  [[nodiscard]] Rational measure(Subset u) const;
  /// Indices of atoms with positive mass.
  [[nodiscard]] std::vector<std::size_t> support() const;
  [[nodiscard]] std::string describe() const;

  friend bool operator==(const FinDist& a, const FinDist& b) {
    return a.mass_ == b.mass_ && (a.space_ == b.space_ || *a.space_ == *b.space_);
  }

 private:
  SpaceRef space_;
  Vec mass_;
};

/// A finite formal convex combination Σ wᵢ·tᵢ with distinct tᵢ and positive weights.
template <class T>
class FinSupp {
 public:
  FinSupp() = default;
  /// Merges repeated values, drops zero weights; throws DomainError on negative
  /// weights or a total other than 1.
  explicit FinSupp(std::vector<std::pair<Rational, T>> terms) {
    Rational total;
    for (auto& [w, t] : terms) {
      if (w.sign() < 0) throw DomainError("negative weight " + w.str());
      total += w;
      if (w.is_zero()) continue;
      auto it = std::find_if(terms_.begin(), terms_.end(), [&](const auto& e) { return e.second == t; });
      if (it == terms_.end()) terms_.emplace_back(w, std::move(t));
      else it->first += w;
    }
    if (total != Rational(1)) throw DomainError("weights sum to " + total.str() + ", expected 1");
  }

  [[nodiscard]] const std::vector<std::pair<Rational, T>>& terms() const { return terms_; }

  /// G(f): the image measure along f.
  template <class F>
  [[nodiscard]] auto map(F&& f) const -> FinSupp<std::decay_t<decltype(f(std::declval<const T&>()))>> {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    std::vector<std::pair<Rational, U>> out;
    for (const auto& [w, t] : terms_) out.emplace_back(w, f(t));
    return FinSupp<U>(std::move(out));
  }

  friend bool operator==(const FinSupp& a, const FinSupp& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    return std::all_of(a.terms_.begin(), a.terms_.end(), [&](const auto& e) {
      return std::any_of(b.terms_.begin(), b.terms_.end(), [&](const auto& o) { return o == e; });
    });
  }

 private:
  std::vector<std::pair<Rational, T>> terms_;
};

template <class T>
FinSupp<T> eta(T value) {
  return FinSupp<T>({{Rational(1), std::move(value)}});
}

/// Multiplication on formal combinations: Σᵢ wᵢ Σⱼ vᵢⱼ tᵢⱼ.
template <class T>
FinSupp<T> flatten(const FinSupp<FinSupp<T>>& nested) {
  std::vector<std::pair<Rational, T>> out;
  for (const auto& [w, inner] : nested.terms()) {
    for (const auto& [v, t] : inner.terms()) out.emplace_back(w * v, t);
  }
  return FinSupp<T>(std::move(out));
}

/// The carrier of GX is infinite; a measure on it is a finite combination of measures.
using DistOfDist = FinSupp<FinDist>;
using DistOfDistOfDist = FinSupp<DistOfDist>;

report::json dist_json(const FinDist& p);
report::json mixture_json(const DistOfDist& pp);

/// Throws DomainError on an unknown point.
FinDist dirac(const SpaceRef& x, std::size_t point);
FinDist dirac(const SpaceRef& x, const std::string& point);
/// Throws DomainError unless P lives on f's domain.
FinDist pushforward(const MeasFn& f, const FinDist& p);
/// Σ over atoms of P(atom)·f(atom) for f given pointwise. Throws MeasurabilityError
/// if f is not constant on atoms and DomainError if a value leaves [0,1].
Rational integrate(const FinDist& p, const std::vector<Rational>& f);
/// (1 - α)P + αQ.
FinDist mix(const FinDist& p, const FinDist& q, const Rational& alpha);

/// μ(PP)(U) = Σ_q PP(q)·q(U). Throws DomainError on mixed base spaces.
FinDist mu(const DistOfDist& pp);
/// G(η_X)(P): each atom's mass placed on the dirac at that atom.
DistOfDist g_eta(const FinDist& p);

/// The simplex of measures on X, in atom coordinates.
convex::GeomCvx P_as_convex(const FinMeasSpace& x);

using MuFn = std::function<FinDist(const DistOfDist&)>;

struct MonadLawConfig {
  std::size_t grid = 4;          ///< inner masses and outer weights on {0, 1/grid, ..., 1}
  std::size_t max_support = 3;   ///< outer support bound
  std::size_t assoc_samples = 200;
  std::uint64_t seed = 1;
  MuFn mu = giry::mu;
};

/// Every distribution on the atoms of X with masses on the grid.
std::vector<FinDist> grid_distributions(const SpaceRef& x, std::size_t grid);
/// Every outer combination of `inner` with support <= max_support and grid weights.
std::vector<DistOfDist> grid_mixtures(const std::vector<FinDist>& inner, std::size_t grid, std::size_t max_support);

/// Unit, associativity and naturality laws for every space in `spaces`, with all
/// measurable maps between them used for naturality.
void monad_laws(report::Harness& h, const std::vector<SpaceRef>& spaces, const MonadLawConfig& config);

// ---------------------------------------------------------------------------
// Weakly averaging functionals

using TestFn = std::function<Rational(const convex::Point&)>;

class WAFunctional {
 public:
  /// Throws DomainError unless the weights are positive, sum to 1 and the points lie in A.
  WAFunctional(convex::ConvexSpace base, std::vector<std::pair<Rational, convex::Point>> terms);
  /// Skips validation. Only for exercising the checks on deliberately broken functionals.
  static WAFunctional unchecked(convex::ConvexSpace base, std::vector<std::pair<Rational, convex::Point>> terms);

  [[nodiscard]] const convex::ConvexSpace& base() const { return base_; }
  [[nodiscard]] const std::vector<std::pair<Rational, convex::Point>>& terms() const { return terms_; }
  [[nodiscard]] Rational operator()(const TestFn& m) const;

 private:
  WAFunctional() = default;
  convex::ConvexSpace base_ = convex::GeomCvx(0, {});
  std::vector<std::pair<Rational, convex::Point>> terms_;
};

WAFunctional wa_functional(const convex::ConvexSpace& a, const std::vector<Rational>& weights,
                           const std::vector<convex::Point>& points);

struct WaCheck {
  bool passed = true;
  std::string failure;  ///< which identity broke, with the values involved
};

/// Checks F(c) = c for constants on a grid, F(s·m + t) = s·F(m) + t for every endo
/// and test function, and F(m +_β m') = F(m) +_β F(m') for pairs of test functions.
WaCheck wa_check(const WAFunctional& f, const std::vector<convex::EndoI>& endos, const std::vector<TestFn>& test_fns);

/// φ_A: the functional Σ_atoms P(atom)·ev_a on a semilattice whose Σ-space carries P.
WAFunctional measure_to_functional(const FinDist& p, const convex::SemiCvx& a);
/// φ_A⁻¹: solves for atom masses from the values on the Boolean subobjects.
/// Throws DomainError when those values do not determine a measure on `sigma`.
FinDist functional_to_measure(const WAFunctional& f, const SpaceRef& sigma);

/// χ_S as a test function.
TestFn indicator(const convex::BooleanSubobject& s);

}  // namespace gcvx::giry

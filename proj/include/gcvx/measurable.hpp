#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gcvx::measurable {

/// A subset of a carrier, one bit per point in carrier order.
using Subset = std::uint64_t;

inline constexpr std::size_t kMaxPoints = 64;
/// Largest σ-algebra we are willing to list member by member.
inline constexpr std::size_t kMaxMaterializedMembers = std::size_t{1} << 20;
/// Largest candidate count |Y|^|X| scanned when enumerating maps.
inline constexpr std::uint64_t kMaxCandidateMaps = std::uint64_t{1} << 20;

constexpr Subset bit(std::size_t i) { return Subset{1} << i; }
constexpr Subset full_set(std::size_t n) { return n >= 64 ? ~Subset{0} : bit(n) - 1; }
constexpr bool has(Subset s, std::size_t i) { return (s >> i) & 1U; }
constexpr std::size_t card(Subset s) { return static_cast<std::size_t>(std::popcount(s)); }

/// A finite measurable space.
///
/// The σ-algebra of a finite carrier is determined by its atoms, so that is what
/// is stored; `members()` lists the σ-algebra extensionally on demand.
class FinMeasSpace {
 public:
  /// Throws DomainError unless `atoms` partitions the points into nonempty blocks.
  static FinMeasSpace from_atoms(std::vector<std::string> points, std::vector<Subset> atoms);
  /// Validates the σ-algebra axioms on an explicit family; throws DomainError naming the violation.
  static FinMeasSpace from_sigma(std::vector<std::string> points, const std::vector<Subset>& sigma);
  static FinMeasSpace powerset(std::vector<std::string> points);
  static FinMeasSpace trivial(std::vector<std::string> points);

  [[nodiscard]] const std::vector<std::string>& points() const { return points_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] Subset full() const { return full_set(points_.size()); }
  /// Atoms ordered by their lowest point.
  [[nodiscard]] const std::vector<Subset>& atoms() const { return atoms_; }
  [[nodiscard]] std::size_t atom_of(std::size_t point) const { return atom_of_[point]; }
  [[nodiscard]] bool contains(Subset u) const;
  [[nodiscard]] bool is_discrete() const { return atoms_.size() == points_.size(); }
  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& point) const;
  /// Throws DomainError on unknown ids.
  [[nodiscard]] Subset subset_of(const std::vector<std::string>& ids) const;
  [[nodiscard]] std::vector<std::string> ids_of(Subset s) const;

  /// Number of members of the σ-algebra, 2^(#atoms).
  [[nodiscard]] std::uint64_t sigma_size() const;
  /// Every member, ascending by bitmask. Throws CapacityError above kMaxMaterializedMembers.
  [[nodiscard]] std::vector<Subset> members() const;
  /// The union of the atoms picked out by `selector` (bit i selects atom i).
  [[nodiscard]] Subset union_of_atoms(std::uint64_t selector) const;

  friend bool operator==(const FinMeasSpace&, const FinMeasSpace&) = default;

 private:
  FinMeasSpace(std::vector<std::string> points, std::vector<Subset> atoms);
  std::vector<std::string> points_;
  std::vector<Subset> atoms_;
  std::vector<std::size_t> atom_of_;
};

using SpaceRef = std::shared_ptr<const FinMeasSpace>;

inline SpaceRef share(FinMeasSpace s) { return std::make_shared<const FinMeasSpace>(std::move(s)); }

/// Point ids "0", "1", ... for quick construction.
std::vector<std::string> numbered_points(std::size_t n, const std::string& prefix = "");

/// Atoms separated by '|', e.g. "{p0,p1|p2}".
std::string describe(const FinMeasSpace& x);
/// "{a,b}" for a subset of X's points.
std::string describe(const FinMeasSpace& x, Subset s);

/// Preimage of `u` under the point map `mapping`.
Subset preimage(const std::vector<std::size_t>& mapping, Subset u);

/// Least σ-algebra containing the generators.
FinMeasSpace generate_sigma(std::vector<std::string> points, const std::vector<Subset>& generators);

/// A map from a source space into a bare carrier.
struct MapInto {
  SpaceRef source;
  std::vector<std::size_t> mapping;
};

/// A map out of a bare carrier into a target space.
struct MapOutOf {
  std::vector<std::size_t> mapping;
  SpaceRef target;
};

/// Largest σ-algebra on the carrier making every family map measurable.
FinMeasSpace coinduced_sigma(std::vector<std::string> points, const std::vector<MapInto>& family);

/// Smallest σ-algebra on the carrier making every family map measurable.
FinMeasSpace induced_sigma(std::vector<std::string> points, const std::vector<MapOutOf>& family);

struct MeasurabilityCheck {
  bool measurable = true;
  /// A member U of the codomain σ-algebra whose preimage is not measurable.
  std::optional<Subset> witness;
};

/// Throws DomainError when the mapping is not total into the codomain.
MeasurabilityCheck is_measurable(const std::vector<std::size_t>& mapping, const FinMeasSpace& dom,
                                 const FinMeasSpace& cod);

/// A measurable function between finite measurable spaces.
class MeasFn {
 public:
  /// Throws MeasurabilityError (naming the witness set) when the map is not measurable.
  MeasFn(SpaceRef dom, SpaceRef cod, std::vector<std::size_t> mapping);

  [[nodiscard]] const SpaceRef& dom() const { return dom_; }
  [[nodiscard]] const SpaceRef& cod() const { return cod_; }
  [[nodiscard]] const std::vector<std::size_t>& mapping() const { return mapping_; }
  [[nodiscard]] std::size_t operator()(std::size_t x) const { return mapping_[x]; }

  static MeasFn identity(const SpaceRef& x);
  /// g after f.
  friend MeasFn compose(const MeasFn& g, const MeasFn& f);

  friend bool operator==(const MeasFn& a, const MeasFn& b) {
    return *a.dom_ == *b.dom_ && *a.cod_ == *b.cod_ && a.mapping_ == b.mapping_;
  }

 private:
  SpaceRef dom_;
  SpaceRef cod_;
  std::vector<std::size_t> mapping_;
};

/// All measurable maps X -> Y in lexicographic order of (f(x_0), f(x_1), ...).
/// Throws CapacityError when |Y|^|X| exceeds kMaxCandidateMaps.
std::vector<MeasFn> enumerate_meas_fns(const SpaceRef& x, const SpaceRef& y);

struct SeparationCheck {
  bool separated = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

SeparationCheck is_separated(const FinMeasSpace& x);

/// Every σ-algebra on an n-point carrier (one per set partition), n <= 6.
std::vector<FinMeasSpace> all_spaces_on(std::size_t n);

}  // namespace gcvx::measurable

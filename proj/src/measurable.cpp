#include "gcvx/measurable.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gcvx/errors.hpp"

namespace gcvx::measurable {

namespace {

void check_point_count(std::size_t n) {
  if (n > kMaxPoints) {
    throw CapacityError("carrier has " + std::to_string(n) + " points; at most " + std::to_string(kMaxPoints) +
                        " are supported");
  }
}

void check_unique_ids(const std::vector<std::string>& points) {
  std::set<std::string> seen(points.begin(), points.end());
  if (seen.size() != points.size()) throw DomainError("duplicate point ids in carrier");
}

std::vector<Subset> sort_atoms(std::vector<Subset> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](Subset a, Subset b) { return std::countr_zero(a) < std::countr_zero(b); });
  return atoms;
}

}  // namespace

FinMeasSpace::FinMeasSpace(std::vector<std::string> points, std::vector<Subset> atoms)
    : points_(std::move(points)), atoms_(sort_atoms(std::move(atoms))), atom_of_(points_.size()) {
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    for (std::size_t p = 0; p < points_.size(); ++p) {
      if (has(atoms_[a], p)) atom_of_[p] = a;
    }
  }
}

FinMeasSpace FinMeasSpace::from_atoms(std::vector<std::string> points, std::vector<Subset> atoms) {
  check_point_count(points.size());
  check_unique_ids(points);
  Subset seen = 0;
  for (Subset a : atoms) {
    if (a == 0) throw DomainError("empty atom");
    if (a & ~full_set(points.size())) throw DomainError("atom outside the carrier");
    if (a & seen) throw DomainError("overlapping atoms");
    seen |= a;
  }
  if (seen != full_set(points.size())) throw DomainError("atoms do not cover the carrier");
  return FinMeasSpace(std::move(points), std::move(atoms));
}

FinMeasSpace FinMeasSpace::from_sigma(std::vector<std::string> points, const std::vector<Subset>& sigma) {
  check_point_count(points.size());
  const Subset all = full_set(points.size());
  const std::set<Subset> family(sigma.begin(), sigma.end());
  for (Subset u : family) {
    if (u & ~all) throw DomainError("sigma member outside the carrier");
  }
  if (!family.contains(0)) throw DomainError("sigma is missing the empty set");
  if (!family.contains(all)) throw DomainError("sigma is missing the full set");
  for (Subset u : family) {
    if (!family.contains(all & ~u)) throw DomainError("sigma is not closed under complement");
    for (Subset v : family) {
      if (!family.contains(u | v)) throw DomainError("sigma is not closed under union");
    }
  }
  // The atoms of a finite algebra are its minimal nonempty members.
  std::vector<Subset> atoms;
  for (Subset u : family) {
    if (u == 0) continue;
    bool minimal = true;
    for (Subset v : family) {
      if (v != 0 && v != u && (v & ~u) == 0) {
        minimal = false;
        break;
      }
    }
    if (minimal) atoms.push_back(u);
  }
  return from_atoms(std::move(points), std::move(atoms));
}

FinMeasSpace FinMeasSpace::powerset(std::vector<std::string> points) {
  std::vector<Subset> atoms;
  for (std::size_t i = 0; i < points.size(); ++i) atoms.push_back(bit(i));
  return from_atoms(std::move(points), std::move(atoms));
}

FinMeasSpace FinMeasSpace::trivial(std::vector<std::string> points) {
  std::vector<Subset> atoms;
  if (!points.empty()) atoms.push_back(full_set(points.size()));
  return from_atoms(std::move(points), std::move(atoms));
}

bool FinMeasSpace::contains(Subset u) const {
  if (u & ~full()) return false;
  return std::all_of(atoms_.begin(), atoms_.end(), [u](Subset a) { return (a & u) == 0 || (a & u) == a; });
}

std::optional<std::size_t> FinMeasSpace::index_of(const std::string& point) const {
  const auto it = std::find(points_.begin(), points_.end(), point);
  if (it == points_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

Subset FinMeasSpace::subset_of(const std::vector<std::string>& ids) const {
  Subset s = 0;
  for (const auto& id : ids) {
    const auto i = index_of(id);
    if (!i) throw DomainError("unknown point '" + id + "'");
    s |= bit(*i);
  }
  return s;
}

std::vector<std::string> FinMeasSpace::ids_of(Subset s) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (has(s, i)) out.push_back(points_[i]);
  }
  return out;
}

std::uint64_t FinMeasSpace::sigma_size() const {
  if (atoms_.size() >= 64) throw CapacityError("sigma-algebra too large to count");
  return std::uint64_t{1} << atoms_.size();
}

Subset FinMeasSpace::union_of_atoms(std::uint64_t selector) const {
  Subset u = 0;
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    if ((selector >> a) & 1U) u |= atoms_[a];
  }
  return u;
}

std::vector<Subset> FinMeasSpace::members() const {
  if (atoms_.size() > 20) {
    throw CapacityError("sigma-algebra with " + std::to_string(atoms_.size()) + " atoms exceeds the 2^20 member guard");
  }
  std::vector<Subset> out;
  out.reserve(sigma_size());
  for (std::uint64_t sel = 0; sel < sigma_size(); ++sel) out.push_back(union_of_atoms(sel));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> numbered_points(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::string describe(const FinMeasSpace& x) {
  std::string out = "{";
  for (std::size_t a = 0; a < x.atoms().size(); ++a) {
    if (a) out += "|";
    const auto ids = x.ids_of(x.atoms()[a]);
    for (std::size_t k = 0; k < ids.size(); ++k) out += (k ? "," : "") + ids[k];
  }
  return out + "}";
}

std::string describe(const FinMeasSpace& x, Subset s) {
  std::string out;
  for (const auto& id : x.ids_of(s)) out += (out.empty() ? "" : ",") + id;
  return "{" + out + "}";
}

Subset preimage(const std::vector<std::size_t>& mapping, Subset u) {
  Subset s = 0;
  for (std::size_t x = 0; x < mapping.size(); ++x) {
    if (has(u, mapping[x])) s |= bit(x);
  }
  return s;
}

FinMeasSpace generate_sigma(std::vector<std::string> points, const std::vector<Subset>& generators) {
  check_point_count(points.size());
  const Subset all = full_set(points.size());
  // Partition refinement: the atoms of the generated algebra are the nonempty
  // cells cut out by every generator and its complement.
  std::vector<Subset> blocks;
  if (all != 0) blocks.push_back(all);
  for (Subset g : generators) {
    if (g & ~all) throw DomainError("generator is not a subset of the carrier");
    std::vector<Subset> next;
    for (Subset b : blocks) {
      if (b & g) next.push_back(b & g);
      if (b & ~g) next.push_back(b & ~g);
    }
    blocks = std::move(next);
  }
  return FinMeasSpace::from_atoms(std::move(points), std::move(blocks));
}

FinMeasSpace coinduced_sigma(std::vector<std::string> points, const std::vector<MapInto>& family) {
  check_point_count(points.size());
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  // U is admissible iff every image of a source atom lies entirely inside or
  // outside U, so points sharing such an image must stay together.
  for (const auto& [source, mapping] : family) {
    if (mapping.size() != source->size()) throw DomainError("family map is not total on its source");
    for (std::size_t y : mapping) {
      if (y >= n) throw DomainError("family map leaves the carrier");
    }
    for (Subset atom : source->atoms()) {
      std::optional<std::size_t> first;
      for (std::size_t x = 0; x < mapping.size(); ++x) {
        if (!has(atom, x)) continue;
        if (!first) {
          first = find(mapping[x]);
        } else {
          parent[find(mapping[x])] = *first;
        }
      }
    }
  }
  std::vector<Subset> cells(n, 0);
  for (std::size_t i = 0; i < n; ++i) cells[find(i)] |= bit(i);
  std::vector<Subset> atoms;
  for (Subset c : cells) {
    if (c) atoms.push_back(c);
  }
  return FinMeasSpace::from_atoms(std::move(points), std::move(atoms));
}

FinMeasSpace induced_sigma(std::vector<std::string> points, const std::vector<MapOutOf>& family) {
  std::vector<Subset> generators;
  for (const auto& [mapping, target] : family) {
    if (mapping.size() != points.size()) throw DomainError("family map is not total on the carrier");
    for (std::size_t y : mapping) {
      if (y >= target->size()) throw DomainError("family map leaves its target");
    }
    // preimages of atoms generate the same algebra as preimages of all members
    for (Subset atom : target->atoms()) generators.push_back(preimage(mapping, atom));
  }
  return generate_sigma(std::move(points), generators);
}

MeasurabilityCheck is_measurable(const std::vector<std::size_t>& mapping, const FinMeasSpace& dom,
                                 const FinMeasSpace& cod) {
  if (mapping.size() != dom.size()) throw DomainError("map is not total on its domain");
  for (std::size_t y : mapping) {
    if (y >= cod.size()) throw DomainError("map leaves its codomain");
  }
  for (Subset atom : cod.atoms()) {
    if (!dom.contains(preimage(mapping, atom))) return {false, atom};
  }
  return {};
}

MeasFn::MeasFn(SpaceRef dom, SpaceRef cod, std::vector<std::size_t> mapping)
    : dom_(std::move(dom)), cod_(std::move(cod)), mapping_(std::move(mapping)) {
  const auto check = is_measurable(mapping_, *dom_, *cod_);
  if (!check.measurable) {
    std::string set;
    for (const auto& id : cod_->ids_of(*check.witness)) set += (set.empty() ? "" : ",") + id;
    throw MeasurabilityError("map is not measurable: preimage of {" + set + "} is not in the domain sigma-algebra");
  }
}

MeasFn MeasFn::identity(const SpaceRef& x) {
  std::vector<std::size_t> m(x->size());
  std::iota(m.begin(), m.end(), 0);
  return MeasFn(x, x, std::move(m));
}

MeasFn compose(const MeasFn& g, const MeasFn& f) {
  if (!(*f.cod() == *g.dom())) throw DomainError("composition of maps with mismatched spaces");
  std::vector<std::size_t> m(f.mapping().size());
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = g(f(x));
  return MeasFn(f.dom(), g.cod(), std::move(m));
}

std::vector<MeasFn> enumerate_meas_fns(const SpaceRef& x, const SpaceRef& y) {
  const std::size_t nx = x->size();
  const std::size_t ny = y->size();
  std::uint64_t candidates = 1;
  for (std::size_t i = 0; i < nx; ++i) {
    if (ny == 0) {
      candidates = 0;
      break;
    }
    if (candidates > kMaxCandidateMaps / ny) {
      throw CapacityError("|Y|^|X| = " + std::to_string(ny) + "^" + std::to_string(nx) + " exceeds the 2^20 guard");
    }
    candidates *= ny;
  }
  std::vector<MeasFn> out;
  if (candidates == 0) return out;
  std::vector<std::size_t> m(nx, 0);
  for (std::uint64_t c = 0; c < candidates; ++c) {
    if (is_measurable(m, *x, *y).measurable) out.emplace_back(x, y, m);
    // odometer, last point fastest
    for (std::size_t i = nx; i-- > 0;) {
      if (++m[i] < ny) break;
      m[i] = 0;
    }
  }
  return out;
}

SeparationCheck is_separated(const FinMeasSpace& x) {
  // Two points are separated exactly when they lie in different atoms.
  for (Subset atom : x.atoms()) {
    if (card(atom) > 1) {
      const auto first = static_cast<std::size_t>(std::countr_zero(atom));
      const auto second = static_cast<std::size_t>(std::countr_zero(atom & (atom - 1)));
      return {false, std::pair{first, second}};
    }
  }
  return {};
}

std::vector<FinMeasSpace> all_spaces_on(std::size_t n) {
  if (n > 6) throw CapacityError("partition enumeration limited to 6 points");
  std::vector<FinMeasSpace> out;
  // restricted growth strings
  std::vector<std::size_t> rgs(n, 0);
  for (;;) {
    std::size_t blocks = 0;
    for (std::size_t v : rgs) blocks = std::max(blocks, v + 1);
    std::vector<Subset> atoms(n == 0 ? 0 : blocks, 0);
    for (std::size_t i = 0; i < n; ++i) atoms[rgs[i]] |= bit(i);
    out.push_back(FinMeasSpace::from_atoms(numbered_points(n, "p"), atoms));
    std::size_t i = n;
    while (i-- > 1) {
      std::size_t prefix_max = 0;
      for (std::size_t j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[j]);
      if (rgs[i] <= prefix_max) {
        ++rgs[i];
        for (std::size_t j = i + 1; j < n; ++j) rgs[j] = 0;
        break;
      }
    }
    if (i == 0 || n <= 1) break;
  }
  return out;
}

}  // namespace gcvx::measurable

#include "gcvx/convex.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "gcvx/errors.hpp"

namespace gcvx::convex {

using measurable::bit;
using measurable::has;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Vec lerp(const Vec& x, const Vec& y, const Rational& alpha) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = kernel::mix(x[i], y[i], alpha);
  return out;
}

void require_weight(const Rational& alpha) {
  if (!alpha.in_unit_interval()) throw DomainError("convex weight outside [0,1]: " + alpha.str());
}

const Vec& as_vec(const Point& p) {
  if (const auto* v = std::get_if<Vec>(&p)) return *v;
  throw DomainError("expected a vector point for a geometric space");
}

std::size_t as_index(const Point& p, const SemiCvx& a) {
  const auto* i = std::get_if<std::size_t>(&p);
  if (!i) throw DomainError("expected an element index for a semilattice space");
  if (*i >= a.size()) throw DomainError("element index out of range: " + std::to_string(*i));
  return *i;
}

void require_member(const GeomCvx& a, const Vec& p) {
  const auto m = hull_member(a, p);
  if (!m.member) {
    throw DomainError("point " + kernel::to_string(p) + " is not in the hull (separated by c = " +
                      kernel::to_string(m.certificate->c) + ", t = " + m.certificate->t.str() + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

GeomCvx::GeomCvx(std::size_t dim, std::vector<Vec> generators) : dim_(dim) {
  for (auto& g : generators) {
    if (g.size() != dim) throw DomainError("generator has dimension " + std::to_string(g.size()) + ", expected " + std::to_string(dim));
    if (std::find(generators_.begin(), generators_.end(), g) == generators_.end()) generators_.push_back(std::move(g));
  }
}

SemiCvx::SemiCvx(std::vector<std::string> elements, std::vector<std::vector<std::size_t>> meet)
    : elements_(std::move(elements)), meet_(std::move(meet)) {
  const std::size_t n = elements_.size();
  if (n > measurable::kMaxPoints) throw CapacityError("semilattice too large");
  if (std::set<std::string>(elements_.begin(), elements_.end()).size() != n) {
    throw DomainError("duplicate semilattice element ids");
  }
  if (meet_.size() != n) throw DomainError("meet table has the wrong number of rows");
  for (const auto& row : meet_) {
    if (row.size() != n) throw DomainError("meet table row has the wrong length");
    for (std::size_t v : row) {
      if (v >= n) throw DomainError("meet table entry out of range");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (meet_[a][a] != a) throw DomainError("meet is not idempotent at " + elements_[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (meet_[a][b] != meet_[b][a]) throw DomainError("meet is not commutative at " + elements_[a] + "," + elements_[b]);
      for (std::size_t c = 0; c < n; ++c) {
        if (meet_[meet_[a][b]][c] != meet_[a][meet_[b][c]]) {
          throw DomainError("meet is not associative at " + elements_[a] + "," + elements_[b] + "," + elements_[c]);
        }
      }
    }
  }
}

Subset SemiCvx::up_set(std::size_t a) const {
  Subset s = 0;
  for (std::size_t b = 0; b < size(); ++b) {
    if (leq(a, b)) s |= bit(b);
  }
  return s;
}

std::optional<std::size_t> SemiCvx::index_of(const std::string& id) const {
  const auto it = std::find(elements_.begin(), elements_.end(), id);
  if (it == elements_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::string SemiCvx::describe(Subset s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!has(s, i)) continue;
    if (!first) out += ",";
    out += elements_[i];
    first = false;
  }
  return out + "}";
}

std::string describe(const Point& p, const ConvexSpace& a) {
  if (const auto* i = std::get_if<std::size_t>(&p)) {
    if (const auto* s = std::get_if<SemiCvx>(&a); s && *i < s->size()) return s->elements()[*i];
    return "#" + std::to_string(*i);
  }
  return kernel::to_string(std::get<Vec>(p));
}

std::string describe(const SemiCvx& a) {
  std::string elems;
  std::string covers;
  for (std::size_t x = 0; x < a.size(); ++x) {
    elems += (x ? "," : "") + a.elements()[x];
    for (std::size_t y = 0; y < a.size(); ++y) {
      if (x == y || !a.leq(x, y)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < a.size(); ++z) {
        if (z != x && z != y && a.leq(x, z) && a.leq(z, y)) cover = false;
      }
      if (cover) covers += (covers.empty() ? "" : ",") + a.elements()[x] + "<" + a.elements()[y];
    }
  }
  return "(" + elems + ";" + covers + ")";
}

// ---------------------------------------------------------------------------

SemiCvx two_space() { return SemiCvx({"0", "1"}, {{0, 0}, {0, 1}}); }

GeomCvx free_convex(std::size_t n) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return GeomCvx(n, std::move(gens));
}

GeomCvx unit_interval() { return GeomCvx(1, {{Rational(0)}, {Rational(1)}}); }

SemiCvx chain(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "e" + std::to_string(i));
  std::vector<std::vector<std::size_t>> meet(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) meet[i][j] = std::min(i, j);
  }
  return SemiCvx(std::move(ids), std::move(meet));
}

namespace {

using Table = std::vector<std::vector<std::size_t>>;

std::vector<std::size_t> canonical_key(const Table& t) {
  const std::size_t n = t.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> best;
  do {
    std::vector<std::size_t> key(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) key[perm[x] * n + perm[y]] = perm[t[x][y]];
    }
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<SemiCvx> all_semilattices(std::size_t n) {
  if (n == 0) return {};
  if (n > 6) throw CapacityError("semilattice enumeration limited to 6 elements");
  // Every poset has a natural labelling, so it suffices to scan strict orders
  // contained in { (i, j) : i < j }.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::set<std::vector<std::size_t>> seen;
  std::vector<SemiCvx> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((mask >> k) & 1U) le[pairs[k].first][pairs[k].second] = true;
    }
    bool transitive = true;
    for (std::size_t a = 0; a < n && transitive; ++a) {
      for (std::size_t b = 0; b < n && transitive; ++b) {
        for (std::size_t c = 0; c < n && transitive; ++c) {
          if (le[a][b] && le[b][c] && !le[a][c]) transitive = false;
        }
      }
    }
    if (!transitive) continue;
    Table meet(n, std::vector<std::size_t>(n));
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      for (std::size_t b = 0; b < n && ok; ++b) {
        std::optional<std::size_t> glb;
        for (std::size_t c = 0; c < n; ++c) {
          if (!le[c][a] || !le[c][b]) continue;
          bool greatest = true;
          for (std::size_t d = 0; d < n; ++d) {
            if (le[d][a] && le[d][b] && !le[d][c]) greatest = false;
          }
          if (greatest) glb = c;
        }
        if (!glb) ok = false;
        else meet[a][b] = *glb;
      }
    }
    if (!ok) continue;
    if (seen.insert(canonical_key(meet)).second) {
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
      out.emplace_back(std::move(ids), std::move(meet));
    }
  }
  return out;
}

std::optional<std::vector<std::size_t>> find_isomorphism(const SemiCvx& a, const SemiCvx& b) {
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      for (std::size_t y = 0; y < n && ok; ++y) {
        if (perm[a.meet(x, y)] != b.meet(perm[x], perm[y])) ok = false;
      }
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// ---------------------------------------------------------------------------

HullMembership hull_member(const GeomCvx& a, const Vec& p) {
  if (p.size() != a.dim()) throw DomainError("query point has dimension " + std::to_string(p.size()) + ", expected " + std::to_string(a.dim()));
  HullMembership out;
  const auto& gens = a.generators();
  if (gens.empty()) {
    out.certificate = SeparatingFunctional{Vec(a.dim()), Rational(-1)};
    return out;
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] == p) {
      out.member = true;
      out.weights.assign(gens.size(), Rational());
      out.weights[i] = 1;
      return out;
    }
  }
  auto tight = [&](const Vec& c) {
    Rational t = kernel::dot(c, gens.front());
    for (const auto& g : gens) t = kernel::max(t, kernel::dot(c, g));
    return t;
  };
  // Coordinate directions first: they give the simplest certificates.
  for (std::size_t j = 0; j < a.dim(); ++j) {
    for (int sign : {1, -1}) {
      Vec c(a.dim());
      c[j] = sign;
      const Rational t = tight(c);
      if (t < kernel::dot(c, p)) {
        out.certificate = SeparatingFunctional{std::move(c), t};
        return out;
      }
    }
  }
  lp::Matrix m(a.dim() + 1, Vec(gens.size()));
  Vec rhs(a.dim() + 1);
  for (std::size_t j = 0; j < a.dim(); ++j) {
    for (std::size_t i = 0; i < gens.size(); ++i) m[j][i] = gens[i][j];
    rhs[j] = p[j];
  }
  for (std::size_t i = 0; i < gens.size(); ++i) m[a.dim()][i] = 1;
  rhs[a.dim()] = 1;
  auto res = lp::feasible(m, rhs);
  if (res.status == lp::Status::optimal) {
    out.member = true;
    out.weights = std::move(res.x);
    return out;
  }
  Vec c(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) c[j] = -res.farkas[j];
  const Rational t = tight(c);
  out.certificate = SeparatingFunctional{std::move(c), t};
  return out;
}

Vec convex_combine(const GeomCvx& a, const Vec& x, const Vec& y, const Rational& alpha) {
  require_weight(alpha);
  require_member(a, x);
  require_member(a, y);
  return lerp(x, y, alpha);
}

std::size_t convex_combine(const SemiCvx& a, std::size_t x, std::size_t y, const Rational& alpha) {
  require_weight(alpha);
  if (x >= a.size() || y >= a.size()) throw DomainError("element index out of range");
  if (alpha.is_zero()) return x;
  if (alpha == Rational(1)) return y;
  return a.meet(x, y);
}

Point convex_combine(const ConvexSpace& a, const Point& x, const Point& y, const Rational& alpha) {
  return std::visit(overloaded{
                        [&](const SemiCvx& s) -> Point { return convex_combine(s, as_index(x, s), as_index(y, s), alpha); },
                        [&](const GeomCvx& g) -> Point { return convex_combine(g, as_vec(x), as_vec(y), alpha); },
                    },
                    a);
}

Point convex_sum(const ConvexSpace& a, const std::vector<std::pair<Rational, Point>>& terms) {
  Rational total;
  for (const auto& [w, p] : terms) {
    if (w.sign() < 0) throw DomainError("negative convex weight " + w.str());
    total += w;
    if (const auto* g = std::get_if<GeomCvx>(&a)) require_member(*g, as_vec(p));
  }
  if (total != Rational(1)) throw DomainError("convex weights sum to " + total.str() + ", expected 1");
  std::optional<Point> acc;
  Rational acc_weight;
  for (const auto& [w, p] : terms) {
    if (w.is_zero()) continue;
    if (!acc) {
      acc = p;
      acc_weight = w;
      continue;
    }
    acc_weight += w;
    const Rational alpha = w / acc_weight;
    acc = std::visit(overloaded{
                         [&](const SemiCvx& s) -> Point { return convex_combine(s, as_index(*acc, s), as_index(p, s), alpha); },
                         [&](const GeomCvx&) -> Point { return lerp(as_vec(*acc), as_vec(p), alpha); },
                     },
                     a);
  }
  return *acc;
}

Point path_eval(const PathMap& path, const Rational& alpha) {
  return convex_combine(path.target, path.a1, path.a2, alpha);
}

EndoI::EndoI(Rational s, Rational t) : s_(std::move(s)), t_(std::move(t)) {
  if (s_ < Rational(-1) || s_ > Rational(1)) throw DomainError("endomorphism scale outside [-1,1]: " + s_.str());
  if (!t_.in_unit_interval()) throw DomainError("endomorphism translation outside [0,1]: " + t_.str());
  if (!(s_ + t_).in_unit_interval()) throw DomainError("endomorphism needs 0 <= s + t <= 1");
}

Rational EndoI::operator()(const Rational& alpha) const {
  require_weight(alpha);
  return s_ * alpha + t_;
}

Rational endo_apply(const EndoI& e, const Rational& alpha) { return e(alpha); }

EndoI endo_compose(const EndoI& e1, const EndoI& e2) {
  return EndoI(e1.s() * e2.s(), e1.s() * e2.t() + e1.t());
}

// ---------------------------------------------------------------------------

bool HalfspaceSplit::contains(const Vec& x) const {
  const Rational v = kernel::dot(normal, x);
  return upper_closed ? v >= threshold : v > threshold;
}

bool contains(const BooleanSubobject& s, const Point& p) {
  return std::visit(overloaded{
                        [&](const HalfspaceSplit& h) { return h.contains(as_vec(p)); },
                        [&](const SemiSubset& m) {
                          const auto* i = std::get_if<std::size_t>(&p);
                          if (!i) throw DomainError("expected an element index");
                          return has(m.members, *i);
                        },
                    },
                    s);
}

namespace {

SubobjectCheck semi_boolean_check(const SemiCvx& a, Subset s) {
  const Rational half(1, 2);
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = x + 1; y < a.size(); ++y) {
      if (has(s, x) != has(s, y)) continue;
      if (has(s, x) != has(s, a.meet(x, y))) return {false, TripleWitness{x, y, half}};
    }
  }
  return {};
}

}  // namespace

SubobjectCheck is_boolean_subobject(const ConvexSpace& a, const BooleanSubobject& s) {
  if (const auto* semi = std::get_if<SemiCvx>(&a)) {
    const auto* m = std::get_if<SemiSubset>(&s);
    if (!m) throw DomainError("semilattice subobjects must be subsets");
    if (m->members & ~semi->full()) throw DomainError("subset leaves the semilattice");
    return semi_boolean_check(*semi, m->members);
  }
  const auto& geom = std::get<GeomCvx>(a);
  const auto* h = std::get_if<HalfspaceSplit>(&s);
  if (!h) throw DomainError("geometric subobjects must be halfspace splits");
  if (h->normal.size() != geom.dim()) throw DomainError("halfspace normal has the wrong dimension");
  // Both open and closed halfspaces are convex, so a well-formed split always passes.
  return {};
}

std::vector<Subset> boolean_subobjects(const SemiCvx& a) {
  if (a.size() > 20) throw CapacityError("too many elements to enumerate subsets");
  std::vector<Subset> out;
  for (Subset s = 0; s <= a.full(); ++s) {
    if (semi_boolean_check(a, s).passed) out.push_back(s);
  }
  return out;
}

SubobjectCheck chi_affinity_check(const ConvexSpace& a, const BooleanSubobject& s) {
  if (const auto* semi = std::get_if<SemiCvx>(&a)) {
    const Subset m = std::get<SemiSubset>(s).members;
    // In 𝟐 every interior combination is the minimum.
    for (std::size_t x = 0; x < semi->size(); ++x) {
      for (std::size_t y = 0; y < semi->size(); ++y) {
        const bool lhs = has(m, semi->meet(x, y));
        const bool rhs = has(m, x) && has(m, y);
        if (lhs != rhs) return {false, TripleWitness{x, y, Rational(1, 2)}};
      }
    }
    return {};
  }
  const auto& geom = std::get<GeomCvx>(a);
  const auto& h = std::get<HalfspaceSplit>(s);
  if (geom.empty()) return {};
  const auto& gens = geom.generators();
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (kernel::dot(h.normal, gens[i]) < kernel::dot(h.normal, gens[lo])) lo = i;
    if (kernel::dot(h.normal, gens[i]) > kernel::dot(h.normal, gens[hi])) hi = i;
  }
  const Rational cmin = kernel::dot(h.normal, gens[lo]);
  const Rational cmax = kernel::dot(h.normal, gens[hi]);
  const bool complement_nonempty = !h.contains(gens[lo]);
  // χ_S fails to be affine exactly when S meets the hull off the boundary
  // hyperplane while its complement is nonempty.
  if (!complement_nonempty || !(cmax > h.threshold)) return {};
  const Rational eps = (cmax - h.threshold) / (Rational(2) * (cmax - cmin));
  return {false, TripleWitness{gens[lo], gens[hi], Rational(1) - eps}};
}

Subset generated_subobject(const SemiCvx& a, std::size_t point) {
  if (point >= a.size()) throw DomainError("element index out of range");
  Subset out = bit(point);  // β = 1
  for (std::size_t b = 0; b < a.size(); ++b) {
    for (std::size_t c = 0; c < a.size(); ++c) {
      if (a.meet(c, b) == point) out |= bit(b);  // β ∈ (0,1)
    }
  }
  return out;
}

bool in_generated_subobject(const GeomCvx& a, const Vec& point, const Vec& b) {
  require_member(a, point);
  if (!hull_member(a, b).member) return false;
  if (point == b) return true;
  const auto& gens = a.generators();
  const std::size_t k = gens.size();
  const std::size_t n = k + 2;  // λ, τ, slack on τ <= 1
  lp::Matrix m;
  Vec rhs;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    Vec row(n);
    for (std::size_t i = 0; i < k; ++i) row[i] = gens[i][j];
    row[k] = -(point[j] - b[j]);
    m.push_back(std::move(row));
    rhs.push_back(point[j]);
  }
  Vec sum(n);
  for (std::size_t i = 0; i < k; ++i) sum[i] = 1;
  m.push_back(std::move(sum));
  rhs.push_back(1);
  Vec cap(n);
  cap[k] = 1;
  cap[k + 1] = 1;
  m.push_back(std::move(cap));
  rhs.push_back(1);
  Vec objective(n);
  objective[k] = 1;
  const auto res = lp::maximize(m, rhs, objective);
  return res.status == lp::Status::optimal && res.value.sign() > 0;
}

namespace {

// Searches x ∉ S1, y ∉ S2 in the hull whose midpoint lies in S1 ∩ S2.
std::optional<TripleWitness> halfspace_intersection_witness(const GeomCvx& a, const HalfspaceSplit& s1,
                                                            const HalfspaceSplit& s2) {
  const auto& gens = a.generators();
  const std::size_t k = gens.size();
  if (k == 0) return std::nullopt;
  // variables: λ (k), μ (k), δ, then one slack per inequality row
  constexpr std::size_t kInequalities = 5;
  const std::size_t delta = 2 * k;
  const std::size_t n = 2 * k + 1 + kInequalities;
  lp::Matrix m;
  Vec rhs;
  std::size_t slack = delta + 1;

  auto proj = [&](const Vec& c, std::size_t i) { return kernel::dot(c, gens[i]); };
  auto add_row = [&](Vec row, int sense, const Rational& b) {  // sense: -1 means <=, +1 means >=
    row[slack++] = sense < 0 ? 1 : -1;
    m.push_back(std::move(row));
    rhs.push_back(b);
  };

  Vec sum_l(n), sum_m(n);
  for (std::size_t i = 0; i < k; ++i) {
    sum_l[i] = 1;
    sum_m[k + i] = 1;
  }
  m.push_back(sum_l);
  rhs.push_back(1);
  m.push_back(sum_m);
  rhs.push_back(1);

  const Rational half(1, 2);
  auto outside = [&](const HalfspaceSplit& s, std::size_t offset) {
    Vec row(n);
    for (std::size_t i = 0; i < k; ++i) row[offset + i] = proj(s.normal, i);
    if (s.upper_closed) row[delta] = 1;  // c·x + δ <= t
    add_row(std::move(row), -1, s.threshold);
  };
  auto midpoint_inside = [&](const HalfspaceSplit& s) {
    Vec row(n);
    for (std::size_t i = 0; i < k; ++i) {
      row[i] = half * proj(s.normal, i);
      row[k + i] = half * proj(s.normal, i);
    }
    if (!s.upper_closed) row[delta] = -1;  // c·z - δ >= t
    add_row(std::move(row), 1, s.threshold);
  };
  outside(s1, 0);
  outside(s2, k);
  midpoint_inside(s1);
  midpoint_inside(s2);
  Vec cap(n);
  cap[delta] = 1;
  add_row(std::move(cap), -1, 1);

  Vec objective(n);
  objective[delta] = 1;
  const auto res = lp::maximize(m, rhs, objective);
  if (res.status != lp::Status::optimal || res.value.sign() <= 0) return std::nullopt;
  Vec x(a.dim()), y(a.dim());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      x[j] += res.x[i] * gens[i][j];
      y[j] += res.x[k + i] * gens[i][j];
    }
  }
  return TripleWitness{x, y, half};
}

}  // namespace

SubobjectCheck boolean_intersection_check(const ConvexSpace& a, const BooleanSubobject& s1,
                                          const BooleanSubobject& s2) {
  if (std::holds_alternative<SemiCvx>(a)) {
    const Subset both = std::get<SemiSubset>(s1).members & std::get<SemiSubset>(s2).members;
    return is_boolean_subobject(a, SemiSubset{both});
  }
  const auto& geom = std::get<GeomCvx>(a);
  const auto& h1 = std::get<HalfspaceSplit>(s1);
  const auto& h2 = std::get<HalfspaceSplit>(s2);
  if (h1.normal.size() != geom.dim() || h2.normal.size() != geom.dim()) {
    throw DomainError("halfspace normal has the wrong dimension");
  }
  // S1 ∩ S2 is convex; only its complement S1ᶜ ∪ S2ᶜ can fail.
  if (auto w = halfspace_intersection_witness(geom, h1, h2)) return {false, std::move(w)};
  return {};
}

UnionIdentityCheck boolean_union_identity(const SemiCvx& a, Subset s) {
  UnionIdentityCheck out;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (has(s, x)) out.union_of_generated |= generated_subobject(a, x);
  }
  const Subset extra = out.union_of_generated & ~s;
  if (extra) {
    out.passed = false;
    out.witness = static_cast<std::size_t>(std::countr_zero(extra));
  }
  return out;
}

// ---------------------------------------------------------------------------

PositivelyConvex::PositivelyConvex(ConvexSpace space, Point zero) : space_(std::move(space)), zero_(std::move(zero)) {
  std::visit(overloaded{
                 [&](const SemiCvx& s) { as_index(zero_, s); },
                 [&](const GeomCvx& g) { require_member(g, as_vec(zero_)); },
             },
             space_);
}

Point PositivelyConvex::evaluate(const std::vector<std::pair<Rational, Point>>& terms) const {
  Rational total;
  for (const auto& [w, p] : terms) {
    if (w.sign() < 0) throw DomainError("negative coefficient " + w.str());
    total += w;
  }
  if (total > Rational(1)) throw DomainError("coefficients sum to " + total.str() + " > 1");
  auto padded = terms;
  padded.emplace_back(Rational(1) - total, zero_);
  return convex_sum(space_, padded);
}

PositivelyConvex with_zero(const ConvexSpace& a, const Point& zero) { return PositivelyConvex(a, zero); }

BooleanFunctionSpace function_space_convex(const SemiCvx& a) {
  auto subs = boolean_subobjects(a);
  const std::size_t n = subs.size();
  std::map<Subset, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[subs[i]] = i;
  std::vector<std::vector<std::size_t>> meet(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto it = index.find(subs[i] & subs[j]);
      if (it == index.end()) {
        throw DomainError("Boolean subobjects " + a.describe(subs[i]) + " and " + a.describe(subs[j]) +
                          " intersect outside the family");
      }
      meet[i][j] = it->second;
    }
  }
  std::vector<std::string> ids;
  for (Subset s : subs) ids.push_back("chi" + a.describe(s));
  return BooleanFunctionSpace{SemiCvx(std::move(ids), std::move(meet)), std::move(subs), index.at(0)};
}

// ---------------------------------------------------------------------------

Vec GeomToGeom::operator()(const Vec& x) const {
  Vec out = offset;
  for (std::size_t i = 0; i < matrix.size(); ++i) out[i] += kernel::dot(matrix[i], x);
  return out;
}

Rational GeomToI::operator()(const Vec& x) const { return kernel::dot(c, x) + t; }

bool is_valid_map(const GeomToGeom& m, const GeomCvx& dom, const GeomCvx& cod) {
  if (m.matrix.size() != cod.dim() || m.offset.size() != cod.dim()) return false;
  for (const auto& row : m.matrix) {
    if (row.size() != dom.dim()) return false;
  }
  return std::all_of(dom.generators().begin(), dom.generators().end(),
                     [&](const Vec& g) { return hull_member(cod, m(g)).member; });
}

bool is_valid_map(const SemiToSemi& m, const SemiCvx& dom, const SemiCvx& cod) {
  if (m.table.size() != dom.size()) return false;
  for (std::size_t v : m.table) {
    if (v >= cod.size()) return false;
  }
  for (std::size_t a = 0; a < dom.size(); ++a) {
    for (std::size_t b = 0; b < dom.size(); ++b) {
      if (m(dom.meet(a, b)) != cod.meet(m(a), m(b))) return false;
    }
  }
  return true;
}

bool is_valid_map(const GeomToI& m, const GeomCvx& dom) {
  if (m.c.size() != dom.dim()) return false;
  return std::all_of(dom.generators().begin(), dom.generators().end(),
                     [&](const Vec& g) { return m(g).in_unit_interval(); });
}

std::vector<GeomToI> spanning_functionals(const GeomCvx& a) {
  std::vector<GeomToI> out;
  if (!a.empty()) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Rational lo = a.generators().front()[j];
      Rational hi = lo;
      for (const auto& g : a.generators()) {
        lo = kernel::min(lo, g[j]);
        hi = kernel::max(hi, g[j]);
      }
      if (lo == hi) continue;
      Vec c(a.dim());
      c[j] = Rational(1) / (hi - lo);
      out.push_back({std::move(c), -lo / (hi - lo)});
    }
  }
  out.push_back({Vec(a.dim()), Rational(0)});
  out.push_back({Vec(a.dim()), Rational(1)});
  return out;
}

std::vector<std::vector<Rational>> affine_maps_to_interval(const SemiCvx& a, std::size_t grid) {
  const std::size_t n = a.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= grid + 1;
    if (total > measurable::kMaxCandidateMaps) throw CapacityError("affine-map search exceeds the 2^20 guard");
  }
  const std::vector<Rational> alphas{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  std::vector<std::vector<Rational>> out;
  std::vector<std::size_t> digits(n, 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    std::vector<Rational> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = Rational(static_cast<long>(digits[i]), static_cast<long>(grid));
    bool affine = true;
    for (std::size_t x = 0; x < n && affine; ++x) {
      for (std::size_t y = 0; y < n && affine; ++y) {
        for (const auto& alpha : alphas) {
          if (values[a.meet(x, y)] != kernel::mix(values[x], values[y], alpha)) {
            affine = false;
            break;
          }
        }
      }
    }
    if (affine) out.push_back(std::move(values));
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] <= grid) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::vector<Rational> double_dual_embed(const ConvexSpace& a, const Point& p) {
  return std::visit(overloaded{
                        [&](const SemiCvx& s) {
                          const std::size_t i = as_index(p, s);
                          std::vector<Rational> out;
                          for (const auto& m : affine_maps_to_interval(s)) out.push_back(m[i]);
                          return out;
                        },
                        [&](const GeomCvx& g) {
                          const Vec& v = as_vec(p);
                          require_member(g, v);
                          std::vector<Rational> out;
                          for (const auto& m : spanning_functionals(g)) out.push_back(m(v));
                          return out;
                        },
                    },
                    a);
}

InjectivityReport injectivity_check(const ConvexSpace& a, const std::vector<Vec>& extra_points) {
  InjectivityReport report;
  std::vector<Point> probes;
  if (const auto* s = std::get_if<SemiCvx>(&a)) {
    for (std::size_t i = 0; i < s->size(); ++i) probes.emplace_back(i);
    report.family_size = affine_maps_to_interval(*s).size();
  } else {
    const auto& g = std::get<GeomCvx>(a);
    for (const auto& v : g.generators()) probes.emplace_back(v);
    for (const auto& v : extra_points) {
      if (std::find(g.generators().begin(), g.generators().end(), v) == g.generators().end()) probes.emplace_back(v);
    }
    report.family_size = spanning_functionals(g).size();
  }
  std::vector<std::vector<Rational>> images;
  for (const auto& p : probes) images.push_back(double_dual_embed(a, p));
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      if (images[i] == images[j]) {
        report.injective = false;
        report.witness = std::pair{probes[i], probes[j]};
        return report;
      }
    }
  }
  return report;
}

HalfspaceSplit separate_points(const GeomCvx& a, const Vec& x, const Vec& y) {
  require_member(a, x);
  require_member(a, y);
  if (x == y) throw DomainError("cannot separate a point from itself");
  Vec c(x.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = y[i] - x[i];
  const Rational t = kernel::dot(c, y);
  return HalfspaceSplit{std::move(c), t, true};
}

}  // namespace gcvx::convex

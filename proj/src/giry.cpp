#include "gcvx/giry.hpp"

#include <random>

namespace gcvx::giry {

using measurable::has;
using report::fail;
using report::json;
using report::Outcome;
using report::pass;
using report::Trace;

FinDist::FinDist(SpaceRef space, Vec mass) : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_) throw DomainError("distribution without a space");
  if (mass_.size() != space_->atoms().size()) {
    throw DomainError("expected " + std::to_string(space_->atoms().size()) + " atom masses, got " +
                      std::to_string(mass_.size()));
  }
  Rational total;
  for (const auto& m : mass_) {
    if (m.sign() < 0) throw DomainError("negative mass " + m.str());
    total += m;
  }
  if (total != Rational(1)) throw DomainError("masses sum to " + total.str() + ", expected 1");
}

Rational FinDist::measure(Subset u) const {
  if (!space_->contains(u)) {
    throw MeasurabilityError("set " + measurable::describe(*space_, u) + " is not measurable");
  }
  Rational total;
  for (std::size_t a = 0; a < mass_.size(); ++a) {
    if ((space_->atoms()[a] & u) == space_->atoms()[a]) total += mass_[a];
  }
  return total;
}

std::vector<std::size_t> FinDist::support() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < mass_.size(); ++a) {
    if (mass_[a].sign() > 0) out.push_back(a);
  }
  return out;
}

std::string FinDist::describe() const {
  std::string out = "(";
  for (std::size_t a = 0; a < mass_.size(); ++a) {
    if (a) out += ",";
    out += mass_[a].str();
  }
  return out + ")";
}

json dist_json(const FinDist& p) {
  json mass = json::object();
  for (std::size_t a = 0; a < p.mass().size(); ++a) mass["atom" + std::to_string(a)] = p.mass()[a].str();
  return {{"space", measurable::describe(*p.space())}, {"mass", mass}};
}

json mixture_json(const DistOfDist& pp) {
  json terms = json::array();
  for (const auto& [w, q] : pp.terms()) terms.push_back({{"weight", w.str()}, {"dist", dist_json(q)}});
  return terms;
}

namespace {

std::string mixture_str(const DistOfDist& pp) {
  std::string out;
  for (const auto& [w, q] : pp.terms()) out += (out.empty() ? "" : " + ") + w.str() + "*" + q.describe();
  return out;
}

void require_same_space(const SpaceRef& a, const SpaceRef& b, const char* what) {
  if (a != b && !(*a == *b)) throw DomainError(std::string(what) + ": measure lives on a different space");
}

}  // namespace

FinDist dirac(const SpaceRef& x, std::size_t point) {
  if (point >= x->size()) throw DomainError("unknown point index " + std::to_string(point));
  Vec mass(x->atoms().size());
  mass[x->atom_of(point)] = 1;
  return FinDist(x, std::move(mass));
}

FinDist dirac(const SpaceRef& x, const std::string& point) {
  const auto i = x->index_of(point);
  if (!i) throw DomainError("unknown point '" + point + "'");
  return dirac(x, *i);
}

FinDist pushforward(const MeasFn& f, const FinDist& p) {
  require_same_space(f.dom(), p.space(), "pushforward");
  const auto& cod = *f.cod();
  Vec mass(cod.atoms().size());
  // f is measurable, so each domain atom lands inside a single codomain atom.
  for (std::size_t a = 0; a < p.mass().size(); ++a) {
    const auto rep = static_cast<std::size_t>(std::countr_zero(p.space()->atoms()[a]));
    mass[cod.atom_of(f(rep))] += p.mass()[a];
  }
  return FinDist(f.cod(), std::move(mass));
}

Rational integrate(const FinDist& p, const std::vector<Rational>& f) {
  const auto& x = *p.space();
  if (f.size() != x.size()) throw DomainError("integrand has the wrong number of values");
  Rational total;
  for (std::size_t a = 0; a < x.atoms().size(); ++a) {
    const Subset atom = x.atoms()[a];
    const auto rep = static_cast<std::size_t>(std::countr_zero(atom));
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (has(atom, i) && f[i] != f[rep]) {
        throw MeasurabilityError("integrand differs on " + x.points()[rep] + " and " + x.points()[i] +
                                 ", which share an atom");
      }
    }
    if (!f[rep].in_unit_interval()) throw DomainError("integrand value outside [0,1]: " + f[rep].str());
    total += p.mass()[a] * f[rep];
  }
  return total;
}

FinDist mix(const FinDist& p, const FinDist& q, const Rational& alpha) {
  require_same_space(p.space(), q.space(), "mix");
  if (!alpha.in_unit_interval()) throw DomainError("mixture weight outside [0,1]");
  Vec mass(p.mass().size());
  for (std::size_t a = 0; a < mass.size(); ++a) mass[a] = kernel::mix(p.mass()[a], q.mass()[a], alpha);
  return FinDist(p.space(), std::move(mass));
}

FinDist mu(const DistOfDist& pp) {
  if (pp.terms().empty()) throw DomainError("mu of an empty combination");
  const auto& space = pp.terms().front().second.space();
  Vec mass(space->atoms().size());
  for (const auto& [w, q] : pp.terms()) {
    require_same_space(space, q.space(), "mu");
    for (std::size_t a = 0; a < mass.size(); ++a) mass[a] += w * q.mass()[a];
  }
  return FinDist(space, std::move(mass));
}

DistOfDist g_eta(const FinDist& p) {
  std::vector<std::pair<Rational, FinDist>> terms;
  for (std::size_t a = 0; a < p.mass().size(); ++a) {
    const auto rep = static_cast<std::size_t>(std::countr_zero(p.space()->atoms()[a]));
    terms.emplace_back(p.mass()[a], dirac(p.space(), rep));
  }
  return DistOfDist(std::move(terms));
}

convex::GeomCvx P_as_convex(const FinMeasSpace& x) { return convex::free_convex(x.atoms().size()); }

std::vector<FinDist> grid_distributions(const SpaceRef& x, std::size_t grid) {
  const std::size_t k = x->atoms().size();
  std::vector<FinDist> out;
  std::vector<std::size_t> parts(k, 0);
  // compositions of `grid` into k nonnegative parts, lexicographic
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == k) {
      parts[i] = left;
      Vec mass(k);
      for (std::size_t j = 0; j < k; ++j) mass[j] = Rational(static_cast<long>(parts[j]), static_cast<long>(grid));
      out.emplace_back(x, std::move(mass));
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      parts[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (k > 0) rec(0, grid);
  return out;
}

namespace {

// Compositions of `total` into `parts` positive parts.
std::vector<std::vector<std::size_t>> positive_compositions(std::size_t total, std::size_t parts) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(parts);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == parts) {
      if (left == 0) return;
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (std::size_t v = 1; v + (parts - i - 1) <= left; ++v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (parts > 0) rec(0, total);
  return out;
}

}  // namespace

std::vector<DistOfDist> grid_mixtures(const std::vector<FinDist>& inner, std::size_t grid, std::size_t max_support) {
  std::vector<DistOfDist> out;
  const std::size_t n = inner.size();
  for (std::size_t s = 1; s <= std::min(max_support, n); ++s) {
    const auto weights = positive_compositions(grid, s);
    std::vector<std::size_t> idx(s);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t start) {
      if (i == s) {
        for (const auto& w : weights) {
          std::vector<std::pair<Rational, FinDist>> terms;
          for (std::size_t j = 0; j < s; ++j) {
            terms.emplace_back(Rational(static_cast<long>(w[j]), static_cast<long>(grid)), inner[idx[j]]);
          }
          out.emplace_back(std::move(terms));
        }
        return;
      }
      for (std::size_t v = start; v < n; ++v) {
        idx[i] = v;
        rec(i + 1, v + 1);
      }
    };
    rec(0, 0);
  }
  return out;
}

void monad_laws(report::Harness& h, const std::vector<SpaceRef>& spaces, const MonadLawConfig& config) {
  report::parallel_checks(h, spaces.size(), [&](report::Harness& shard, std::size_t s) {
    const SpaceRef& x = spaces[s];
    const std::string xname = "X" + measurable::describe(*x);
    const auto inner = grid_distributions(x, config.grid);
    const auto outer = grid_mixtures(inner, config.grid, config.max_support);

    for (std::size_t i = 0; i < inner.size(); ++i) {
      const auto& p = inner[i];
      const std::string inst = xname + " P#" + std::to_string(i);
      shard.check("left-unit", inst, [&](Trace& t) {
        const auto lhs = config.mu(eta(p));
        t.note("P = " + p.describe());
        t.note("mu(eta(P)) = " + lhs.describe());
        if (lhs == p) return pass();
        return fail({{"P", dist_json(p)}, {"muEtaP", dist_json(lhs)}});
      });
      shard.check("right-unit", inst, [&](Trace& t) {
        const auto lifted = g_eta(p);
        const auto lhs = config.mu(lifted);
        t.note("P = " + p.describe());
        t.note("G(eta)(P) = " + mixture_str(lifted));
        t.note("mu(G(eta)(P)) = " + lhs.describe());
        if (lhs == p) return pass();
        return fail({{"P", dist_json(p)}, {"muGEtaP", dist_json(lhs)}});
      });
    }

    const auto members = x->members();
    for (std::size_t k = 0; k < outer.size(); ++k) {
      const auto& pp = outer[k];
      const std::string inst = xname + " PP#" + std::to_string(k);
      shard.check("mu-formula", inst, [&](Trace& t) {
        const auto m = config.mu(pp);
        t.note("PP = " + mixture_str(pp));
        t.note("mu(PP) = " + m.describe());
        for (Subset u : members) {
          Rational expected;
          for (const auto& [w, q] : pp.terms()) expected += w * q.measure(u);
          if (m.measure(u) != expected) {
            t.note("mismatch on U = " + measurable::describe(*x, u));
            return fail({{"PP", mixture_json(pp)},
                         {"set", x->ids_of(u)},
                         {"muPP(U)", m.measure(u).str()},
                         {"sumOfMasses", expected.str()}});
          }
        }
        t.note("mu(PP)(U) agrees with the sum over q of PP(q) q(U) on every U");
        return pass();
      });
    }

    // associativity on two-level inputs lifted to three levels, then random three-level ones
    std::vector<DistOfDistOfDist> triples;
    for (const auto& pp : outer) {
      triples.push_back(eta(pp));
      triples.push_back(pp.map([](const FinDist& q) { return eta(q); }));
    }
    std::mt19937_64 rng(config.seed + s);
    for (std::size_t r = 0; r < config.assoc_samples && !outer.empty(); ++r) {
      const std::size_t support = 1 + rng() % std::min(config.max_support, config.grid);
      const auto weights = positive_compositions(config.grid, support);
      const auto& w = weights[rng() % weights.size()];
      std::vector<std::pair<Rational, DistOfDist>> terms;
      for (std::size_t j = 0; j < support; ++j) {
        terms.emplace_back(Rational(static_cast<long>(w[j]), static_cast<long>(config.grid)), outer[rng() % outer.size()]);
      }
      triples.emplace_back(std::move(terms));
    }
    for (std::size_t k = 0; k < triples.size(); ++k) {
      const auto& ppp = triples[k];
      shard.check("associativity", xname + " PPP#" + std::to_string(k), [&](Trace& t) {
        const auto lhs = config.mu(flatten(ppp));
        const auto rhs = config.mu(ppp.map([&](const DistOfDist& pp) { return config.mu(pp); }));
        t.note("mu(mu_G(PPP)) = " + lhs.describe());
        t.note("mu(G(mu)(PPP)) = " + rhs.describe());
        if (lhs == rhs) return pass();
        json outer_terms = json::array();
        for (const auto& [v, pp] : ppp.terms()) outer_terms.push_back({{"weight", v.str()}, {"mixture", mixture_json(pp)}});
        return fail({{"PPP", outer_terms}, {"muMuG", dist_json(lhs)}, {"muGMu", dist_json(rhs)}});
      });
    }

    for (const auto& y : spaces) {
      const std::string yname = "Y" + measurable::describe(*y);
      const auto maps = measurable::enumerate_meas_fns(x, y);
      for (std::size_t fi = 0; fi < maps.size(); ++fi) {
        const auto& f = maps[fi];
        const std::string finst = xname + " " + yname + " f#" + std::to_string(fi);
        for (std::size_t pt = 0; pt < x->size(); ++pt) {
          shard.check("eta-naturality", finst + " x=" + x->points()[pt], [&](Trace& t) {
            const auto lhs = pushforward(f, dirac(x, pt));
            const auto rhs = dirac(y, f(pt));
            t.note("f_*(delta_x) = " + lhs.describe() + ", delta_f(x) = " + rhs.describe());
            if (lhs == rhs) return pass();
            return fail({{"map", f.mapping()}, {"point", x->points()[pt]}});
          });
        }
        for (std::size_t k = 0; k < outer.size(); ++k) {
          const auto& pp = outer[k];
          shard.check("mu-naturality", finst + " PP#" + std::to_string(k), [&](Trace& t) {
            const auto lhs = pushforward(f, config.mu(pp));
            const auto rhs = config.mu(pp.map([&](const FinDist& q) { return pushforward(f, q); }));
            t.note("f_*(mu(PP)) = " + lhs.describe() + ", mu(G(f_*)(PP)) = " + rhs.describe());
            if (lhs == rhs) return pass();
            return fail({{"map", f.mapping()}, {"PP", mixture_json(pp)}, {"lhs", dist_json(lhs)}, {"rhs", dist_json(rhs)}});
          });
        }
      }
    }
  });
}

// ---------------------------------------------------------------------------

namespace {

void require_point(const convex::ConvexSpace& a, const convex::Point& p) {
  if (const auto* s = std::get_if<convex::SemiCvx>(&a)) {
    const auto* i = std::get_if<std::size_t>(&p);
    if (!i || *i >= s->size()) throw DomainError("functional point is not an element of the semilattice");
    return;
  }
  const auto& g = std::get<convex::GeomCvx>(a);
  const auto* v = std::get_if<Vec>(&p);
  if (!v || !convex::hull_member(g, *v).member) throw DomainError("functional point is not in the hull");
}

}  // namespace

WAFunctional::WAFunctional(convex::ConvexSpace base, std::vector<std::pair<Rational, convex::Point>> terms)
    : base_(std::move(base)), terms_(std::move(terms)) {
  Rational total;
  for (const auto& [w, p] : terms_) {
    if (w.sign() <= 0) throw DomainError("functional weights must be positive, got " + w.str());
    require_point(base_, p);
    total += w;
  }
  if (total != Rational(1)) throw DomainError("functional weights sum to " + total.str() + ", expected 1");
}

WAFunctional WAFunctional::unchecked(convex::ConvexSpace base, std::vector<std::pair<Rational, convex::Point>> terms) {
  WAFunctional f;
  f.base_ = std::move(base);
  f.terms_ = std::move(terms);
  return f;
}

Rational WAFunctional::operator()(const TestFn& m) const {
  Rational total;
  for (const auto& [w, p] : terms_) total += w * m(p);
  return total;
}

WAFunctional wa_functional(const convex::ConvexSpace& a, const std::vector<Rational>& weights,
                           const std::vector<convex::Point>& points) {
  if (weights.size() != points.size()) throw DomainError("weights and points differ in length");
  std::vector<std::pair<Rational, convex::Point>> terms;
  for (std::size_t i = 0; i < weights.size(); ++i) terms.emplace_back(weights[i], points[i]);
  return WAFunctional(a, std::move(terms));
}

WaCheck wa_check(const WAFunctional& f, const std::vector<convex::EndoI>& endos, const std::vector<TestFn>& test_fns) {
  for (long k = 0; k <= 4; ++k) {
    const Rational c(k, 4);
    const Rational v = f([&](const convex::Point&) { return c; });
    if (v != c) return {false, "constant " + c.str() + " maps to " + v.str()};
  }
  for (std::size_t i = 0; i < test_fns.size(); ++i) {
    const auto& m = test_fns[i];
    const Rational fm = f(m);
    for (const auto& e : endos) {
      const Rational lhs = f([&](const convex::Point& p) { return e(m(p)); });
      const Rational rhs = e.s() * fm + e.t();
      if (lhs != rhs) {
        return {false, "test function #" + std::to_string(i) + " under <" + e.s().str() + "," + e.t().str() +
                           ">: " + lhs.str() + " vs " + rhs.str()};
      }
    }
    for (std::size_t j = 0; j < test_fns.size(); ++j) {
      const auto& m2 = test_fns[j];
      for (const Rational& beta : {Rational(1, 3), Rational(1, 2)}) {
        const Rational lhs = f([&](const convex::Point& p) { return kernel::mix(m(p), m2(p), beta); });
        const Rational rhs = kernel::mix(fm, f(m2), beta);
        if (lhs != rhs) {
          return {false, "mixture of test functions #" + std::to_string(i) + ", #" + std::to_string(j) + " at " +
                             beta.str() + ": " + lhs.str() + " vs " + rhs.str()};
        }
      }
    }
  }
  return {};
}

WAFunctional measure_to_functional(const FinDist& p, const convex::SemiCvx& a) {
  const auto& x = *p.space();
  if (x.points() != a.elements()) throw DomainError("measure does not live on the Σ-space of this semilattice");
  std::vector<std::pair<Rational, convex::Point>> terms;
  for (std::size_t at : p.support()) {
    terms.emplace_back(p.mass()[at], static_cast<std::size_t>(std::countr_zero(x.atoms()[at])));
  }
  return WAFunctional(a, std::move(terms));
}

FinDist functional_to_measure(const WAFunctional& f, const SpaceRef& sigma) {
  const auto* a = std::get_if<convex::SemiCvx>(&f.base());
  if (!a) throw DomainError("functional_to_measure expects a semilattice base");
  if (sigma->points() != a->elements()) throw DomainError("Σ-space does not match the functional's base");
  const auto& atoms = sigma->atoms();
  lp::Matrix rows;
  Vec rhs;
  for (Subset u : convex::boolean_subobjects(*a)) {
    if (!sigma->contains(u)) throw DomainError("Boolean subobject " + a->describe(u) + " is not in the σ-algebra");
    Vec row(atoms.size());
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if ((atoms[k] & u) == atoms[k]) row[k] = 1;
    }
    rows.push_back(std::move(row));
    rhs.push_back(f(indicator(convex::SemiSubset{u})));
  }
  rows.emplace_back(atoms.size(), Rational(1));
  rhs.push_back(1);
  auto masses = lp::solve_unique(rows, rhs);
  if (!masses) throw DomainError("values on the Boolean subobjects do not determine a unique measure");
  return FinDist(sigma, std::move(*masses));
}

TestFn indicator(const convex::BooleanSubobject& s) {
  return [s](const convex::Point& p) { return convex::contains(s, p) ? Rational(1) : Rational(0); };
}

}  // namespace gcvx::giry

#include "gcvx/adjunction.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "gcvx/errors.hpp"

namespace gcvx::adjunction {

using measurable::bit;
using measurable::has;
using report::fail;
using report::json;
using report::pass;
using report::Trace;

namespace {

std::size_t rep_of(Subset atom) { return static_cast<std::size_t>(std::countr_zero(atom)); }

json vec_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Vec barycenter(const FinSupp<Vec>& p, std::size_t dim) {
  Vec out(dim);
  for (const auto& [w, v] : p.terms()) {
    for (std::size_t j = 0; j < dim; ++j) out[j] += w * v[j];
  }
  return out;
}

}  // namespace

SigmaOfA sigma_functor(const SemiCvx& a) {
  auto subs = convex::boolean_subobjects(a);
  auto space = measurable::share(measurable::generate_sigma(a.elements(), subs));
  return SigmaOfA{a, std::move(space), std::move(subs)};
}

int epsilon_two(const Rational& alpha) {
  if (!alpha.in_unit_interval()) throw DomainError("epsilon_two argument outside [0,1]: " + alpha.str());
  return alpha == Rational(1) ? 1 : 0;
}

std::size_t counit(const SemiCvx& a, const FinDist& p) {
  const auto& x = *p.space();
  if (x.points() != a.elements()) throw DomainError("counit: measure does not live on this semilattice");
  std::optional<std::size_t> acc;
  for (std::size_t at : p.support()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!has(x.atoms()[at], i)) continue;
      acc = acc ? a.meet(*acc, i) : i;
    }
  }
  if (!acc) throw DomainError("counit of a measure with empty support");
  return *acc;
}

Vec counit(const GeomCvx& a, const FinSupp<Vec>& p) {
  if (p.terms().empty()) throw DomainError("counit of a measure with empty support");
  for (const auto& [w, v] : p.terms()) {
    if (v.size() != a.dim() || !convex::hull_member(a, v).member) {
      throw DomainError("counit: support point " + kernel::to_string(v) + " is not in the hull");
    }
  }
  return barycenter(p, a.dim());
}

convex::HalfspaceSplit epsilon2_postcompose(const convex::GeomToI& m, const GeomCvx& a) {
  if (!convex::is_valid_map(m, a)) throw DomainError("epsilon2_postcompose: map does not send the hull into [0,1]");
  return convex::HalfspaceSplit{m.c, Rational(1) - m.t, true};
}

convex::SemiSubset epsilon2_postcompose(const std::vector<Rational>& m, const SemiCvx& a) {
  if (m.size() != a.size()) throw DomainError("epsilon2_postcompose: one value per element expected");
  Subset s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i].in_unit_interval()) throw DomainError("epsilon2_postcompose: value outside [0,1]");
    if (m[i] == Rational(1)) s |= bit(i);
  }
  return {s};
}

MeasureMap adjunct(const MeasFn& f, const SigmaOfA& sigma) {
  if (!(*f.cod() == *sigma.space)) throw DomainError("adjunct: map does not land in ΣA");
  return [f, sigma](const FinDist& p) { return counit(sigma.base, giry::pushforward(f, p)); };
}

MeasFn adjunct_inverse(const MeasureMap& g, const SpaceRef& x, const SigmaOfA& sigma) {
  std::vector<std::size_t> m(x->size());
  for (std::size_t i = 0; i < x->size(); ++i) m[i] = g(giry::dirac(x, i));
  return MeasFn(x, sigma.space, std::move(m));
}

void triangle_check(report::Harness& h, const SpaceRef& x) {
  const std::string xname = "X" + measurable::describe(*x);
  const auto simplex = giry::P_as_convex(*x);
  const std::size_t k = x->atoms().size();
  std::vector<FinDist> probes;
  for (std::size_t at = 0; at < k; ++at) probes.push_back(giry::dirac(x, rep_of(x->atoms()[at])));
  probes.emplace_back(x, Vec(k, Rational(1, static_cast<long>(k))));
  for (auto& p : giry::grid_distributions(x, 4)) probes.push_back(std::move(p));
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const auto& p = probes[i];
    h.check("triangle-P", xname + " P#" + std::to_string(i), [&](Trace& t) {
      std::vector<std::pair<Rational, Vec>> terms;
      for (std::size_t at = 0; at < k; ++at) {
        Vec e(k);
        e[at] = 1;
        terms.emplace_back(p.mass()[at], std::move(e));
      }
      const Vec back = counit(simplex, FinSupp<Vec>(std::move(terms)));
      t.note("P = " + p.describe() + ", eps(P(eta)(P)) = " + kernel::to_string(back));
      if (back == p.mass()) return pass();
      return fail({{"P", giry::dist_json(p)}, {"image", vec_json(back)}});
    });
  }
}

void triangle_check(report::Harness& h, const SigmaOfA& sigma) {
  const auto& a = sigma.base;
  const std::string aname = "A" + convex::describe(a);
  for (std::size_t i = 0; i < a.size(); ++i) {
    h.check("triangle-Sigma", aname + " a=" + a.elements()[i], [&](Trace& t) {
      const auto back = counit(a, giry::dirac(sigma.space, i));
      t.note("eps(delta_a) = " + a.elements()[back]);
      if (back == i) return pass();
      return fail({{"a", a.elements()[i]}, {"image", a.elements()[back]}});
    });
  }
}

void adjunct_bijection_check(report::Harness& h, const SpaceRef& x, const SigmaOfA& sigma) {
  const auto& a = sigma.base;
  const std::string inst = "X" + measurable::describe(*x) + " A" + convex::describe(a);
  const auto maps = measurable::enumerate_meas_fns(x, sigma.space);

  // dirac/midpoint grid on the atoms of X
  const std::size_t k = x->atoms().size();
  std::vector<FinDist> family;
  for (std::size_t at = 0; at < k; ++at) family.push_back(giry::dirac(x, rep_of(x->atoms()[at])));
  std::vector<std::pair<std::size_t, std::size_t>> mids;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      mids.emplace_back(i, j);
      family.push_back(giry::mix(family[i], family[j], Rational(1, 2)));
    }
  }
  // every map family -> A respecting the combinations available inside the family
  std::vector<std::vector<std::size_t>> affine_on_grid;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < family.size(); ++i) total *= a.size();
  std::vector<std::size_t> g(family.size(), 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    bool ok = true;
    for (std::size_t m = 0; m < mids.size() && ok; ++m) {
      if (g[k + m] != a.meet(g[mids[m].first], g[mids[m].second])) ok = false;
    }
    if (ok) affine_on_grid.push_back(g);
    for (std::size_t i = family.size(); i-- > 0;) {
      if (++g[i] < a.size()) break;
      g[i] = 0;
    }
  }

  h.check("hom-count", inst, [&](Trace& t) {
    t.note("|Meas(X, ΣA)| = " + std::to_string(maps.size()) + ", affine maps on the grid = " +
           std::to_string(affine_on_grid.size()));
    if (maps.size() == affine_on_grid.size()) return pass();
    return fail({{"measurable", maps.size()}, {"affine", affine_on_grid.size()}});
  });

  const auto probes = giry::grid_distributions(x, 2);
  const std::vector<Rational> alphas{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  for (std::size_t fi = 0; fi < maps.size(); ++fi) {
    const auto& f = maps[fi];
    const auto fhat = adjunct(f, sigma);
    const std::string finst = inst + " f#" + std::to_string(fi);
    h.check("adjunct-roundtrip", finst, [&](Trace& t) {
      const auto back = adjunct_inverse(fhat, x, sigma);
      t.note("f̂(δ_x) recovers f pointwise: " + std::string(back == f ? "yes" : "no"));
      if (back == f) return pass();
      return fail({{"f", f.mapping()}, {"roundTrip", back.mapping()}});
    });
    h.check("adjunct-affine", finst, [&](Trace& t) {
      for (const auto& p : probes) {
        for (const auto& q : probes) {
          for (const auto& alpha : alphas) {
            const auto lhs = fhat(giry::mix(p, q, alpha));
            const auto rhs = convex::convex_combine(a, fhat(p), fhat(q), alpha);
            if (lhs != rhs) {
              t.note("f̂(P +α Q) = " + a.elements()[lhs] + " but f̂(P) +α f̂(Q) = " + a.elements()[rhs]);
              return fail({{"f", f.mapping()}, {"P", giry::dist_json(p)}, {"Q", giry::dist_json(q)},
                           {"alpha", alpha.str()}});
            }
          }
        }
      }
      return pass();
    });
    h.check("adjunct-unique", finst, [&](Trace& t) {
      std::size_t matches = 0;
      for (const auto& cand : affine_on_grid) {
        bool restricts = true;
        for (std::size_t at = 0; at < k; ++at) {
          if (cand[at] != f(rep_of(x->atoms()[at]))) restricts = false;
        }
        if (!restricts) continue;
        ++matches;
        for (std::size_t i = 0; i < family.size(); ++i) {
          if (cand[i] != fhat(family[i])) {
            t.note("grid map with g∘η = f differs from f̂ at " + family[i].describe());
            return fail({{"f", f.mapping()}, {"at", giry::dist_json(family[i])}});
          }
        }
      }
      t.note(std::to_string(matches) + " affine grid map(s) restrict to f");
      if (matches == 1) return pass();
      return fail({{"f", f.mapping()}, {"matches", matches}});
    });
  }
}

std::vector<TelescopeTerm> telescope(const std::vector<Rational>& coefficients, const std::vector<Subset>& blocks,
                                     std::size_t n) {
  if (coefficients.size() != blocks.size()) throw DomainError("telescope: one block per coefficient expected");
  if (coefficients.empty()) throw DomainError("telescope: no coefficients");
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (!coefficients[i].in_unit_interval()) throw DomainError("telescope: coefficient outside [0,1]");
    if (i && coefficients[i] < coefficients[i - 1]) throw DomainError("telescope: coefficients must be ascending");
  }
  Subset seen = 0;
  for (Subset b : blocks) {
    if (b & seen) throw DomainError("telescope: blocks overlap");
    seen |= b;
  }
  if (seen != measurable::full_set(n)) throw DomainError("telescope: blocks do not cover the carrier");

  std::vector<TelescopeTerm> out;
  Rational prev;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    Subset tail = 0;
    for (std::size_t j = i; j < blocks.size(); ++j) tail |= blocks[j];
    out.push_back({coefficients[i] - prev, tail});
    prev = coefficients[i];
  }
  out.push_back({Rational(1) - prev, 0});
  return out;
}

Rational telescope_value(const std::vector<TelescopeTerm>& terms, std::size_t point) {
  Rational v;
  for (const auto& t : terms) {
    if (has(t.set, point)) v += t.coefficient;
  }
  return v;
}

EvalHullReport eval_hull_identity(const GeomCvx& a, const std::vector<Rational>& weights,
                                  const std::vector<Vec>& points, const std::vector<convex::GeomToI>& fns) {
  if (weights.size() != points.size()) throw DomainError("eval_hull_identity: weights and points differ in length");
  std::vector<std::pair<Rational, convex::Point>> terms;
  for (std::size_t i = 0; i < weights.size(); ++i) terms.emplace_back(weights[i], points[i]);
  const Vec combined = std::get<Vec>(convex::convex_sum(a, terms));
  EvalHullReport report;
  for (std::size_t k = 0; k < fns.size(); ++k) {
    Rational lhs;
    for (std::size_t i = 0; i < weights.size(); ++i) lhs += weights[i] * fns[k](points[i]);
    const Rational rhs = fns[k](combined);
    ++report.checked;
    if (lhs != rhs) {
      report.passed = false;
      report.failing_fn = k;
      report.lhs = lhs;
      report.rhs = rhs;
      return report;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

void finite_algebra_laws(report::Harness& h, const std::string& name, const FiniteAlgebra& alg, std::size_t grid) {
  const auto& x = alg.space;
  for (std::size_t i = 0; i < x->size(); ++i) {
    h.check("algebra-unit", name + " x=" + x->points()[i], [&](Trace& t) {
      const auto v = alg.h(giry::dirac(x, i));
      t.note("h(δ_" + x->points()[i] + ") = " + x->points()[v]);
      if (v == i) return pass();
      return fail({{"point", x->points()[i]}, {"h", x->points()[v]}});
    });
  }
  std::vector<FinDist> family;
  const std::size_t k = x->atoms().size();
  for (std::size_t at = 0; at < k; ++at) family.push_back(giry::dirac(x, rep_of(x->atoms()[at])));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::size_t s = 1; s < grid; ++s) {
        family.push_back(giry::mix(family[i], family[j], Rational(static_cast<long>(s), static_cast<long>(grid))));
      }
    }
  }
  const auto nested = giry::grid_mixtures(family, grid, 2);
  for (std::size_t n = 0; n < nested.size(); ++n) {
    const auto& pp = nested[n];
    h.check("algebra-multiplication", name + " PP#" + std::to_string(n), [&](Trace& t) {
      Vec mass(k);
      for (const auto& [w, q] : pp.terms()) mass[x->atom_of(alg.h(q))] += w;
      const auto lhs = alg.h(FinDist(x, std::move(mass)));
      const auto rhs = alg.h(giry::mu(pp));
      t.note("h(G(h)(PP)) = " + x->points()[lhs] + ", h(mu(PP)) = " + x->points()[rhs]);
      if (lhs == rhs) return pass();
      return fail({{"PP", giry::mixture_json(pp)}, {"hGh", x->points()[lhs]}, {"hMu", x->points()[rhs]}});
    });
  }
}

void barycentric_laws(report::Harness& h, const std::string& name, const GeomCvx& a, std::size_t grid) {
  const auto& gens = a.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    h.check("algebra-unit", name + " g#" + std::to_string(i), [&](Trace&) {
      if (counit(a, giry::eta(gens[i])) == gens[i]) return pass();
      return fail({{"generator", vec_json(gens[i])}});
    });
  }
  std::vector<FinSupp<Vec>> family;
  for (const auto& g : gens) family.push_back(giry::eta(g));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      for (std::size_t s = 1; s < grid; ++s) {
        const Rational w(static_cast<long>(s), static_cast<long>(grid));
        family.emplace_back(std::vector<std::pair<Rational, Vec>>{{Rational(1) - w, gens[i]}, {w, gens[j]}});
      }
    }
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      for (std::size_t s = 1; s < grid; ++s, ++n) {
        const Rational w(static_cast<long>(s), static_cast<long>(grid));
        const FinSupp<FinSupp<Vec>> pp({{Rational(1) - w, family[i]}, {w, family[j]}});
        h.check("algebra-multiplication", name + " PP#" + std::to_string(n), [&](Trace& t) {
          const Vec lhs = counit(a, pp.map([&](const FinSupp<Vec>& q) { return counit(a, q); }));
          const Vec rhs = counit(a, giry::flatten(pp));
          t.note("h(G(h)(PP)) = " + kernel::to_string(lhs) + ", h(mu(PP)) = " + kernel::to_string(rhs));
          if (lhs == rhs) return pass();
          return fail({{"hGh", vec_json(lhs)}, {"hMu", vec_json(rhs)}});
        });
      }
    }
  }
}

}  // namespace

void algebra_law_report(report::Harness& h, const std::string& name, const GiryAlgebra& alg, std::size_t grid) {
  if (grid < 2) throw DomainError("algebra_law_report needs a grid of at least 2");
  if (const auto* f = std::get_if<FiniteAlgebra>(&alg)) finite_algebra_laws(h, name, *f, grid);
  else barycentric_laws(h, name, std::get<BarycentricAlgebra>(alg).space, grid);
}

ConvexFromAlgebra algebra_to_convex(const GiryAlgebra& alg) {
  if (const auto* b = std::get_if<BarycentricAlgebra>(&alg)) return ConvexFromAlgebra{b->space, {}, true};
  const auto& fa = std::get<FiniteAlgebra>(alg);
  const auto& x = fa.space;
  const std::size_t n = x->size();
  std::vector<FinDist> diracs;
  for (std::size_t i = 0; i < n; ++i) diracs.push_back(giry::dirac(x, i));

  ConvexFromAlgebra out{convex::GeomCvx(0, {}), std::vector<std::size_t>(n), true};
  for (std::size_t i = 0; i < n; ++i) out.theta[i] = fa.h(diracs[i]);
  std::vector<bool> hit(n, false);
  for (std::size_t v : out.theta) {
    if (hit[v]) out.theta_bijective = false;
    hit[v] = true;
  }

  std::vector<std::vector<std::size_t>> meet(n, std::vector<std::size_t>(n));
  const std::vector<Rational> alphas{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto first = fa.h(giry::mix(diracs[i], diracs[j], alphas.front()));
      for (const auto& alpha : alphas) {
        if (fa.h(giry::mix(diracs[i], diracs[j], alpha)) != first) {
          throw DomainError("induced combination of " + x->points()[i] + " and " + x->points()[j] +
                            " depends on alpha on a finite carrier");
        }
      }
      meet[i][j] = first;
    }
  }
  out.space = SemiCvx(x->points(), std::move(meet));
  return out;
}

FiniteAlgebra convex_to_algebra(const SemiCvx& a) {
  auto sigma = sigma_functor(a);
  return FiniteAlgebra{sigma.space, [base = a](const FinDist& p) { return counit(base, p); }};
}

}  // namespace gcvx::adjunction

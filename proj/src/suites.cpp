#include "gcvx/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "gcvx/adjunction.hpp"
#include "gcvx/convex.hpp"
#include "gcvx/errors.hpp"
#include "gcvx/giry.hpp"
#include "gcvx/json_io.hpp"
#include "gcvx/measurable.hpp"
#include "gcvx/smcc.hpp"

namespace gcvx::suites {

using adjunction::SigmaOfA;
using convex::GeomCvx;
using convex::Point;
using convex::SemiCvx;
using giry::FinDist;
using kernel::Rational;
using kernel::Vec;
using measurable::FinMeasSpace;
using measurable::MeasFn;
using measurable::SpaceRef;
using measurable::Subset;
using report::fail;
using report::Harness;
using report::pass;
using report::Trace;

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(g_() % n); }
  /// Uniform-ish rational in [0,1] with denominator at most max_den.
  Rational unit(std::size_t max_den) {
    const auto den = static_cast<long>(1 + below(max_den));
    const auto num = static_cast<long>(below(static_cast<std::size_t>(den) + 1));
    return {num, den};
  }
  /// n positive weights summing to 1.
  std::vector<Rational> simplex_weights(std::size_t n, std::size_t max_part = 9) {
    std::vector<long> parts(n);
    long total = 0;
    for (auto& p : parts) {
      p = static_cast<long>(1 + below(max_part));
      total += p;
    }
    std::vector<Rational> out;
    for (long p : parts) out.emplace_back(p, total);
    return out;
  }

 private:
  std::mt19937_64 g_;
};

std::vector<SpaceRef> spaces_upto(std::size_t n) {
  std::vector<SpaceRef> out;
  for (std::size_t k = 1; k <= n; ++k) {
    for (auto& s : measurable::all_spaces_on(k)) out.push_back(measurable::share(std::move(s)));
  }
  return out;
}

std::vector<SemiCvx> semilattices_upto(std::size_t n) {
  std::vector<SemiCvx> out;
  for (std::size_t k = 1; k <= n; ++k) {
    for (auto& s : convex::all_semilattices(k)) out.push_back(std::move(s));
  }
  return out;
}

std::string name_of(const SpaceRef& x) { return "X" + measurable::describe(*x); }
std::string name_of(const SemiCvx& a) { return "A" + convex::describe(a); }

report::json triple_json(const convex::TripleWitness& w, const convex::ConvexSpace& a) {
  return {{"x", json_io::to_json(w.x, a)}, {"y", json_io::to_json(w.y, a)}, {"alpha", w.alpha.str()}};
}

GeomCvx unit_square() {
  return GeomCvx(2, {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}, {Rational(1), Rational(1)}});
}

GeomCvx random_polytope(Rng& rng, std::size_t dim) {
  std::vector<Vec> gens;
  const std::size_t k = dim + 1 + rng.below(3);
  for (std::size_t i = 0; i < k; ++i) {
    Vec g(dim);
    for (auto& c : g) c = rng.unit(6);
    gens.push_back(std::move(g));
  }
  return GeomCvx(dim, std::move(gens));
}

Vec random_hull_point(Rng& rng, const GeomCvx& a) {
  const auto w = rng.simplex_weights(a.generators().size());
  Vec p(a.dim());
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) p[j] += w[i] * a.generators()[i][j];
  }
  return p;
}

std::vector<giry::TestFn> as_test_fns(const std::vector<convex::GeomToI>& fns) {
  std::vector<giry::TestFn> out;
  for (const auto& m : fns) out.push_back([m](const Point& p) { return m(std::get<Vec>(p)); });
  return out;
}

std::vector<convex::EndoI> endo_grid() {
  std::vector<convex::EndoI> out;
  for (long sn = -2; sn <= 2; ++sn) {
    for (long tn = 0; tn <= 2; ++tn) {
      const Rational s(sn, 2);
      const Rational t(tn, 2);
      if ((s + t).in_unit_interval()) out.emplace_back(s, t);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

giry::FinDist mutated_mu(const giry::DistOfDist& pp) {
  if (pp.terms().size() < 2) return giry::mu(pp);
  auto terms = pp.terms();
  terms.front().first += terms.back().first;
  terms.pop_back();
  return giry::mu(giry::DistOfDist(std::move(terms)));
}

void giry_suite(Harness& h, const SuiteConfig& cfg) {
  const auto spaces = spaces_upto(cfg.max_points.value_or(cfg.max_size.value_or(3)));
  giry::MonadLawConfig mc;
  mc.grid = cfg.grid.value_or(4);
  mc.max_support = cfg.max_support.value_or(3);
  mc.assoc_samples = cfg.samples.value_or(200);
  mc.seed = cfg.seed;
  if (cfg.mutation == "mu") mc.mu = mutated_mu;
  giry::monad_laws(h, spaces, mc);

  for (const auto& x : spaces) {
    const auto members = x->members();
    const auto probes = giry::grid_distributions(x, mc.grid);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      h.check("indicator-integration", name_of(x) + " P#" + std::to_string(i), [&](Trace& t) {
        for (Subset u : members) {
          std::vector<Rational> chi(x->size());
          for (std::size_t p = 0; p < x->size(); ++p) chi[p] = measurable::has(u, p) ? 1 : 0;
          const auto lhs = giry::integrate(probes[i], chi);
          const auto rhs = probes[i].measure(u);
          t.note("integral of chi" + measurable::describe(*x, u) + " = " + lhs.str() + ", P(U) = " + rhs.str());
          if (lhs != rhs) return fail({{"P", giry::dist_json(probes[i])}, {"set", x->ids_of(u)}});
        }
        return pass();
      });
    }
    Rng rng(cfg.seed * 7919 + x->size() * 31 + x->atoms().size());
    const auto outer = giry::grid_mixtures(giry::grid_distributions(x, 2), 4, 2);
    for (std::size_t k = 0; k < 40; ++k) {
      const auto& pp = outer[rng.below(outer.size())];
      const auto& qq = outer[rng.below(outer.size())];
      const Rational alpha(1, 3);
      h.check("mu-affine", name_of(x) + " pair#" + std::to_string(k), [&](Trace& t) {
        std::vector<std::pair<Rational, FinDist>> terms;
        for (const auto& [w, q] : pp.terms()) terms.emplace_back((Rational(1) - alpha) * w, q);
        for (const auto& [w, q] : qq.terms()) terms.emplace_back(alpha * w, q);
        const auto lhs = mc.mu(giry::DistOfDist(std::move(terms)));
        const auto rhs = giry::mix(mc.mu(pp), mc.mu(qq), alpha);
        t.note("mu(PP +a QQ) = " + lhs.describe() + ", mu(PP) +a mu(QQ) = " + rhs.describe());
        if (lhs == rhs) return pass();
        return fail({{"PP", giry::mixture_json(pp)}, {"QQ", giry::mixture_json(qq)}, {"alpha", alpha.str()}});
      });
    }
  }

  for (const auto& x : spaces) {
    for (const auto& y : spaces) {
      for (const auto& z : spaces) {
        h.check("pushforward-composition", name_of(x) + " Y" + measurable::describe(*y) + " Z" + measurable::describe(*z),
                [&](Trace& t) {
                  const auto fs = measurable::enumerate_meas_fns(x, y);
                  const auto gs = measurable::enumerate_meas_fns(y, z);
                  std::vector<FinDist> probes;
                  for (std::size_t p = 0; p < x->size(); ++p) probes.push_back(giry::dirac(x, p));
                  probes.emplace_back(x, Vec(x->atoms().size(), Rational(1, static_cast<long>(x->atoms().size()))));
                  for (const auto& f : fs) {
                    for (const auto& g : gs) {
                      for (const auto& p : probes) {
                        const auto lhs = giry::pushforward(compose(g, f), p);
                        const auto rhs = giry::pushforward(g, giry::pushforward(f, p));
                        if (lhs != rhs) return fail({{"f", f.mapping()}, {"g", g.mapping()}, {"P", giry::dist_json(p)}});
                      }
                    }
                  }
                  t.note(std::to_string(fs.size() * gs.size()) + " composable pairs agree");
                  return pass();
                });
      }
    }
  }

  // weakly averaging functionals on a few polytopes
  const std::vector<std::pair<std::string, GeomCvx>> polys{
      {"I", convex::unit_interval()}, {"simplex2", convex::free_convex(3)}, {"square", unit_square()}};
  const auto endos = endo_grid();
  Rng rng(cfg.seed);
  for (const auto& [pname, poly] : polys) {
    const auto fns = as_test_fns(convex::spanning_functionals(poly));
    std::vector<giry::WAFunctional> functionals;
    for (const auto& g : poly.generators()) functionals.push_back(giry::wa_functional(poly, {Rational(1)}, {g}));
    functionals.push_back(giry::wa_functional(poly, {Rational(1, 2), Rational(1, 2)},
                                              {poly.generators()[0], poly.generators()[1]}));
    for (std::size_t k = 0; k < 10; ++k) {
      const std::size_t n = 1 + rng.below(4);
      std::vector<Point> pts;
      for (std::size_t i = 0; i < n; ++i) pts.emplace_back(random_hull_point(rng, poly));
      functionals.push_back(giry::wa_functional(poly, rng.simplex_weights(n), pts));
    }
    for (std::size_t k = 0; k < functionals.size(); ++k) {
      h.check("wa-equivariance", pname + " F#" + std::to_string(k), [&](Trace& t) {
        const auto r = giry::wa_check(functionals[k], endos, fns);
        t.note(r.passed ? "constants fixed, equivariant and affine on the spanning family" : r.failure);
        if (r.passed) return pass();
        return fail({{"failure", r.failure}});
      });
    }
    h.check("wa-detects-scaled", pname, [&](Trace& t) {
      const auto scaled = giry::WAFunctional::unchecked(poly, {{Rational(1, 2), Point(poly.generators()[0])}});
      const auto r = giry::wa_check(scaled, endos, fns);
      t.note("(1/2)ev_a: " + (r.passed ? std::string("accepted") : r.failure));
      if (!r.passed) return pass();
      return fail({{"failure", "scaled functional passed the weakly averaging check"}});
    });
  }
}

// ---------------------------------------------------------------------------

void adjunction_suite(Harness& h, const SuiteConfig& cfg) {
  const auto xs = spaces_upto(cfg.max_points.value_or(3));
  const auto semis = semilattices_upto(cfg.max_size.value_or(4));
  std::vector<SigmaOfA> sigmas;
  for (const auto& a : semis) sigmas.push_back(adjunction::sigma_functor(a));

  for (const auto& x : xs) adjunction::triangle_check(h, x);
  for (const auto& s : sigmas) {
    adjunction::triangle_check(h, s);
    h.check("sigma-contains-boolean", name_of(s.base), [&](Trace& t) {
      for (Subset u : s.boolean_subobjects) {
        if (!s.space->contains(u)) return fail({{"subobject", s.base.describe(u)}});
      }
      t.note(std::to_string(s.boolean_subobjects.size()) + " Boolean subobjects, all measurable");
      return pass();
    });
  }

  report::parallel_checks(h, xs.size() * sigmas.size(), [&](Harness& shard, std::size_t i) {
    adjunction::adjunct_bijection_check(shard, xs[i / sigmas.size()], sigmas[i % sigmas.size()]);
  });

  for (const auto& sa : sigmas) {
    for (const auto& sb : sigmas) {
      h.check("affine-measurable", name_of(sa.base) + " B" + convex::describe(sb.base), [&](Trace& t) {
        const auto& a = sa.base;
        const auto& b = sb.base;
        std::vector<std::size_t> m(a.size(), 0);
        std::size_t homs = 0;
        for (;;) {
          if (convex::is_valid_map(convex::SemiToSemi{m}, a, b)) {
            ++homs;
            const auto check = measurable::is_measurable(m, *sa.space, *sb.space);
            if (!check.measurable) return fail({{"map", m}});
          }
          std::size_t i = a.size();
          while (i-- > 0) {
            if (++m[i] < b.size()) break;
            m[i] = 0;
          }
          if (i == static_cast<std::size_t>(-1)) break;
        }
        t.note(std::to_string(homs) + " affine maps, all measurable");
        return pass();
      });
    }
  }

  for (const auto& x : xs) {
    h.check("eta-measurable", name_of(x), [&](Trace& t) {
      for (Subset u : x->members()) {
        for (long k = 0; k <= 4; ++k) {
          const Rational thr(k, 4);
          Subset pre = 0;
          for (std::size_t p = 0; p < x->size(); ++p) {
            if (giry::dirac(x, p).measure(u) >= thr) pre |= measurable::bit(p);
          }
          if (!x->contains(pre)) return fail({{"set", x->ids_of(u)}, {"threshold", thr.str()}});
        }
      }
      t.note("every preimage of {Q : Q(U) >= t} is measurable");
      return pass();
    });
    const auto outer = giry::grid_mixtures(giry::grid_distributions(x, 2), 4, 2);
    const auto simplex = giry::P_as_convex(*x);
    for (std::size_t k = 0; k < outer.size(); ++k) {
      h.check("mu-equals-sigma-counit", name_of(x) + " PP#" + std::to_string(k), [&](Trace& t) {
        const auto coords = outer[k].map([](const FinDist& q) { return q.mass(); });
        const Vec bary = adjunction::counit(simplex, coords);
        const auto m = giry::mu(outer[k]);
        t.note("counit = " + kernel::to_string(bary) + ", mu = " + m.describe());
        if (bary == m.mass()) return pass();
        return fail({{"PP", giry::mixture_json(outer[k])}});
      });
    }
  }

  for (const auto& s : sigmas) {
    const auto& a = s.base;
    const auto probes = giry::grid_distributions(s.space, 2);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const auto& p = probes[i];
      const std::string inst = name_of(a) + " P#" + std::to_string(i);
      h.check("phi-values", inst, [&](Trace& t) {
        const auto f = giry::measure_to_functional(p, a);
        for (Subset u : s.boolean_subobjects) {
          const auto v = f(giry::indicator(convex::SemiSubset{u}));
          if (v != p.measure(u)) return fail({{"P", giry::dist_json(p)}, {"subobject", a.describe(u)}});
        }
        t.note("phi(P)(chi_U) = P(U) on every Boolean subobject");
        return pass();
      });
      h.check("phi-roundtrip", inst, [&](Trace& t) {
        const auto back = giry::functional_to_measure(giry::measure_to_functional(p, a), s.space);
        t.note("phi^-1(phi(P)) = " + back.describe());
        if (back == p) return pass();
        return fail({{"P", giry::dist_json(p)}, {"back", giry::dist_json(back)}});
      });
      const auto& q = probes[(i + 1) % probes.size()];
      h.check("phi-affine", inst, [&](Trace& t) {
        const Rational alpha(1, 3);
        const auto fm = giry::measure_to_functional(giry::mix(p, q, alpha), a);
        const auto fp = giry::measure_to_functional(p, a);
        const auto fq = giry::measure_to_functional(q, a);
        for (Subset u : s.boolean_subobjects) {
          const auto chi = giry::indicator(convex::SemiSubset{u});
          if (fm(chi) != kernel::mix(fp(chi), fq(chi), alpha)) {
            return fail({{"P", giry::dist_json(p)}, {"Q", giry::dist_json(q)}, {"subobject", a.describe(u)}});
          }
        }
        t.note("phi is affine on every Boolean subobject");
        return pass();
      });
    }
    Rng rng(cfg.seed + a.size());
    for (std::size_t k = 0; k < 5; ++k) {
      const std::size_t n = 1 + rng.below(a.size());
      std::vector<Point> pts;
      for (std::size_t j = 0; j < n; ++j) pts.emplace_back(rng.below(a.size()));
      const auto f = giry::wa_functional(a, rng.simplex_weights(n), pts);
      h.check("phi-inverse-roundtrip", name_of(a) + " F#" + std::to_string(k), [&](Trace& t) {
        const auto back = giry::measure_to_functional(giry::functional_to_measure(f, s.space), a);
        for (Subset u : s.boolean_subobjects) {
          const auto chi = giry::indicator(convex::SemiSubset{u});
          if (back(chi) != f(chi)) return fail({{"subobject", a.describe(u)}});
        }
        t.note("phi(phi^-1(F)) agrees with F on every Boolean subobject");
        return pass();
      });
    }
  }

  {
    const auto two = convex::two_space();
    const auto s2 = adjunction::sigma_functor(two);
    h.check("epsilon2-counit", "A" + convex::describe(two), [&](Trace& t) {
      for (long k = 0; k <= 8; ++k) {
        const Rational alpha(k, 8);
        const auto p = giry::mix(giry::dirac(s2.space, 0), giry::dirac(s2.space, 1), alpha);
        const auto c = adjunction::counit(two, p);
        t.note("alpha = " + alpha.str() + ": counit = " + two.elements()[c]);
        if (static_cast<int>(c) != adjunction::epsilon_two(alpha)) return fail({{"alpha", alpha.str()}});
      }
      return pass();
    });
  }
  const std::vector<std::pair<std::string, GeomCvx>> polys{
      {"I", convex::unit_interval()}, {"simplex2", convex::free_convex(3)}, {"square", unit_square()}};
  for (const auto& [pname, poly] : polys) {
    const auto fns = convex::spanning_functionals(poly);
    std::vector<Vec> probes = poly.generators();
    for (std::size_t i = 0; i < poly.generators().size(); ++i) {
      for (std::size_t j = i + 1; j < poly.generators().size(); ++j) {
        probes.push_back(convex::convex_combine(poly, poly.generators()[i], poly.generators()[j], Rational(1, 2)));
      }
    }
    for (std::size_t k = 0; k < fns.size(); ++k) {
      h.check("epsilon2-postcompose", pname + " m#" + std::to_string(k), [&](Trace& t) {
        const auto split = adjunction::epsilon2_postcompose(fns[k], poly);
        for (const auto& p : probes) {
          if (split.contains(p) != (fns[k](p) == Rational(1))) {
            return fail({{"point", json_io::to_json(p)}, {"m", fns[k](p).str()}});
          }
        }
        t.note("m^-1(1) matches the closed halfspace on every probe");
        return pass();
      });
    }
  }

  Rng rng(cfg.seed);
  const std::size_t tele = cfg.samples.value_or(1000);
  for (std::size_t k = 0; k < tele; ++k) {
    const std::size_t n = 1 + rng.below(6);
    const std::size_t points = n + rng.below(3);
    std::vector<Subset> blocks(n, 0);
    for (std::size_t p = 0; p < points; ++p) blocks[p < n ? p : rng.below(n)] |= measurable::bit(p);
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < n; ++i) coeffs.push_back(rng.unit(12));
    std::sort(coeffs.begin(), coeffs.end());
    h.check("telescope", "sample#" + std::to_string(k), [&, coeffs, blocks, points](Trace& t) {
      const auto terms = adjunction::telescope(coeffs, blocks, points);
      Rational total;
      for (const auto& term : terms) {
        if (term.coefficient.sign() < 0) return fail({{"negative", term.coefficient.str()}});
        total += term.coefficient;
        t.note("(" + term.coefficient.str() + ", " + std::to_string(term.set) + ")");
      }
      if (total != Rational(1)) return fail({{"sum", total.str()}});
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < points; ++p) {
          if (measurable::has(blocks[i], p) && adjunction::telescope_value(terms, p) != coeffs[i]) {
            std::vector<std::string> cs;
            for (const auto& c : coeffs) cs.push_back(c.str());
            return fail({{"coefficients", cs}, {"blocks", blocks}, {"point", p}});
          }
        }
      }
      t.note("coefficients sum to 1 and reproduce the simple function pointwise");
      return pass();
    });
  }

  const std::size_t evals = cfg.samples.value_or(500);
  for (std::size_t k = 0; k < evals; ++k) {
    const auto poly = random_polytope(rng, 1 + rng.below(3));
    const std::size_t n = 1 + rng.below(5);
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(random_hull_point(rng, poly));
    const auto weights = rng.simplex_weights(n);
    h.check("eval-hull", "sample#" + std::to_string(k), [&, poly, pts, weights](Trace& t) {
      const auto r = adjunction::eval_hull_identity(poly, weights, pts, convex::spanning_functionals(poly));
      t.note(std::to_string(r.checked) + " functionals compared");
      if (r.passed) return pass();
      return fail({{"functional", *r.failing_fn}, {"lhs", r.lhs.str()}, {"rhs", r.rhs.str()}});
    });
  }
}

// ---------------------------------------------------------------------------

void algebra_suite(Harness& h, const SuiteConfig& cfg) {
  const auto semis = semilattices_upto(cfg.max_size.value_or(5));
  const std::size_t grid = cfg.grid.value_or(4);
  report::parallel_checks(h, semis.size(), [&](Harness& shard, std::size_t i) {
    const auto& a = semis[i];
    auto alg = adjunction::convex_to_algebra(a);
    if (cfg.mutation == "h" && a.size() >= 2) {
      const std::size_t last = a.size() - 1;
      alg.h = [inner = alg.h, last](const FinDist& p) {
        const auto v = inner(p);
        return v == 0 ? last : v == last ? 0 : v;
      };
    }
    adjunction::algebra_law_report(shard, name_of(a), alg, grid);
    shard.check("roundtrip-iso", name_of(a), [&](Trace& t) {
      const auto back = adjunction::algebra_to_convex(alg);
      const auto& s = std::get<SemiCvx>(back.space);
      const auto iso = convex::find_isomorphism(a, s);
      t.note("recovered " + convex::describe(s));
      if (iso) return pass();
      return fail({{"recovered", json_io::to_json(back.space)}});
    });
    shard.check("theta-bijective", name_of(a), [&](Trace& t) {
      const auto back = adjunction::algebra_to_convex(alg);
      std::string line;
      for (std::size_t x = 0; x < back.theta.size(); ++x) line += a.elements()[x] + "->" + a.elements()[back.theta[x]] + " ";
      t.note("theta: " + line);
      if (back.theta_bijective) return pass();
      return fail({{"theta", back.theta}});
    });
  });

  const std::vector<std::pair<std::string, GeomCvx>> polys{{"simplex0", convex::free_convex(1)},
                                                           {"simplex1", convex::free_convex(2)},
                                                           {"simplex2", convex::free_convex(3)},
                                                           {"square", unit_square()}};
  for (const auto& [pname, poly] : polys) {
    adjunction::algebra_law_report(h, pname, adjunction::BarycentricAlgebra{poly}, grid);
    h.check("free-algebra-recovers", pname, [&](Trace&) {
      const auto back = adjunction::algebra_to_convex(adjunction::BarycentricAlgebra{poly});
      if (std::get<GeomCvx>(back.space) == poly) return pass();
      return fail({{"recovered", json_io::to_json(back.space)}});
    });
  }

  const auto two = convex::two_space();
  auto alg2 = adjunction::convex_to_algebra(two);
  h.check("two-is-epsilon2", "A" + convex::describe(two), [&](Trace& t) {
    for (long k = 0; k <= 8; ++k) {
      const Rational alpha(k, 8);
      const auto p = giry::mix(giry::dirac(alg2.space, 0), giry::dirac(alg2.space, 1), alpha);
      const auto v = alg2.h(p);
      t.note("h((1-a)d0 + a d1) at a = " + alpha.str() + " is " + two.elements()[v]);
      if (static_cast<int>(v) != adjunction::epsilon_two(alpha)) return fail({{"alpha", alpha.str()}});
    }
    return pass();
  });
}

// ---------------------------------------------------------------------------

void convex_suite(Harness& h, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  const std::size_t samples = cfg.samples.value_or(200);
  const auto semis = semilattices_upto(cfg.max_size.value_or(5));

  std::vector<std::pair<std::string, convex::ConvexSpace>> spaces;
  for (std::size_t k = 0; k < 6; ++k) spaces.emplace_back("poly#" + std::to_string(k), random_polytope(rng, 1 + k % 3));
  for (std::size_t k = 0; k < semis.size(); k += 3) spaces.emplace_back(name_of(semis[k]), semis[k]);

  for (const auto& [sname, space] : spaces) {
    auto random_point = [&, &space = space]() -> Point {
      if (const auto* s = std::get_if<SemiCvx>(&space)) return rng.below(s->size());
      return random_hull_point(rng, std::get<GeomCvx>(space));
    };
    for (std::size_t k = 0; k < samples / spaces.size() + 1; ++k) {
      const std::size_t n = 1 + rng.below(4);
      const std::size_t m = 1 + rng.below(3);
      std::vector<Point> pts;
      for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point());
      std::vector<std::vector<Rational>> alpha;
      for (std::size_t i = 0; i < m; ++i) {
        auto w = rng.simplex_weights(n);
        if (rng.below(3) == 0) {  // occasionally a vertex row
          std::fill(w.begin(), w.end(), Rational(0));
          w[rng.below(n)] = 1;
        }
        alpha.push_back(std::move(w));
      }
      const auto beta = rng.simplex_weights(m);
      const std::string inst = sname + " sample#" + std::to_string(k);
      h.check("projection-axiom", inst, [&](Trace& t) {
        for (std::size_t j = 0; j < n; ++j) {
          std::vector<std::pair<Rational, Point>> terms;
          for (std::size_t i = 0; i < n; ++i) terms.emplace_back(i == j ? 1 : 0, pts[i]);
          if (convex::convex_sum(space, terms) != pts[j]) return fail({{"index", j}});
        }
        t.note("sum of e_j a_i = a_j for every j");
        return pass();
      });
      h.check("barycentric-associativity", inst, [&](Trace& t) {
        std::vector<std::pair<Rational, Point>> outer;
        for (std::size_t i = 0; i < m; ++i) {
          std::vector<std::pair<Rational, Point>> inner;
          for (std::size_t j = 0; j < n; ++j) inner.emplace_back(alpha[i][j], pts[j]);
          outer.emplace_back(beta[i], convex::convex_sum(space, inner));
        }
        const auto lhs = convex::convex_sum(space, outer);
        std::vector<std::pair<Rational, Point>> flat;
        for (std::size_t j = 0; j < n; ++j) {
          Rational w;
          for (std::size_t i = 0; i < m; ++i) w += beta[i] * alpha[i][j];
          flat.emplace_back(w, pts[j]);
        }
        const auto rhs = convex::convex_sum(space, flat);
        t.note("nested = " + convex::describe(lhs, space) + ", flattened = " + convex::describe(rhs, space));
        if (lhs == rhs) return pass();
        return fail({{"nested", json_io::to_json(lhs, space)}, {"flat", json_io::to_json(rhs, space)}});
      });
    }
  }

  const auto endos = endo_grid();
  h.check("endo-laws", "grid", [&](Trace& t) {
    const convex::EndoI id(1, 0);
    for (const auto& e1 : endos) {
      if (!(convex::endo_compose(e1, id) == e1) || !(convex::endo_compose(id, e1) == e1)) {
        return fail({{"s", e1.s().str()}, {"t", e1.t().str()}, {"law", "unit"}});
      }
      for (const auto& e2 : endos) {
        const auto c = convex::endo_compose(e1, e2);
        for (long k = 0; k <= 4; ++k) {
          const Rational x(k, 4);
          if (c(x) != e1(e2(x))) return fail({{"law", "composite evaluates pointwise"}});
        }
        for (const auto& e3 : endos) {
          if (!(convex::endo_compose(convex::endo_compose(e1, e2), e3) == convex::endo_compose(e1, convex::endo_compose(e2, e3)))) {
            return fail({{"law", "associativity"}});
          }
        }
      }
    }
    const convex::EndoI flip(-1, 1);
    t.note("<-1,1> o <-1,1> = <" + convex::endo_compose(flip, flip).s().str() + "," +
           convex::endo_compose(flip, flip).t().str() + ">");
    if (!(convex::endo_compose(flip, flip) == id)) return fail({{"law", "involution"}});
    return pass();
  });

  {
    const auto sq = unit_square();
    const Vec zero{Rational(0), Rational(0)};
    const auto pc = convex::with_zero(sq, zero);
    h.check("with-zero", "square", [&](Trace& t) {
      const Vec a{Rational(1), Rational(1)};
      if (pc.evaluate({}) != Point(zero)) return fail({{"case", "empty sum"}});
      if (pc.evaluate({{Rational(1), a}}) != Point(a)) return fail({{"case", "full weight"}});
      const auto half = pc.evaluate({{Rational(1, 2), a}});
      t.note("(1/2)(1,1) = " + convex::describe(half, sq));
      if (half != Point(Vec{Rational(1, 2), Rational(1, 2)})) return fail({{"case", "half"}});
      return pass();
    });
  }

  for (std::size_t k = 0; k < samples; ++k) {
    const auto poly = random_polytope(rng, 1 + rng.below(3));
    Vec p(poly.dim());
    for (auto& c : p) c = Rational(static_cast<long>(rng.below(13)) - 3, 6);
    h.check("hull-certificate", "sample#" + std::to_string(k), [&, poly, p](Trace& t) {
      const auto r = convex::hull_member(poly, p);
      if (r.member) {
        Vec back(poly.dim());
        Rational total;
        for (std::size_t i = 0; i < r.weights.size(); ++i) {
          if (r.weights[i].sign() < 0) return fail({{"negativeWeight", i}});
          total += r.weights[i];
          for (std::size_t j = 0; j < poly.dim(); ++j) back[j] += r.weights[i] * poly.generators()[i][j];
        }
        t.note("member with weights reproducing " + kernel::to_string(back));
        if (total == Rational(1) && back == p) return pass();
        return fail({{"point", json_io::to_json(p)}});
      }
      const auto& c = *r.certificate;
      for (const auto& g : poly.generators()) {
        if (kernel::dot(c.c, g) > c.t) return fail({{"point", json_io::to_json(p)}, {"generator", json_io::to_json(g)}});
      }
      t.note("separated by c = " + kernel::to_string(c.c) + ", t = " + c.t.str());
      if (kernel::dot(c.c, p) > c.t) return pass();
      return fail({{"point", json_io::to_json(p)}});
    });
  }

  for (const auto& a : semis) {
    h.check("generated-is-upset", name_of(a), [&](Trace&) {
      for (std::size_t x = 0; x < a.size(); ++x) {
        if (convex::generated_subobject(a, x) != a.up_set(x)) return fail({{"a", a.elements()[x]}});
      }
      return pass();
    });
    h.check("generated-is-boolean", name_of(a), [&](Trace&) {
      for (std::size_t x = 0; x < a.size(); ++x) {
        const Subset g = convex::generated_subobject(a, x);
        if (!convex::is_boolean_subobject(a, convex::SemiSubset{g}).passed) return fail({{"a", a.elements()[x]}});
      }
      return pass();
    });
    h.check("generated-containment", name_of(a), [&](Trace&) {
      for (std::size_t x = 0; x < a.size(); ++x) {
        const Subset gx = convex::generated_subobject(a, x);
        for (std::size_t y = 0; y < a.size(); ++y) {
          const Subset gy = convex::generated_subobject(a, y);
          if (measurable::has(gx, y) && (gy & ~gx)) return fail({{"a", a.elements()[x]}, {"b", a.elements()[y]}});
          if (measurable::has(gx, y) && measurable::has(gy, x) && gx != gy) {
            return fail({{"a", a.elements()[x]}, {"b", a.elements()[y]}, {"law", "equality"}});
          }
        }
      }
      return pass();
    });
  }

  {
    const auto sq = unit_square();
    const Vec center{Rational(1, 2), Rational(1, 2)};
    const Vec corner{Rational(0), Rational(0)};
    const Vec edge{Rational(1, 2), Rational(0)};
    h.check("generated-geometric", "square", [&](Trace& t) {
      for (const auto& g : sq.generators()) {
        if (!convex::in_generated_subobject(sq, center, g)) return fail({{"case", "center reaches every corner"}});
        if (g != corner && convex::in_generated_subobject(sq, corner, g)) return fail({{"case", "corner is extreme"}});
      }
      if (!convex::in_generated_subobject(sq, edge, Vec{Rational(1), Rational(0)})) return fail({{"case", "edge"}});
      if (convex::in_generated_subobject(sq, edge, Vec{Rational(1, 2), Rational(1)})) return fail({{"case", "off edge"}});
      t.note("<<center>> is the square, <<corner>> the corner, <<edge midpoint>> the edge");
      return pass();
    });
  }

  {
    const auto two = convex::two_space();
    h.check("function-space-two", "A" + convex::describe(two), [&](Trace& t) {
      const auto fs = convex::function_space_convex(two);
      t.note(std::to_string(fs.subobjects.size()) + " Boolean subobjects");
      if (fs.subobjects.size() != 4) return fail({{"count", fs.subobjects.size()}});
      for (std::size_t i = 0; i < fs.subobjects.size(); ++i) {
        if (convex::convex_combine(fs.space, i, i, Rational(1, 2)) != i) return fail({{"case", "idempotence"}});
        for (std::size_t j = 0; j < fs.subobjects.size(); ++j) {
          const auto m = convex::convex_combine(fs.space, i, j, Rational(1, 2));
          if (fs.subobjects[m] != (fs.subobjects[i] & fs.subobjects[j])) return fail({{"case", "intersection"}});
        }
      }
      if (fs.subobjects[fs.zero] != 0) return fail({{"case", "zero"}});
      return pass();
    });
  }

  {
    const convex::PathMap path{convex::unit_interval(), Vec{Rational(1, 4)}, Vec{Rational(3, 4)}};
    h.check("path-map", "I", [&](Trace&) {
      for (long k = 0; k <= 4; ++k) {
        const Rational alpha(k, 4);
        if (convex::path_eval(path, alpha) != Point(Vec{Rational(1, 4) + alpha / Rational(2)})) {
          return fail({{"alpha", alpha.str()}});
        }
      }
      return pass();
    });
  }
}

// ---------------------------------------------------------------------------

bool is_up_set(const SemiCvx& a, Subset s) {
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (!measurable::has(s, x)) continue;
    if ((a.up_set(x) & ~s) != 0) return false;
  }
  return true;
}

bool is_filter(const SemiCvx& a, Subset s) {
  if (!is_up_set(a, s)) return false;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < a.size(); ++y) {
      if (measurable::has(s, x) && measurable::has(s, y) && !measurable::has(s, a.meet(x, y))) return false;
    }
  }
  return true;
}

void boolean_suite(Harness& h, const SuiteConfig& cfg) {
  const auto semis = semilattices_upto(cfg.max_size.value_or(5));
  for (const auto& a : semis) {
    const auto subs = convex::boolean_subobjects(a);
    h.check("upsets-boolean", name_of(a), [&](Trace&) {
      for (std::size_t x = 0; x < a.size(); ++x) {
        if (!convex::is_boolean_subobject(a, convex::SemiSubset{a.up_set(x)}).passed) return fail({{"a", a.elements()[x]}});
      }
      return pass();
    });
    h.check("trivial-boolean", name_of(a), [&](Trace&) {
      if (!convex::is_boolean_subobject(a, convex::SemiSubset{0}).passed) return fail({{"set", "empty"}});
      if (!convex::is_boolean_subobject(a, convex::SemiSubset{a.full()}).passed) return fail({{"set", "all"}});
      return pass();
    });
    for (Subset s : subs) {
      const bool filter = is_filter(a, s);
      h.check(filter ? "union-identity" : "union-identity-nonfilter", name_of(a) + " S=" + a.describe(s),
              [&](Trace& t) {
                const auto r = convex::boolean_union_identity(a, s);
                t.note("union of <<a>> over S = " + a.describe(r.union_of_generated) + ", S = " + a.describe(s));
                if (r.passed) return pass();
                return fail({{"union", a.describe(r.union_of_generated)}, {"extra", a.elements()[*r.witness]}});
              },
              !filter);
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
      for (std::size_t j = i + 1; j < subs.size(); ++j) {
        const bool filters = is_filter(a, subs[i]) && is_filter(a, subs[j]);
        h.check(filters ? "intersection-filters" : "intersection-general",
                name_of(a) + " S1=" + a.describe(subs[i]) + " S2=" + a.describe(subs[j]),
                [&](Trace& t) {
                  const auto r = convex::boolean_intersection_check(a, convex::SemiSubset{subs[i]},
                                                                    convex::SemiSubset{subs[j]});
                  t.note("S1 n S2 = " + a.describe(subs[i] & subs[j]));
                  if (r.passed) return pass();
                  return fail(triple_json(*r.witness, a));
                },
                !filters);
      }
    }
    h.check("sigma-separated", name_of(a), [&](Trace& t) {
      const auto s = adjunction::sigma_functor(a);
      const auto r = measurable::is_separated(*s.space);
      t.note("ΣA has " + std::to_string(s.space->atoms().size()) + " atoms on " + std::to_string(a.size()) + " points");
      if (r.separated) return pass();
      return fail({{"x", a.elements()[r.witness->first]}, {"y", a.elements()[r.witness->second]}});
    });
  }

  // one-dimensional halfspaces: intersections stay Boolean
  const auto unit = convex::unit_interval();
  for (long an = 0; an <= 4; ++an) {
    for (long bn = 0; bn <= 4; ++bn) {
      for (int closed = 0; closed < 4; ++closed) {
        const convex::HalfspaceSplit s1{{Rational(1)}, Rational(an, 4), (closed & 1) != 0};
        const convex::HalfspaceSplit s2{{Rational(1)}, Rational(bn, 4), (closed & 2) != 0};
        h.check("intersection-1d", "a=" + std::to_string(an) + "/4 b=" + std::to_string(bn) + "/4 closed=" + std::to_string(closed),
                [&](Trace&) {
                  const auto r = convex::boolean_intersection_check(unit, s1, s2);
                  if (r.passed) return pass();
                  return fail(triple_json(*r.witness, unit));
                });
      }
    }
  }

  Rng rng(cfg.seed);
  std::vector<std::pair<std::string, GeomCvx>> polys{{"I", unit}, {"square", unit_square()}, {"simplex2", convex::free_convex(3)}};
  for (std::size_t k = 0; k < 10; ++k) polys.emplace_back("poly#" + std::to_string(k), random_polytope(rng, 1 + k % 3));
  for (const auto& [pname, poly] : polys) {
    std::vector<Vec> pts = poly.generators();
    for (std::size_t k = 0; k < 3; ++k) pts.push_back(random_hull_point(rng, poly));
    h.check("separate-points", pname, [&](Trace& t) {
      std::size_t pairs = 0;
      for (const auto& a : pts) {
        for (const auto& b : pts) {
          if (a == b) continue;
          ++pairs;
          const auto split = convex::separate_points(poly, a, b);
          if (split.contains(a) || !split.contains(b)) return fail({{"a", json_io::to_json(a)}, {"b", json_io::to_json(b)}});
        }
      }
      t.note(std::to_string(pairs) + " ordered pairs separated");
      return pass();
    });
    h.check("double-dual-injective", pname, [&](Trace& t) {
      const auto r = convex::injectivity_check(poly, pts);
      t.note(std::to_string(r.family_size) + " functionals in the family");
      if (r.injective) return pass();
      return fail({{"a", json_io::to_json(r.witness->first, poly)}, {"b", json_io::to_json(r.witness->second, poly)}});
    });
  }
}

// ---------------------------------------------------------------------------

void smcc_suite(Harness& h, const SuiteConfig& cfg) {
  const auto spaces = spaces_upto(cfg.max_points.value_or(3));
  std::map<std::pair<std::size_t, std::size_t>, smcc::TensorSpace> tensors;
  std::map<std::pair<std::size_t, std::size_t>, smcc::FnSpace> fns;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = 0; j < spaces.size(); ++j) {
      tensors.emplace(std::pair{i, j}, smcc::tensor_space(spaces[i], spaces[j]));
      fns.emplace(std::pair{i, j}, smcc::function_space(spaces[i], spaces[j]));
    }
  }
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = 0; j < spaces.size(); ++j) {
      const auto& x = spaces[i];
      const auto& y = spaces[j];
      const auto& t = tensors.at({i, j});
      const std::string inst = name_of(x) + " Y" + measurable::describe(*y);
      h.check("product-in-tensor", inst, [&](Trace& tr) {
        const auto prod = smcc::product_space(*x, *y);
        for (Subset u : x->atoms()) {
          for (Subset v : y->atoms()) {
            Subset r = 0;
            for (std::size_t a = 0; a < x->size(); ++a) {
              for (std::size_t b = 0; b < y->size(); ++b) {
                if (measurable::has(u, a) && measurable::has(v, b)) r |= measurable::bit(smcc::pair_index(a, b, y->size()));
              }
            }
            if (!t.carrier->contains(r)) return fail({{"rectangle", t.carrier->ids_of(r)}});
          }
        }
        tr.note("product σ has " + std::to_string(prod.atoms().size()) + " atoms, tensor σ has " +
                std::to_string(t.carrier->atoms().size()));
        return pass();
      });
      h.check("constant-graphs-finer", inst, [&](Trace& tr) {
        for (Subset atom : t.carrier->atoms()) {
          if (!t.constant_graph_carrier->contains(atom)) return fail({{"atom", t.carrier->ids_of(atom)}});
        }
        tr.note("constant-graph σ has " + std::to_string(t.constant_graph_carrier->atoms().size()) + " atoms");
        return pass();
      });
    }
  }

  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = 0; j < spaces.size(); ++j) {
      const auto& x = spaces[i];
      const auto& y = spaces[j];
      std::optional<smcc::EvalMap> ev;
      try {
        ev.emplace(smcc::eval_map(x, y));
      } catch (const CapacityError&) {
        continue;  // outside the guards
      }
      const std::string inst = name_of(x) + " Y" + measurable::describe(*y);
      h.check("eval-measurable", inst, [&](Trace& t) {
        const auto r = measurable::is_measurable(ev->ev.mapping(), *ev->tensor.carrier, *y);
        t.note("ev on " + std::to_string(ev->tensor.carrier->size()) + " points");
        if (r.measurable) return pass();
        return fail({{"set", y->ids_of(*r.witness)}});
      });
      h.check("constant-graph-measurable", inst, [&](Trace& t) {
        const std::size_t nf = ev->fn_space.elements.size();
        for (std::size_t f = 0; f < nf; ++f) {
          std::vector<std::size_t> m(x->size());
          for (std::size_t p = 0; p < x->size(); ++p) m[p] = smcc::pair_index(p, f, nf);
          if (!measurable::is_measurable(m, *x, *ev->tensor.carrier).measurable) return fail({{"f", f}});
        }
        t.note(std::to_string(nf) + " constant graphs measurable");
        return pass();
      });
    }
  }

  report::parallel_checks(h, spaces.size() * spaces.size() * spaces.size(), [&](Harness& shard, std::size_t idx) {
    const std::size_t n = spaces.size();
    const std::size_t xi = idx / (n * n);
    const std::size_t zi = (idx / n) % n;
    const std::size_t yi = idx % n;
    const auto& xz = tensors.at({xi, zi});
    const auto& yx = fns.at({xi, yi});
    shard.check("curry-bijection",
                name_of(spaces[xi]) + " Z" + measurable::describe(*spaces[zi]) + " Y" + measurable::describe(*spaces[yi]),
                [&](Trace& t) {
                  const auto lhs = measurable::enumerate_meas_fns(xz.carrier, spaces[yi]);
                  const auto rhs = measurable::enumerate_meas_fns(spaces[zi], yx.carrier);
                  t.note("|Meas(X⊗Z,Y)| = " + std::to_string(lhs.size()) + ", |Meas(Z,Y^X)| = " + std::to_string(rhs.size()));
                  if (lhs.size() != rhs.size()) return fail({{"left", lhs.size()}, {"right", rhs.size()}});
                  for (const auto& f : lhs) {
                    if (!(smcc::uncurry(smcc::curry(f, xz, yx), xz, yx) == f)) return fail({{"f", f.mapping()}});
                  }
                  for (const auto& g : rhs) {
                    if (!(smcc::curry(smcc::uncurry(g, xz, yx), xz, yx) == g)) return fail({{"g", g.mapping()}});
                  }
                  return pass();
                });
  });
}

// ---------------------------------------------------------------------------

Rational mutated_integrate(const kernel::StepFn& f) {
  // drops the first piece
  Rational total;
  for (std::size_t i = 1; i < f.values().size(); ++i) {
    total += f.values()[i] * (f.breakpoints()[i + 1] - f.breakpoints()[i]);
  }
  return total;
}

void lebesgue_suite(Harness& h, const SuiteConfig& cfg) {
  const smcc::Integrator integrate = cfg.mutation == "integrator" ? smcc::Integrator(mutated_integrate)
                                                                   : smcc::Integrator(kernel::step_integrate);
  auto run = [&](const Rational& u) {
    h.check("section", "u=" + u.str(), [&](Trace& t) {
      const auto down = smcc::down_map(u);
      const auto v = integrate(down);
      t.note("down(" + u.str() + ") has " + std::to_string(down.values().size()) + " piece(s); integral = " + v.str());
      if (v == u) return pass();
      return fail({{"u", u.str()}, {"integral", v.str()}});
    });
  };
  Rng rng(cfg.seed);
  const std::size_t samples = cfg.samples.value_or(1000);
  for (std::size_t k = 0; k < samples; ++k) run(rng.unit(1000000));
  const std::size_t grid = cfg.grid.value_or(0);
  for (std::size_t k = 0; k <= grid && grid > 0; ++k) run(Rational(static_cast<long>(k), static_cast<long>(grid)));
}

// ---------------------------------------------------------------------------

void errata_suite(Harness& h, const SuiteConfig&) {
  {
    const auto sq = unit_square();
    const convex::HalfspaceSplit s1{{Rational(1), Rational(0)}, Rational(1, 2), true};
    const convex::HalfspaceSplit s2{{Rational(0), Rational(1)}, Rational(1, 2), true};
    h.check("pi-system", "square S1={x>=1/2} S2={y>=1/2}", [&](Trace& t) {
      const auto r = convex::boolean_intersection_check(sq, s1, s2);
      if (r.passed) {
        t.note("complement of S1 n S2 is convex on the sampled witness search");
        return pass();
      }
      const auto& x = std::get<Vec>(r.witness->x);
      const auto& y = std::get<Vec>(r.witness->y);
      const auto z = convex::convex_combine(sq, x, y, r.witness->alpha);
      auto in_both = [&](const Vec& p) { return s1.contains(p) && s2.contains(p); };
      t.note("x = " + kernel::to_string(x) + " lies outside S1 n S2: " + (in_both(x) ? "no" : "yes"));
      t.note("y = " + kernel::to_string(y) + " lies outside S1 n S2: " + (in_both(y) ? "no" : "yes"));
      t.note("x +_" + r.witness->alpha.str() + " y = " + kernel::to_string(z) + " lies inside S1 n S2: " +
             (in_both(z) ? "yes" : "no"));
      t.note("so the complement of S1 n S2 (an L-shape) is not closed under convex combination");
      auto w = triple_json(*r.witness, sq);
      w["combination"] = json_io::to_json(z);
      return fail(w);
    }, true);
  }
  {
    const auto two = convex::two_space();
    h.check("double-dual", "A" + convex::describe(two), [&](Trace& t) {
      const auto maps = convex::affine_maps_to_interval(two);
      for (const auto& m : maps) t.note("affine map 2 -> I: 0 -> " + m[0].str() + ", 1 -> " + m[1].str());
      const auto r = convex::injectivity_check(two);
      if (r.injective) return pass();
      t.note("every affine map is constant, so ev_0 = ev_1");
      std::vector<std::string> consts;
      for (const auto& m : maps) consts.push_back(m[0].str());
      return fail({{"a", json_io::to_json(r.witness->first, two)},
                   {"b", json_io::to_json(r.witness->second, two)},
                   {"affineMapValues", consts}});
    }, true);
  }
  {
    const auto unit = convex::unit_interval();
    const convex::HalfspaceSplit s{{Rational(1)}, Rational(1, 2), true};
    h.check("chi-affine", "I S=[1/2,1]", [&](Trace& t) {
      const auto r = convex::chi_affinity_check(unit, s);
      if (r.passed) return pass();
      const auto& x = std::get<Vec>(r.witness->x);
      const auto& y = std::get<Vec>(r.witness->y);
      const auto z = convex::convex_combine(unit, x, y, r.witness->alpha);
      t.note("chi(x) = " + std::string(s.contains(x) ? "1" : "0") + ", chi(y) = " + (s.contains(y) ? "1" : "0"));
      t.note("chi(x +_a y) = chi(" + kernel::to_string(z) + ") = " + (s.contains(z) ? "1" : "0") +
             " but chi(x) +_a chi(y) = 0 in 2");
      return fail(triple_json(*r.witness, unit));
    }, true);
  }
  {
    const auto c3 = convex::chain(3);
    const Subset s = measurable::bit(0) | measurable::bit(2);
    h.check("union-identity", "A" + convex::describe(c3) + " S=" + c3.describe(s), [&](Trace& t) {
      const bool boolean = convex::is_boolean_subobject(c3, convex::SemiSubset{s}).passed;
      t.note(c3.describe(s) + " is a Boolean subobject: " + (boolean ? "yes" : "no"));
      const auto r = convex::boolean_union_identity(c3, s);
      t.note("union of <<a>> over S = " + c3.describe(r.union_of_generated));
      if (r.passed) return pass();
      return fail({{"union", c3.describe(r.union_of_generated)}, {"extra", c3.elements()[*r.witness]}});
    }, true);
  }
  {
    const SemiCvx diamond({"bot", "p", "q", "top"}, {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}});
    const Subset s1 = measurable::bit(0) | measurable::bit(2);
    const Subset s2 = measurable::bit(0) | measurable::bit(1);
    h.check("pi-system-semilattice", "A" + convex::describe(diamond), [&](Trace& t) {
      t.note("S1 = " + diamond.describe(s1) + ", S2 = " + diamond.describe(s2) + ", S1 n S2 = " +
             diamond.describe(s1 & s2));
      const auto r = convex::boolean_intersection_check(diamond, convex::SemiSubset{s1}, convex::SemiSubset{s2});
      if (r.passed) return pass();
      const auto x = std::get<std::size_t>(r.witness->x);
      const auto y = std::get<std::size_t>(r.witness->y);
      t.note(diamond.elements()[x] + " and " + diamond.elements()[y] + " are outside, their meet " +
             diamond.elements()[diamond.meet(x, y)] + " is inside");
      return fail(triple_json(*r.witness, diamond));
    }, true);
  }
  h.check("endo-factorization", "<-1,1>", [&](Trace& t) {
    // <s,t> = <1,t> o <s,0>: both factors must be endomorphisms of [0,1]
    try {
      const convex::EndoI left(1, 1);
      const convex::EndoI right(-1, 0);
      (void)left;
      (void)right;
      return pass();
    } catch (const DomainError& e) {
      t.note(std::string("factor rejected: ") + e.what());
      return fail({{"s", "-1"}, {"t", "1"}, {"reason", e.what()}});
    }
  }, true);
}

using SuiteFn = void (*)(Harness&, const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"giry-monad", giry_suite},       {"adjunction", adjunction_suite}, {"algebra-roundtrip", algebra_suite},
      {"convex-axioms", convex_suite},  {"boolean-subobjects", boolean_suite}, {"smcc", smcc_suite},
      {"lebesgue", lebesgue_suite},     {"errata", errata_suite}};
  return r;
}

SuiteFn find_suite(const std::string& name) {
  for (const auto& [n, f] : registry()) {
    if (n == name) return f;
  }
  std::string known;
  for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw UsageError("unknown suite '" + name + "' (known: " + known + ")");
}

std::size_t size_value(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw UsageError("config '" + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace

SuiteConfig config_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  SuiteConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "seed") c.seed = size_value(v, key);
    else if (key == "maxSize") c.max_size = size_value(v, key);
    else if (key == "maxPoints") c.max_points = size_value(v, key);
    else if (key == "samples") c.samples = size_value(v, key);
    else if (key == "grid") c.grid = size_value(v, key);
    else if (key == "maxSupport") c.max_support = size_value(v, key);
    else if (key == "mutation") {
      if (!v.is_string()) throw UsageError("config 'mutation' must be a string");
      c.mutation = v.get<std::string>();
      if (c.mutation != "mu" && c.mutation != "integrator" && c.mutation != "h" && c.mutation != "none") {
        throw UsageError("config 'mutation' must be one of mu, integrator, h, none");
      }
      if (c.mutation == "none") c.mutation.clear();
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  if (c.max_points && (*c.max_points == 0 || *c.max_points > 4)) throw UsageError("maxPoints must be between 1 and 4");
  if (c.max_size && (*c.max_size == 0 || *c.max_size > 6)) throw UsageError("maxSize must be between 1 and 6");
  if (c.grid && *c.grid == 1) throw UsageError("grid must be 0 or at least 2");
  if (c.max_support && *c.max_support == 0) throw UsageError("maxSupport must be positive");
  return c;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : registry()) out.push_back(n);
    return out;
  }();
  return names;
}

report::LawReport run_suite(const std::string& name, const SuiteConfig& config) {
  const SuiteFn fn = find_suite(name);
  Harness h(name);
  fn(h, config);
  return h.report();
}

Explanation explain(const std::string& ref, const SuiteConfig& config) {
  const auto first = ref.find('/');
  const auto second = first == std::string::npos ? std::string::npos : ref.find('/', first + 1);
  if (second == std::string::npos) throw UsageError("reference must look like suite/law/instance: '" + ref + "'");
  Explanation e;
  e.suite = ref.substr(0, first);
  e.law = ref.substr(first + 1, second - first - 1);
  e.instance = ref.substr(second + 1);
  const SuiteFn fn = find_suite(e.suite);
  Harness h(e.suite);
  h.focus_on(e.law, e.instance);
  fn(h, config);
  const auto& focus = h.focus();
  if (!focus || !focus->found) throw UsageError("unknown or stale reference '" + ref + "'");
  e.passed = focus->outcome.ok;
  e.erratum_expected = focus->erratum_expected;
  e.witness = focus->outcome.witness;
  e.trace = focus->trace;
  return e;
}

}  // namespace gcvx::suites

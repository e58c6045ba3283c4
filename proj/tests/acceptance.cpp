// Acceptance criteria, one PASS/FAIL line each. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "gcvx/adjunction.hpp"
#include "gcvx/giry.hpp"
#include "gcvx/measurable.hpp"
#include "gcvx/suites.hpp"
#include "oracles.hpp"

using namespace gcvx;
using kernel::Rational;
using kernel::Vec;
using measurable::Subset;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

Verdict require(bool cond, const std::string& detail, Verdict v = {}) {
  if (!cond) {
    v.ok = false;
    v.detail += (v.detail.empty() ? "" : "; ") + detail;
  }
  return v;
}

// all laws present with at least `min` instances, and no unexpected failures
Verdict suite_clean(const report::LawReport& r, const std::vector<std::pair<std::string, std::size_t>>& laws) {
  Verdict v;
  if (r.unexpected_failures() != 0) {
    v.ok = false;
    const auto& f = *std::find_if(r.failures.begin(), r.failures.end(), [](const auto& x) { return !x.erratum_expected; });
    v.detail = std::to_string(r.unexpected_failures()) + " unexpected failures, first " + r.suite + "/" + f.law + "/" + f.instance;
  }
  for (const auto& [law, min] : laws) {
    const auto it = r.laws.find(law);
    const std::size_t n = it == r.laws.end() ? 0 : it->second;
    v = require(n >= min, law + " ran " + std::to_string(n) + " < " + std::to_string(min) + " instances", v);
  }
  if (v.ok) v.detail = std::to_string(r.passed) + "/" + std::to_string(r.instances) + " instances";
  return v;
}

Verdict c1_monad() {
  const auto r = suites::run_suite("giry-monad");
  auto v = suite_clean(r, {{"left-unit", 1}, {"right-unit", 1}, {"associativity", 1}, {"eta-naturality", 1},
                           {"mu-naturality", 1}, {"mu-formula", 1}});
  // independent flatten-the-mixture oracle over every space <= 3 points on the 1/4 grid
  std::size_t compared = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (auto& s : measurable::all_spaces_on(n)) {
      const auto x = measurable::share(std::move(s));
      for (const auto& pp : giry::grid_mixtures(giry::grid_distributions(x, 4), 4, 2)) {
        std::map<std::size_t, Rational> point_mass;
        for (const auto& [w, q] : pp.terms()) {
          for (std::size_t a = 0; a < x->atoms().size(); ++a) point_mass[a] += w * q.measure(x->atoms()[a]);
        }
        const auto m = giry::mu(pp);
        for (std::size_t a = 0; a < x->atoms().size(); ++a) {
          if (m.measure(x->atoms()[a]) != point_mass[a]) {
            v.ok = false;
            v.detail = "mu disagrees with the flatten oracle on " + measurable::describe(*x);
          }
        }
        ++compared;
      }
    }
  }
  if (v.ok) v.detail += ", flatten oracle on " + std::to_string(compared) + " two-level measures";
  return v;
}

Verdict c2_sigma() {
  // filter every family of subsets for the σ-algebra axioms, once per carrier size
  std::size_t families = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t subsets = std::size_t{1} << n;
    const Subset full = (Subset{1} << n) - 1;
    std::vector<std::set<Subset>> sigmas;
    for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
      auto in = [&](Subset s) { return ((fam >> s) & 1U) != 0; };
      if (!in(0) || !in(full)) continue;
      bool ok = true;
      for (Subset a = 0; ok && a < subsets; ++a) {
        if (!in(a)) continue;
        ok = in(full & ~a);
        for (Subset b = 0; ok && b < subsets; ++b) ok = !in(b) || in(a | b);
      }
      if (!ok) continue;
      std::set<Subset> s;
      for (Subset a = 0; a < subsets; ++a) {
        if (in(a)) s.insert(a);
      }
      sigmas.push_back(std::move(s));
    }
    const auto pts = measurable::numbered_points(n, "p");
    for (std::uint64_t gens = 0; gens < (std::uint64_t{1} << subsets); ++gens) {
      std::vector<Subset> g;
      for (Subset a = 0; a < subsets; ++a) {
        if ((gens >> a) & 1U) g.push_back(a);
      }
      const std::set<Subset>* least = nullptr;
      for (const auto& s : sigmas) {
        const bool contains = std::all_of(g.begin(), g.end(), [&](Subset a) { return s.contains(a); });
        if (contains && (!least || s.size() < least->size())) least = &s;
      }
      const auto got = measurable::generate_sigma(pts, g).members();
      if (!least || std::set<Subset>(got.begin(), got.end()) != *least) {
        return {false, "mismatch on " + std::to_string(n) + " points, generator mask " + std::to_string(gens)};
      }
      ++families;
    }
  }
  return {true, std::to_string(families) + " generator families agree"};
}

Verdict c3_smcc() {
  const auto r = suites::run_suite("smcc");
  return suite_clean(r, {{"product-in-tensor", 64}, {"eval-measurable", 1}, {"curry-bijection", 512}});
}

Verdict c4_telescope() {
  const auto r = suites::run_suite("adjunction");
  return suite_clean(r, {{"telescope", 1000}});
}

Verdict c5_eval() {
  const auto r = suites::run_suite("adjunction");
  return suite_clean(r, {{"eval-hull", 500}});
}

Verdict c6_adjunction() {
  const auto r = suites::run_suite("adjunction");
  // 8 spaces on <= 3 points times 9 semilattices on <= 4 elements
  auto v = suite_clean(r, {{"triangle-P", 8}, {"triangle-Sigma", 9}, {"hom-count", 72}, {"adjunct-roundtrip", 1},
                           {"adjunct-unique", 1}, {"adjunct-affine", 1}});
  return v;
}

Verdict c7_roundtrip() {
  const auto r = suites::run_suite("algebra-roundtrip");
  // 1 + 1 + 2 + 5 + 15 semilattices on <= 5 elements
  return suite_clean(r, {{"roundtrip-iso", 24}, {"theta-bijective", 24}, {"algebra-unit", 24}, {"algebra-multiplication", 24}});
}

Verdict c8_separation() {
  const auto r = suites::run_suite("boolean-subobjects");
  return suite_clean(r, {{"sigma-separated", 24}, {"separate-points", 13}});
}

Verdict c9_lebesgue() {
  const auto r = suites::run_suite("lebesgue", suites::config_from_json({{"samples", 1000}, {"grid", 1000}}));
  auto v = suite_clean(r, {{"section", 2001}});
  return require(r.instances == 2001, "expected 2001 instances", v);
}

Verdict c10_errata() {
  const auto r = suites::run_suite("errata");
  Verdict v = require(r.unexpected_failures() == 0, "errata suite has unexpected failures");
  auto find = [&](const std::string& law) {
    return std::find_if(r.failures.begin(), r.failures.end(), [&](const auto& f) { return f.law == law; });
  };
  for (const std::string law : {"pi-system", "double-dual"}) {
    const auto it = find(law);
    v = require(it != r.failures.end() && it->erratum_expected, law + " counterexample not reproduced", v);
    if (it == r.failures.end()) continue;
    const auto e = suites::explain("errata/" + it->law + "/" + it->instance);
    v = require(!e.passed && !e.trace.empty(), law + " explain has no trace", v);
    if (law == "pi-system") {
      v = require(e.witness.contains("x") && e.witness.contains("y") && e.witness.contains("alpha"),
                  "L-shape witness lacks (x, y, alpha)", v);
    }
  }
  if (v.ok) v.detail = "L-shape and 2 double-dual reproduced as expected errata with explain traces";
  return v;
}

Verdict c11_mutations() {
  Verdict v;
  const auto mu = suites::run_suite("giry-monad", suites::config_from_json({{"mutation", "mu"}}));
  v = require(mu.unexpected_failures() > 0, "corrupted mu not detected", v);
  const auto in = suites::run_suite("lebesgue", suites::config_from_json({{"mutation", "integrator"}}));
  v = require(in.unexpected_failures() > 0, "corrupted integrator not detected", v);
  const auto h = suites::run_suite("algebra-roundtrip", suites::config_from_json({{"mutation", "h"}}));
  v = require(h.unexpected_failures() > 0, "corrupted h not detected", v);
  if (v.ok) {
    v.detail = "mu " + std::to_string(mu.unexpected_failures()) + ", integrator " + std::to_string(in.unexpected_failures()) +
               ", h " + std::to_string(h.unexpected_failures()) + " failures caught";
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 giry monad laws", c1_monad},
      {"2 sigma generation oracle", c2_sigma},
      {"3 smcc suite", c3_smcc},
      {"4 telescoping lemma", c4_telescope},
      {"5 evaluation representation", c5_eval},
      {"6 adjunction", c6_adjunction},
      {"7 algebra round trip", c7_roundtrip},
      {"8 separation", c8_separation},
      {"9 lebesgue section", c9_lebesgue},
      {"10 errata suite", c10_errata},
      {"11 harness self-check", c11_mutations},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s: %s (%.2fs)\n", v.ok ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
    if (!v.ok) ++failed;
  }
  return failed;
}

#include <doctest.h>

#include <algorithm>
#include <random>

#include "gcvx/adjunction.hpp"
#include "gcvx/errors.hpp"

using namespace gcvx;
using namespace gcvx::adjunction;
using measurable::bit;
using measurable::FinMeasSpace;
using measurable::share;

namespace {

SpaceRef discrete(std::size_t n) { return share(FinMeasSpace::powerset(measurable::numbered_points(n, "p"))); }

}  // namespace

TEST_CASE("sigma functor") {
  const auto s2 = sigma_functor(convex::two_space());
  CHECK(s2.space->is_discrete());
  const auto s1 = sigma_functor(convex::chain(1));
  CHECK(s1.space->sigma_size() == 2);
  const auto s3 = sigma_functor(convex::chain(3));
  CHECK(s3.space->is_discrete());
  CHECK(measurable::is_separated(*s3.space).separated);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& a : convex::all_semilattices(n)) {
      const auto s = sigma_functor(a);
      CHECK(measurable::is_separated(*s.space).separated);
      // the σ-algebra is generated by the Boolean subobjects
      CHECK(*s.space == measurable::generate_sigma(a.elements(), convex::boolean_subobjects(a)));
    }
  }
}

TEST_CASE("epsilon two") {
  CHECK(epsilon_two(Rational(0)) == 0);
  CHECK(epsilon_two(Rational(1)) == 1);
  CHECK(epsilon_two(Rational(999, 1000)) == 0);
  CHECK_THROWS_AS(epsilon_two(Rational(2)), DomainError);
}

TEST_CASE("counits") {
  const auto two = convex::two_space();
  const auto s2 = sigma_functor(two);
  for (long k = 0; k <= 10; ++k) {
    const Rational alpha(k, 10);
    const auto p = giry::mix(giry::dirac(s2.space, 0), giry::dirac(s2.space, 1), alpha);
    CHECK(static_cast<int>(counit(two, p)) == epsilon_two(alpha));
  }
  const auto seg = convex::unit_interval();
  const FinSupp<Vec> u({{Rational(1, 2), Vec{Rational(0)}}, {Rational(1, 2), Vec{Rational(1)}}});
  CHECK(counit(seg, u) == Vec{Rational(1, 2)});
  CHECK_THROWS_AS(counit(seg, FinSupp<Vec>({{Rational(1), Vec{Rational(2)}}})), DomainError);
}

TEST_CASE("epsilon2 postcomposition") {
  const auto seg = convex::unit_interval();
  const auto full = epsilon2_postcompose(convex::GeomToI{Vec{Rational(0)}, Rational(1)}, seg);
  CHECK(full.contains(Vec{Rational(0)}));
  CHECK(full.contains(Vec{Rational(1)}));
  const auto none = epsilon2_postcompose(convex::GeomToI{Vec{Rational(0)}, Rational(0)}, seg);
  CHECK_FALSE(none.contains(Vec{Rational(1)}));
  const auto id = epsilon2_postcompose(convex::GeomToI{Vec{Rational(1)}, Rational(0)}, seg);
  CHECK(id.contains(Vec{Rational(1)}));
  CHECK_FALSE(id.contains(Vec{Rational(99, 100)}));
  const auto semi = epsilon2_postcompose({Rational(0), Rational(1, 2), Rational(1)}, convex::chain(3));
  CHECK(semi.members == bit(2));
}

TEST_CASE("adjuncts round trip") {
  const auto x = discrete(2);
  const auto s = sigma_functor(convex::chain(3));
  for (const auto& f : measurable::enumerate_meas_fns(x, s.space)) {
    const auto g = adjunct(f, s);
    CHECK(adjunct_inverse(g, x, s) == f);
    const auto p = giry::mix(giry::dirac(x, 0), giry::dirac(x, 1), Rational(1, 2));
    CHECK(g(p) == s.base.meet(f(0), f(1)));
  }
}

TEST_CASE("triangle and bijection checks pass exhaustively on small instances") {
  report::Harness h("adjunction");
  std::vector<SpaceRef> xs;
  for (std::size_t n = 1; n <= 2; ++n) {
    for (auto& sp : measurable::all_spaces_on(n)) xs.push_back(share(std::move(sp)));
  }
  for (const auto& x : xs) triangle_check(h, x);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& a : convex::all_semilattices(n)) {
      const auto s = sigma_functor(a);
      triangle_check(h, s);
      for (const auto& x : xs) adjunct_bijection_check(h, x, s);
    }
  }
  const auto r = h.report();
  CHECK(r.failures.empty());
  CHECK(r.instances > 50);
}

TEST_CASE("telescoping") {
  const auto one = telescope({Rational(1)}, {bit(0) | bit(1)}, 2);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == TelescopeTerm{Rational(1), bit(0) | bit(1)});
  CHECK(one[1] == TelescopeTerm{Rational(0), 0});
  const auto two = telescope({Rational(2, 10), Rational(5, 10)}, {bit(0), bit(1) | bit(2)}, 3);
  REQUIRE(two.size() == 3);
  CHECK(two[0] == TelescopeTerm{Rational(1, 5), 7});
  CHECK(two[1] == TelescopeTerm{Rational(3, 10), 6});
  CHECK(two[2] == TelescopeTerm{Rational(1, 2), 0});
  CHECK(telescope_value(two, 0) == Rational(1, 5));
  CHECK(telescope_value(two, 2) == Rational(1, 2));
  CHECK_THROWS_AS(telescope({Rational(1, 2), Rational(1, 4)}, {bit(0), bit(1)}, 2), DomainError);
  CHECK_THROWS_AS(telescope({Rational(1, 2)}, {bit(0)}, 2), DomainError);
  CHECK_THROWS_AS(telescope({Rational(3, 2)}, {bit(0)}, 1), DomainError);
}

TEST_CASE("telescoping on random simple functions") {
  std::mt19937_64 g(21);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + g() % 6;
    std::vector<Subset> blocks(n);
    for (std::size_t p = 0; p < n; ++p) blocks[p] = bit(p);
    std::vector<Rational> c;
    for (std::size_t k = 0; k < n; ++k) c.emplace_back(static_cast<long>(g() % 9), 8);
    std::sort(c.begin(), c.end());
    const auto terms = telescope(c, blocks, n);
    Rational total;
    for (const auto& t : terms) {
      CHECK(t.coefficient >= Rational(0));
      total += t.coefficient;
    }
    CHECK(total == Rational(1));
    for (std::size_t p = 0; p < n; ++p) CHECK(telescope_value(terms, p) == c[p]);
  }
}

TEST_CASE("evaluation hull identity") {
  const auto seg = convex::unit_interval();
  const auto r = eval_hull_identity(seg, {Rational(1, 2), Rational(1, 2)}, {Vec{Rational(0)}, Vec{Rational(1)}},
                                    {convex::GeomToI{Vec{Rational(1)}, Rational(0)}});
  CHECK(r.passed);
  CHECK(r.checked == 1);
  const auto tri = convex::free_convex(3);
  const auto fns = convex::spanning_functionals(tri);
  std::mt19937_64 g(2);
  for (int i = 0; i < 50; ++i) {
    std::vector<Vec> pts;
    std::vector<Rational> w;
    long total = 0;
    std::vector<long> parts;
    for (int k = 0; k < 4; ++k) {
      const long a = 1 + static_cast<long>(g() % 5);
      const long b = 1 + static_cast<long>(g() % 5);
      const long c = 1 + static_cast<long>(g() % 5);
      pts.push_back({Rational(a, a + b + c), Rational(b, a + b + c), Rational(c, a + b + c)});
      parts.push_back(1 + static_cast<long>(g() % 7));
      total += parts.back();
    }
    for (long p : parts) w.emplace_back(p, total);
    CHECK(eval_hull_identity(tri, w, pts, fns).passed);
  }
}

TEST_CASE("algebras and convex spaces") {
  const auto two = convex::two_space();
  const auto alg = convex_to_algebra(two);
  const auto back = algebra_to_convex(alg);
  const auto& s = std::get<convex::SemiCvx>(back.space);
  CHECK(convex::find_isomorphism(two, s).has_value());
  CHECK(back.theta_bijective);
  for (long k = 0; k <= 4; ++k) {
    const Rational alpha(k, 4);
    const auto p = giry::mix(giry::dirac(alg.space, 0), giry::dirac(alg.space, 1), alpha);
    CHECK(static_cast<int>(alg.h(p)) == epsilon_two(alpha));
  }
  const auto tri = convex::free_convex(3);
  CHECK(std::get<convex::GeomCvx>(algebra_to_convex(BarycentricAlgebra{tri}).space) == tri);

  // h((1-α)δ_x + αδ_y) depending on α inside (0,1) cannot come from a semilattice
  const auto x = discrete(2);
  FiniteAlgebra wobbly{x, [](const FinDist& p) -> std::size_t { return p.mass()[0] > Rational(1, 2) ? 0 : 1; }};
  CHECK_THROWS_AS(algebra_to_convex(wobbly), DomainError);

  report::Harness h("alg");
  algebra_law_report(h, "two", alg);
  algebra_law_report(h, "tri", BarycentricAlgebra{tri});
  CHECK(h.report().failures.empty());

  // swapping two outputs of h breaks the unit law
  FiniteAlgebra swapped{alg.space, [inner = alg.h](const FinDist& p) { return 1 - inner(p); }};
  report::Harness hb("alg");
  algebra_law_report(hb, "two", swapped);
  CHECK(hb.report().unexpected_failures() > 0);
}

TEST_CASE("round trip on every small semilattice") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& a : convex::all_semilattices(n)) {
      const auto back = algebra_to_convex(convex_to_algebra(a));
      CHECK(convex::find_isomorphism(a, std::get<convex::SemiCvx>(back.space)).has_value());
      CHECK(back.theta_bijective);
    }
  }
}

#include <doctest.h>

#include <random>

#include "gcvx/convex.hpp"
#include "gcvx/errors.hpp"

using namespace gcvx;
using namespace gcvx::convex;
using kernel::Rational;
using kernel::Vec;
using measurable::bit;
using measurable::has;
using measurable::Subset;

namespace {

GeomCvx square() {
  return GeomCvx(2, {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}, {Rational(1), Rational(1)}});
}

SemiCvx diamond() {
  return SemiCvx({"bot", "a", "b", "top"}, {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}});
}

Vec v(std::initializer_list<Rational> xs) { return Vec(xs); }

// Boolean subobjects of a semilattice by filtering every subset
std::vector<Subset> boolean_by_filter(const SemiCvx& a) {
  std::vector<Subset> out;
  for (Subset s = 0; s <= a.full(); ++s) {
    bool ok = true;
    for (std::size_t x = 0; x < a.size() && ok; ++x) {
      for (std::size_t y = 0; y < a.size() && ok; ++y) {
        const bool sx = has(s, x);
        const bool sy = has(s, y);
        if (sx == sy && has(s, a.meet(x, y)) != sx) ok = false;
      }
    }
    if (ok) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("semilattice validation") {
  CHECK_NOTHROW(two_space());
  CHECK_THROWS_AS(SemiCvx({"a", "b"}, {{0, 1}, {0, 1}}), DomainError);  // not commutative
  CHECK_THROWS_AS(SemiCvx({"a", "b"}, {{1, 0}, {0, 1}}), DomainError);  // not idempotent
  CHECK_THROWS_AS(SemiCvx({"a", "b"}, {{0, 0}}), DomainError);
  CHECK_THROWS_AS(SemiCvx({"a", "a"}, {{0, 0}, {0, 1}}), DomainError);
  // commutative and idempotent but not associative
  CHECK_THROWS_AS(SemiCvx({"a", "b", "c"}, {{0, 2, 0}, {2, 1, 1}, {0, 1, 2}}), DomainError);
}

TEST_CASE("semilattice enumeration counts isomorphism classes") {
  const std::size_t expected[] = {0, 1, 1, 2, 5, 15, 53};
  for (std::size_t n = 1; n <= 6; ++n) CHECK(all_semilattices(n).size() == expected[n]);
  const auto five = all_semilattices(5);
  for (std::size_t i = 0; i < five.size(); ++i) {
    for (std::size_t j = 0; j < five.size(); ++j) CHECK(find_isomorphism(five[i], five[j]).has_value() == (i == j));
  }
}

TEST_CASE("describe") {
  CHECK(describe(chain(3)) == "(a,b,c;a<b,b<c)");
  CHECK(chain(3).describe(bit(0) | bit(2)) == "{a,c}");
  CHECK(describe(Point(v({Rational(1, 2)})), GeomCvx(1, {v({Rational(0)})})) == "(1/2)");
}

TEST_CASE("combination") {
  const auto two = two_space();
  CHECK(convex_combine(two, 0, 1, Rational(7, 10)) == 0);
  CHECK(convex_combine(two, 0, 1, Rational(1)) == 1);
  CHECK(convex_combine(two, 1, 0, Rational(0)) == 1);
  CHECK(convex_combine(chain(3), 2, 2, Rational(1, 3)) == 2);
  const auto seg = free_convex(2);
  CHECK(convex_combine(unit_interval(), v({Rational(0)}), v({Rational(1)}), Rational(1, 3)) == v({Rational(1, 3)}));
  CHECK(convex_combine(seg, v({Rational(1), Rational(0)}), v({Rational(0), Rational(1)}), Rational(1, 4)) ==
        v({Rational(3, 4), Rational(1, 4)}));
  CHECK_THROWS_AS(convex_combine(unit_interval(), v({Rational(2)}), v({Rational(1)}), Rational(1, 2)), DomainError);
  CHECK_THROWS_AS(convex_combine(two, 0, 1, Rational(2)), DomainError);
  CHECK_THROWS_AS(convex_sum(ConvexSpace(two), {{Rational(1, 2), Point(std::size_t{0})}}), DomainError);
}

TEST_CASE("hull membership") {
  const auto sq = square();
  for (const auto& g : sq.generators()) {
    const auto r = hull_member(sq, g);
    CHECK(r.member);
  }
  const auto mid = hull_member(sq, v({Rational(1, 2), Rational(0)}));
  REQUIRE(mid.member);
  Vec back(2);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 2; ++j) back[j] += mid.weights[i] * sq.generators()[i][j];
  }
  CHECK(back == v({Rational(1, 2), Rational(0)}));
  const auto out = hull_member(sq, v({Rational(2), Rational(0)}));
  CHECK_FALSE(out.member);
  REQUIRE(out.certificate);
  CHECK(out.certificate->c == v({Rational(1), Rational(0)}));
  CHECK(out.certificate->t == Rational(1));
  CHECK(hull_member(free_convex(2), v({Rational(1, 3), Rational(2, 3)})).member);
  CHECK_FALSE(hull_member(free_convex(2), v({Rational(1, 3), Rational(1, 3)})).member);
  CHECK_THROWS_AS(hull_member(sq, v({Rational(0)})), DomainError);
}

TEST_CASE("hull certificates separate on random polytopes") {
  std::mt19937_64 g(9);
  for (int i = 0; i < 200; ++i) {
    std::vector<Vec> gens;
    for (int k = 0; k < 4; ++k) gens.push_back(v({Rational(static_cast<long>(g() % 5), 4), Rational(static_cast<long>(g() % 5), 4)}));
    const GeomCvx a(2, gens);
    const Vec p = v({Rational(static_cast<long>(g() % 9) - 2, 4), Rational(static_cast<long>(g() % 9) - 2, 4)});
    const auto r = hull_member(a, p);
    if (r.member) {
      Vec back(2);
      Rational total;
      for (std::size_t k = 0; k < a.generators().size(); ++k) {
        CHECK(r.weights[k] >= Rational(0));
        total += r.weights[k];
        for (std::size_t j = 0; j < 2; ++j) back[j] += r.weights[k] * a.generators()[k][j];
      }
      CHECK(total == Rational(1));
      CHECK(back == p);
    } else {
      REQUIRE(r.certificate);
      for (const auto& gen : a.generators()) CHECK(kernel::dot(r.certificate->c, gen) <= r.certificate->t);
      CHECK(kernel::dot(r.certificate->c, p) > r.certificate->t);
    }
  }
}

TEST_CASE("standard spaces") {
  CHECK(free_convex(1).generators().size() == 1);
  CHECK(hull_member(free_convex(2), v({Rational(2, 3), Rational(1, 3)})).member);
  CHECK(chain(3).leq(0, 2));
  CHECK(chain(3).up_set(1) == (bit(1) | bit(2)));
}

TEST_CASE("paths") {
  const PathMap p{unit_interval(), v({Rational(0)}), v({Rational(1)})};
  CHECK(path_eval(p, Rational(0)) == Point(v({Rational(0)})));
  CHECK(path_eval(p, Rational(1, 4)) == Point(v({Rational(1, 4)})));
  const PathMap q{two_space(), std::size_t{0}, std::size_t{1}};
  CHECK(path_eval(q, Rational(1)) == Point(std::size_t{1}));
  CHECK(path_eval(q, Rational(99, 100)) == Point(std::size_t{0}));
}

TEST_CASE("endomorphisms of the unit interval") {
  const EndoI flip(-1, 1);
  CHECK(flip(Rational(1, 4)) == Rational(3, 4));
  CHECK(endo_compose(flip, flip) == EndoI(1, 0));
  CHECK_THROWS_AS(EndoI(1, 1), DomainError);
  CHECK_THROWS_AS(EndoI(-1, 0), DomainError);
  CHECK_THROWS_AS(EndoI(2, 0), DomainError);
  const EndoI a(Rational(1, 2), Rational(1, 4));
  const EndoI b(Rational(-1, 2), Rational(1, 2));
  for (long k = 0; k <= 8; ++k) {
    const Rational x(k, 8);
    CHECK(endo_compose(a, b)(x) == a(b(x)));
    CHECK(endo_apply(a, x) == a(x));
  }
}

TEST_CASE("boolean subobjects of semilattices") {
  CHECK(boolean_subobjects(two_space()) == std::vector<Subset>{0, 1, 2, 3});
  const auto c3 = chain(3);
  CHECK(is_boolean_subobject(c3, SemiSubset{bit(2)}).passed);
  CHECK(is_boolean_subobject(c3, SemiSubset{0}).passed);
  CHECK(is_boolean_subobject(c3, SemiSubset{c3.full()}).passed);
  const auto d = diamond();
  const auto r = is_boolean_subobject(d, SemiSubset{bit(1) | bit(2)});
  CHECK_FALSE(r.passed);
  REQUIRE(r.witness);
  CHECK(std::get<std::size_t>(r.witness->x) == 1);
  CHECK(std::get<std::size_t>(r.witness->y) == 2);
  CHECK(r.witness->alpha == Rational(1, 2));
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& a : all_semilattices(n)) CHECK(boolean_subobjects(a) == boolean_by_filter(a));
  }
}

TEST_CASE("generated subobjects") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& a : all_semilattices(n)) {
      for (std::size_t x = 0; x < n; ++x) {
        // oracle: unfold b such that x = c +_β b for some c, β ∈ (0,1]
        Subset expected = bit(x);
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t c = 0; c < n; ++c) {
            if (a.meet(c, b) == x) expected |= bit(b);
          }
        }
        CHECK(generated_subobject(a, x) == expected);
        CHECK(generated_subobject(a, x) == a.up_set(x));
      }
    }
  }
  const auto sq = square();
  CHECK(in_generated_subobject(sq, v({Rational(1, 2), Rational(1, 2)}), v({Rational(0), Rational(1)})));
  CHECK_FALSE(in_generated_subobject(sq, v({Rational(0), Rational(0)}), v({Rational(1), Rational(1)})));
  CHECK(in_generated_subobject(sq, v({Rational(0), Rational(0)}), v({Rational(0), Rational(0)})));
}

TEST_CASE("intersections and unions") {
  const auto I = unit_interval();
  CHECK(boolean_intersection_check(I, HalfspaceSplit{v({Rational(1)}), Rational(1, 4)},
                                   HalfspaceSplit{v({Rational(1)}), Rational(1, 2)})
            .passed);
  const HalfspaceSplit s1{v({Rational(1), Rational(0)}), Rational(1, 2)};
  const HalfspaceSplit s2{v({Rational(0), Rational(1)}), Rational(1, 2)};
  CHECK(boolean_intersection_check(square(), s1, s1).passed);
  const auto l = boolean_intersection_check(square(), s1, s2);
  CHECK_FALSE(l.passed);
  REQUIRE(l.witness);
  const auto z = convex_combine(square(), std::get<Vec>(l.witness->x), std::get<Vec>(l.witness->y), l.witness->alpha);
  CHECK((s1.contains(z) && s2.contains(z)));
  CHECK_FALSE((s1.contains(std::get<Vec>(l.witness->x)) && s2.contains(std::get<Vec>(l.witness->x))));
  CHECK_FALSE((s1.contains(std::get<Vec>(l.witness->y)) && s2.contains(std::get<Vec>(l.witness->y))));

  const auto c3 = chain(3);
  CHECK(boolean_union_identity(c3, c3.full()).passed);
  CHECK(boolean_union_identity(c3, bit(2)).passed);
  const auto u = boolean_union_identity(c3, bit(0) | bit(2));
  CHECK_FALSE(u.passed);
  CHECK(u.witness == std::optional<std::size_t>{1});
}

TEST_CASE("union identity holds exactly for up-set subobjects") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& a : all_semilattices(n)) {
      for (Subset s : boolean_subobjects(a)) {
        bool up = true;
        for (std::size_t x = 0; x < n; ++x) {
          if (has(s, x) && (a.up_set(x) & ~s)) up = false;
        }
        CHECK(boolean_union_identity(a, s).passed == up);
      }
    }
  }
}

TEST_CASE("chi affinity is report-only") {
  CHECK(chi_affinity_check(two_space(), SemiSubset{bit(1)}).passed);
  const auto r = chi_affinity_check(unit_interval(), HalfspaceSplit{v({Rational(1)}), Rational(1, 2)});
  CHECK_FALSE(r.passed);
}

TEST_CASE("positively convex wrapper") {
  const auto sq = square();
  const Vec zero = v({Rational(0), Rational(0)});
  const auto pc = with_zero(sq, zero);
  CHECK(pc.evaluate({}) == Point(zero));
  const Vec a = v({Rational(1), Rational(0)});
  const Vec b = v({Rational(0), Rational(1)});
  CHECK(pc.evaluate({{Rational(1, 2), a}, {Rational(1, 2), b}}) ==
        convex_combine(ConvexSpace(sq), Point(a), Point(b), Rational(1, 2)));
  CHECK(pc.evaluate({{Rational(1, 2), a}}) == Point(v({Rational(1, 2), Rational(0)})));
  CHECK_THROWS_AS((void)pc.evaluate({{Rational(3, 4), a}, {Rational(1, 2), b}}), DomainError);
  CHECK_THROWS_AS(with_zero(sq, v({Rational(2), Rational(0)})), DomainError);
}

TEST_CASE("function space of Boolean subobjects") {
  const auto fs = function_space_convex(two_space());
  CHECK(fs.subobjects.size() == 4);
  CHECK(fs.subobjects[fs.zero] == 0);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(fs.subobjects[fs.space.meet(i, j)] == (fs.subobjects[i] & fs.subobjects[j]));
  }
  CHECK_THROWS_AS(function_space_convex(diamond()), DomainError);
}

TEST_CASE("affine maps into the interval") {
  const auto maps = affine_maps_to_interval(two_space());
  CHECK(maps.size() == 5);
  for (const auto& m : maps) CHECK(m[0] == m[1]);
  const auto r = injectivity_check(two_space());
  CHECK_FALSE(r.injective);
  CHECK(injectivity_check(square()).injective);
  CHECK(injectivity_check(GeomCvx(2, {v({Rational(1), Rational(1)})})).injective);
  CHECK(double_dual_embed(two_space(), std::size_t{0}) == double_dual_embed(two_space(), std::size_t{1}));
  for (const auto& m : spanning_functionals(square())) CHECK(is_valid_map(m, square()));
  CHECK_FALSE(is_valid_map(GeomToI{v({Rational(2), Rational(0)}), Rational(0)}, square()));
  CHECK(is_valid_map(SemiToSemi{{0, 0, 1}}, chain(3), two_space()));
  CHECK_FALSE(is_valid_map(SemiToSemi{{1, 0, 1}}, chain(3), two_space()));
}

TEST_CASE("separating points") {
  const auto I = unit_interval();
  const auto s = separate_points(I, v({Rational(0)}), v({Rational(1)}));
  CHECK(s.normal == v({Rational(1)}));
  CHECK(s.threshold == Rational(1));
  CHECK(s.contains(v({Rational(1)})));
  CHECK_FALSE(s.contains(v({Rational(99, 100)})));
  const auto m = separate_points(I, v({Rational(1)}), v({Rational(0)}));
  CHECK(m.contains(v({Rational(0)})));
  CHECK_FALSE(m.contains(v({Rational(1)})));
  const auto d = separate_points(square(), v({Rational(0), Rational(0)}), v({Rational(1), Rational(1)}));
  CHECK(d.normal == v({Rational(1), Rational(1)}));
  CHECK(d.threshold == Rational(2));
  std::size_t inside = 0;
  const auto sq = square();
  for (const auto& g : sq.generators()) inside += d.contains(g) ? 1 : 0;
  CHECK(inside == 1);
  CHECK_THROWS_AS(separate_points(I, v({Rational(0)}), v({Rational(0)})), DomainError);
}

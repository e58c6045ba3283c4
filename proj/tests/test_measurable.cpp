#include <doctest.h>

#include <random>
#include <set>

#include "gcvx/errors.hpp"
#include "gcvx/measurable.hpp"
#include "oracles.hpp"

using namespace gcvx;
using namespace gcvx::measurable;

namespace {

std::set<Subset> members_of(const FinMeasSpace& x) {
  const auto m = x.members();
  return {m.begin(), m.end()};
}

std::vector<std::string> pts(std::size_t n) { return numbered_points(n, "p"); }

}  // namespace

TEST_CASE("generate_sigma examples") {
  CHECK(members_of(generate_sigma({"a", "b"}, {})) == std::set<Subset>{0, 3});
  CHECK(members_of(generate_sigma({"a", "b"}, {bit(0)})) == std::set<Subset>{0, 1, 2, 3});
  CHECK(generate_sigma({"a", "b", "c"}, {bit(0), bit(0) | bit(1)}).sigma_size() == 8);
}

TEST_CASE("generate_sigma matches the filter oracle on carriers up to 3 points") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t subsets = std::size_t{1} << n;
    // every generator family on n = 1, 2; single and paired generators on n = 3
    if (n <= 2) {
      for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
        std::vector<Subset> gens;
        for (Subset s = 0; s < subsets; ++s) {
          if ((fam >> s) & 1U) gens.push_back(s);
        }
        CHECK(members_of(generate_sigma(pts(n), gens)) == oracle::least_sigma_by_filter(n, gens));
      }
    } else {
      for (Subset a = 0; a < subsets; ++a) {
        for (Subset b = a; b < subsets; ++b) {
          CHECK(members_of(generate_sigma(pts(n), {a, b})) == oracle::least_sigma_by_filter(n, {a, b}));
        }
      }
    }
  }
}

TEST_CASE("generate_sigma matches the closure oracle on random families of 6 points") {
  std::mt19937_64 g(11);
  for (int i = 0; i < 200; ++i) {
    std::vector<Subset> gens;
    for (std::size_t k = 0; k < 1 + g() % 4; ++k) gens.push_back(g() & 63U);
    CHECK(members_of(generate_sigma(pts(6), gens)) == oracle::sigma_closure(6, gens));
  }
}

TEST_CASE("from_sigma validates the axioms") {
  CHECK_NOTHROW(FinMeasSpace::from_sigma({"a", "b"}, {0, 1, 2, 3}));
  CHECK_THROWS_AS(FinMeasSpace::from_sigma({"a", "b"}, {0, 1, 3}), DomainError);  // no complement
  CHECK_THROWS_AS(FinMeasSpace::from_sigma({"a", "b", "c"}, {0, 1, 2, 6, 7}), DomainError);
  CHECK_THROWS_AS(FinMeasSpace::from_sigma({"a", "b"}, {1, 2}), DomainError);  // no empty set
  CHECK_THROWS_AS(FinMeasSpace::from_atoms({"a", "b"}, {1}), DomainError);
  CHECK_THROWS_AS(FinMeasSpace::from_atoms({"a", "b"}, {3, 1}), DomainError);
}

TEST_CASE("space basics") {
  const auto x = FinMeasSpace::from_atoms({"a", "b", "c"}, {bit(0) | bit(2), bit(1)});
  CHECK(x.contains(bit(1)));
  CHECK_FALSE(x.contains(bit(0)));
  CHECK(x.atom_of(2) == 0);
  CHECK(x.sigma_size() == 4);
  CHECK(describe(x) == "{a,c|b}");
  CHECK(describe(x, bit(0) | bit(1)) == "{a,b}");
  CHECK(x.subset_of({"c", "a"}) == (bit(0) | bit(2)));
  CHECK_THROWS_AS((void)x.subset_of({"z"}), DomainError);
  CHECK(x.ids_of(bit(1)) == std::vector<std::string>{"b"});
}

TEST_CASE("all_spaces_on counts set partitions") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52};
  for (std::size_t n = 1; n <= 5; ++n) CHECK(all_spaces_on(n).size() == bell[n]);
}

TEST_CASE("coinduced sigma") {
  const auto x = share(FinMeasSpace::powerset({"a", "b"}));
  CHECK(coinduced_sigma({"a", "b"}, {{x, {0, 1}}}).is_discrete());
  const auto one = share(FinMeasSpace::powerset({"*"}));
  CHECK(coinduced_sigma({"0", "1", "2"}, {{one, {1}}}).is_discrete());
  const auto triv = share(FinMeasSpace::trivial({"a", "b"}));
  CHECK(members_of(coinduced_sigma({"0", "1"}, {{triv, {0, 1}}})) == std::set<Subset>{0, 3});
}

TEST_CASE("coinduced sigma agrees with a predicate filter") {
  // U is in the coinduced σ-algebra iff every family preimage is measurable
  for (const auto& src : all_spaces_on(3)) {
    const auto s = share(src);
    for (const auto& f : oracle::all_maps(3, 3)) {
      const auto c = coinduced_sigma(pts(3), {{s, f}});
      for (Subset u = 0; u < 8; ++u) CHECK(c.contains(u) == s->contains(oracle::preimage(f, u)));
    }
  }
}

TEST_CASE("induced sigma") {
  CHECK(members_of(induced_sigma({"a", "b"}, {})) == std::set<Subset>{0, 3});
  const auto x = share(FinMeasSpace::powerset({"a", "b"}));
  CHECK(induced_sigma({"a", "b"}, {{{0, 1}, x}}).is_discrete());
  // two evaluation maps on the 4 functions {0,1} -> {0,1}
  const auto two = share(FinMeasSpace::powerset({"0", "1"}));
  const std::vector<std::size_t> ev0{0, 0, 1, 1};
  const std::vector<std::size_t> ev1{0, 1, 0, 1};
  const auto ind = induced_sigma(pts(4), {{ev0, two}, {ev1, two}});
  const auto gen = generate_sigma(pts(4), {oracle::preimage(ev0, 1), oracle::preimage(ev1, 1)});
  CHECK(ind == gen);
}

TEST_CASE("is_measurable") {
  const auto triv = FinMeasSpace::trivial({"a", "b"});
  const auto disc = FinMeasSpace::powerset({"0", "1"});
  const auto r = is_measurable({0, 1}, triv, disc);
  CHECK_FALSE(r.measurable);
  REQUIRE(r.witness);
  CHECK((*r.witness == bit(0) || *r.witness == bit(1)));
  CHECK(is_measurable({1, 1}, triv, disc).measurable);
  CHECK(is_measurable({0, 1}, disc, disc).measurable);
  CHECK_THROWS_AS(is_measurable({0, 2}, disc, disc), DomainError);
  CHECK_THROWS_AS(MeasFn(share(triv), share(disc), {0, 1}), MeasurabilityError);
}

TEST_CASE("enumerate_meas_fns matches a brute-force filter") {
  CHECK(enumerate_meas_fns(share(FinMeasSpace::powerset({"*"})), share(FinMeasSpace::trivial(pts(3)))).size() == 3);
  CHECK(enumerate_meas_fns(share(FinMeasSpace::powerset({"a", "b"})), share(FinMeasSpace::powerset({"0", "1"}))).size() == 4);
  CHECK(enumerate_meas_fns(share(FinMeasSpace::trivial({"a", "b"})), share(FinMeasSpace::powerset({"0", "1"}))).size() == 2);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (const auto& xs : all_spaces_on(n)) {
        for (const auto& ys : all_spaces_on(m)) {
          std::size_t expected = 0;
          for (const auto& f : oracle::all_maps(n, m)) {
            bool ok = true;
            for (Subset u = 0; u < (Subset{1} << m); ++u) {
              if (ys.contains(u) && !xs.contains(oracle::preimage(f, u))) ok = false;
            }
            if (ok) ++expected;
          }
          CHECK(enumerate_meas_fns(share(xs), share(ys)).size() == expected);
        }
      }
    }
  }
}

TEST_CASE("composition and identity") {
  const auto x = share(FinMeasSpace::powerset(pts(3)));
  const auto y = share(FinMeasSpace::from_atoms(pts(2), {3}));
  const MeasFn f(x, x, {2, 0, 1});
  const MeasFn g(x, y, {0, 0, 1});
  CHECK(compose(g, f).mapping() == std::vector<std::size_t>{1, 0, 0});
  CHECK(compose(f, MeasFn::identity(x)) == f);
  CHECK_THROWS_AS(compose(f, g), DomainError);
}

TEST_CASE("separation") {
  CHECK(is_separated(FinMeasSpace::powerset(pts(4))).separated);
  const auto r = is_separated(FinMeasSpace::trivial({"a", "b"}));
  CHECK_FALSE(r.separated);
  REQUIRE(r.witness);
  CHECK(*r.witness == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("capacity guards") {
  CHECK_THROWS_AS(FinMeasSpace::powerset(pts(65)), CapacityError);
  CHECK_THROWS_AS((void)FinMeasSpace::powerset(pts(30)).members(), CapacityError);
  CHECK_THROWS_AS(enumerate_meas_fns(share(FinMeasSpace::powerset(pts(30))), share(FinMeasSpace::powerset(pts(2)))),
                  CapacityError);
}

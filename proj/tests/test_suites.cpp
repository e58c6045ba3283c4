#include <doctest.h>

#include <cstdlib>

#include "gcvx/errors.hpp"
#include "gcvx/json_io.hpp"
#include "gcvx/suites.hpp"

using namespace gcvx;
using nlohmann::json;

TEST_CASE("config parsing") {
  const auto c = suites::config_from_json({{"seed", 7}, {"samples", 10}, {"maxSize", 3}});
  CHECK(c.seed == 7);
  CHECK(c.samples == std::optional<std::size_t>{10});
  CHECK(c.max_size == std::optional<std::size_t>{3});
  CHECK_THROWS_AS(suites::config_from_json({{"bogus", 1}}), UsageError);
  CHECK_THROWS_AS(suites::config_from_json({{"seed", "x"}}), UsageError);
  CHECK_THROWS_AS(suites::config_from_json({{"samples", -1}}), UsageError);
  CHECK_THROWS_AS(suites::config_from_json({{"mutation", "nope"}}), UsageError);
  CHECK_THROWS_AS(suites::config_from_json(json::array()), UsageError);
  CHECK_THROWS_AS(suites::run_suite("nope"), UsageError);
}

TEST_CASE("lebesgue suite with ten samples") {
  const auto r = suites::run_suite("lebesgue", suites::config_from_json({{"samples", 10}, {"seed", 1}}));
  CHECK(r.instances == 10);
  CHECK(r.passed == 10);
  CHECK(r.failures.empty());
}

TEST_CASE("giry suite on one-point spaces") {
  const auto r = suites::run_suite("giry-monad", suites::config_from_json({{"maxPoints", 1}}));
  CHECK(r.failures.empty());
  CHECK(r.instances > 0);
  CHECK(r.passed + r.failures.size() == r.instances);
}

TEST_CASE("reports are deterministic and independent of the thread count") {
  const auto cfg = suites::config_from_json({{"maxSize", 3}, {"samples", 20}});
  setenv("GCVX_THREADS", "1", 1);
  const auto one = suites::run_suite("boolean-subobjects", cfg).to_json().dump();
  setenv("GCVX_THREADS", "4", 1);
  const auto four = suites::run_suite("boolean-subobjects", cfg).to_json().dump();
  unsetenv("GCVX_THREADS");
  CHECK(one == four);
  CHECK(one == suites::run_suite("boolean-subobjects", cfg).to_json().dump());
  const auto a = suites::run_suite("algebra-roundtrip", suites::config_from_json({{"maxSize", 4}})).to_json().dump();
  setenv("GCVX_THREADS", "3", 1);
  const auto b = suites::run_suite("algebra-roundtrip", suites::config_from_json({{"maxSize", 4}})).to_json().dump();
  unsetenv("GCVX_THREADS");
  CHECK(a == b);
}

TEST_CASE("every failure replays through explain") {
  const auto r = suites::run_suite("errata");
  CHECK(r.unexpected_failures() == 0);
  REQUIRE_FALSE(r.failures.empty());
  for (const auto& f : r.failures) {
    const auto e = suites::explain(r.suite + "/" + f.law + "/" + f.instance);
    CHECK_FALSE(e.passed);
    CHECK(e.erratum_expected == f.erratum_expected);
    CHECK(e.witness == f.witness);
    CHECK_FALSE(e.trace.empty());
  }
}

TEST_CASE("explain on a passing instance and on stale references") {
  const auto e = suites::explain("convex-axioms/endo-laws/grid");
  CHECK(e.passed);
  REQUIRE_FALSE(e.trace.empty());
  CHECK_THROWS_AS(suites::explain("convex-axioms/endo-laws/nope"), UsageError);
  CHECK_THROWS_AS(suites::explain("convex-axioms"), UsageError);
  CHECK_THROWS_AS(suites::explain("nope/a/b"), UsageError);
}

TEST_CASE("law report invariants and JSON schema") {
  const auto r = suites::run_suite("errata");
  const auto j = r.to_json();
  CHECK(j.at("suite") == "errata");
  CHECK(j.at("instances").get<std::size_t>() == j.at("passed").get<std::size_t>() + j.at("failures").size());
  std::size_t total = 0;
  for (const auto& [law, n] : r.laws) total += n;
  CHECK(total == r.instances);
  for (const auto& f : j.at("failures")) {
    CHECK(f.contains("law"));
    CHECK(f.contains("instance"));
    CHECK(f.contains("witness"));
    CHECK(f.at("erratumExpected").get<bool>());
  }
}

TEST_CASE("mutations are detected") {
  CHECK(suites::run_suite("giry-monad", suites::config_from_json({{"mutation", "mu"}, {"maxPoints", 2}})).unexpected_failures() > 0);
  CHECK(suites::run_suite("lebesgue", suites::config_from_json({{"mutation", "integrator"}, {"samples", 20}})).unexpected_failures() > 0);
  CHECK(suites::run_suite("algebra-roundtrip", suites::config_from_json({{"mutation", "h"}, {"maxSize", 3}})).unexpected_failures() > 0);
}

TEST_CASE("json encodings round trip") {
  const json space = {{"points", {"a", "b", "c"}}, {"generators", {{"a"}}}};
  const auto x = json_io::space_from_json(space);
  CHECK(x.atoms().size() == 2);
  CHECK(json_io::space_from_json(json_io::to_json(x)) == x);
  CHECK(json_io::space_from_json({{"points", {"a", "b"}}}).is_discrete());
  CHECK_THROWS_AS(json_io::space_from_json({{"points", {"a"}}, {"sigma", {{"zz"}}}}), DomainError);
  CHECK_THROWS_AS(json_io::space_from_json({{"pts", {"a"}}}), UsageError);
  CHECK_THROWS_AS(json_io::space_from_json({{"points", {"a", "b"}}, {"sigma", {{"a"}}}}), DomainError);

  const auto two = convex::ConvexSpace(convex::two_space());
  CHECK(json_io::convex_from_json(json_io::to_json(two)) == two);
  const auto sq = convex::ConvexSpace(convex::GeomCvx(2, {{kernel::Rational(0), kernel::Rational(1, 2)}}));
  CHECK(json_io::convex_from_json(json_io::to_json(sq)) == sq);
  CHECK_THROWS_AS(json_io::convex_from_json({{"kind", "other"}}), UsageError);

  const auto p = giry::dirac(measurable::share(x), 1);
  CHECK(json_io::dist_from_json(json_io::to_json(p)) == p);
  CHECK(json_io::rational_from_json("3/6") == kernel::Rational(1, 2));
  CHECK_THROWS_AS(json_io::rational_from_json("1/0"), UsageError);
  CHECK_THROWS_AS(json_io::rational_from_json(0.5), UsageError);

  const convex::BooleanSubobject h = convex::HalfspaceSplit{{kernel::Rational(1), kernel::Rational(0)}, kernel::Rational(1, 2), true};
  CHECK(json_io::subobject_from_json(json_io::to_json(h, sq), sq) == h);
  const convex::BooleanSubobject s = convex::SemiSubset{2};
  CHECK(json_io::subobject_from_json(json_io::to_json(s, two), two) == s);
}

#include <doctest.h>

#include "flatlab/error.hpp"
#include "support/generators.hpp"

using namespace flatlab;
using namespace flatlab::expr;
using flatlab::testing::test_vars;

namespace {

RationalExpr P(const char* s) { return parse(s, test_vars()); }

// F_z + F_xxx - 3/2 F_xx^2 / F_x, written out here rather than taken from
// the knkdv module.
RationalExpr kn_lhs(const RationalExpr& f) {
  auto fx = diff(f, "x");
  auto fxx = diff(fx, "x");
  return diff(f, "z") + diff(fxx, "x") - RationalExpr(BigRational(3, 2)) * fxx * fxx / fx;
}

}  // namespace

TEST_CASE("diff examples") {
  CHECK(diff(P("x^3/3 + 4*z"), "x").identical(P("x^2")));
  CHECK(diff(P("7/3"), "x").is_zero());
  CHECK(diff(P("1/x"), "x").identical(P("-1/x^2")));
  CHECK(diff(P("x*y^2/(x + z)"), "x").identical(P("y^2*z/(x + z)^2")));
  CHECK_THROWS_AS(diff(P("x"), "nope"), UnknownVariable);
}

TEST_CASE("diff chains through function jets") {
  CHECK(diff(P("l"), "x").identical(P("l_x")));
  CHECK(diff(P("l_x"), "z").identical(P("l_xz")));
  CHECK(diff(P("l"), "y").is_zero());
  CHECK(diff(P("y^2*l^2"), "x").identical(P("2*y^2*l*l_x")));
  CHECK(diff(diff(P("l/y"), "x"), "x").identical(P("l_xx/y")));
  // Order 3 is registered; a fourth derivative is not.
  CHECK_THROWS_AS(diff(P("l_xxz"), "x"), Error);
}

TEST_CASE("substitute examples") {
  CHECK(substitute(P("y^2*l"), {{"l", RationalExpr(0L)}}).is_zero());
  CHECK(substitute(P("l"), {{"l", P("-x/(3*z)")}}).identical(P("-x/(3*z)")));
  SUBCASE("base binding propagates to derivative jets") {
    auto fz = diff(P("F"), "z");
    CHECK(substitute(fz, {{"F", P("x^3/3 + 4*z")}}).identical(P("4")));
    auto metric_entry = P("y^2*l^2 - 2*y*l_x + l");
    CHECK(substitute(metric_entry, {{"l", P("x")}}).identical(P("x^2*y^2 + x - 2*y")));
  }
  SUBCASE("simultaneous, not sequential") {
    CHECK(substitute(P("x + 2*y"), {{"x", P("y")}, {"y", P("x")}}).identical(P("y + 2*x")));
  }
  CHECK_THROWS_AS(substitute(P("1/(x - y)"), {{"x", P("y")}}), DivisionByZero);
}

TEST_CASE("is_zero decides the KN equation exactly") {
  CHECK(is_zero(P("x - x")));
  CHECK(is_zero(kn_lhs(P("x^3/3 + 4*z"))));
  CHECK_FALSE(is_zero(kn_lhs(P("x^2"))));
  // F_z + F_xxx - (3/2) F_xx^2/F_x = 0 + 0 - (3/2)*4/(2x) by hand.
  CHECK(kn_lhs(P("x^2")).identical(P("-3/x")));
}

TEST_CASE("eval_numeric examples") {
  CHECK(eval_numeric(P("x^2"), std::map<std::string, double>{{"x", 2.0}}) == doctest::Approx(4.0));
  CHECK(eval_numeric(P("-x/(3*z)"), std::map<std::string, double>{{"x", 1.0}, {"z", 1.0}}) ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  // 1/45 + 4/3 - 16 = (1 + 60 - 720)/45
  auto f22 = P("1/45*x^5 + 4/3*x^2*z - 16*z^2/x");
  CHECK(eval_numeric(f22, std::map<std::string, double>{{"x", 1.0}, {"z", 1.0}}) ==
        doctest::Approx(-659.0 / 45.0).epsilon(1e-14));
  CHECK_THROWS_AS(eval_numeric(P("1/(x - 1)"), std::map<std::string, double>{{"x", 1.0}}),
                  NearSingular);
  CHECK_THROWS_AS(eval_numeric(P("x*y"), std::map<std::string, double>{{"x", 1.0}}),
                  UnknownVariable);
}

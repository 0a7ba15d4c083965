#include <doctest.h>

#include "flatlab/error.hpp"
#include "flatlab/knkdv/antiderivative.hpp"
#include "support/generators.hpp"

using namespace flatlab;
using namespace flatlab::expr;
using flatlab::knkdv::antiderivative;
using flatlab::testing::test_vars;

namespace {

RationalExpr P(const char* s) { return parse(s, test_vars()); }
RationalExpr integrate(const char* s, const char* v = "x") { return antiderivative(P(s), test_vars()->id(v)); }

}  // namespace

TEST_CASE("antiderivative of polynomials and negative powers") {
  CHECK(integrate("0").is_zero());
  CHECK(integrate("x^2").identical(P("x^3/3")));
  CHECK(integrate("z").identical(P("x*z")));
  CHECK(integrate("4", "z").identical(P("4*z")));
  CHECK(integrate("16*z^2/x^2").identical(P("-16*z^2/x")));
  CHECK(integrate("(x^3/3 + 4*z)^2/x^2").identical(P("x^5/45 + 4/3*x^2*z - 16*z^2/x")));
}

TEST_CASE("antiderivative with a repeated non-monomial factor") {
  // d/dx (-1/(2 (x^2 + 1))) = x/(x^2 + 1)^2
  CHECK(integrate("x/(x^2 + 1)^2").identical(P("-1/(2*x^2 + 2)")));
  CHECK(integrate("1/(x + z)^3").identical(P("-1/(2*(x + z)^2)")));
}

TEST_CASE("antiderivative rejects logarithmic parts") {
  CHECK_THROWS_AS(integrate("1/x"), IntegrationError);
  CHECK_THROWS_AS(integrate("z/x"), IntegrationError);
  CHECK_THROWS_AS(integrate("1/(x^2 + z)"), IntegrationError);
  CHECK_THROWS_AS(integrate("1/x^2 + 1/(x + 1)"), IntegrationError);
  CHECK_THROWS_AS(integrate("l"), IntegrationError);
}

TEST_CASE("property: antiderivative inverts diff up to an x-free term") {
  flatlab::testing::ExprGen gen(test_vars(), {"x", "z", "c"}, 11);
  const VarId x = test_vars()->id("x");
  int cases = 0;
  for (int t = 0; t < 200; ++t) {
    auto r = gen.rational();
    auto dr = diff(r, x);
    if (dr.is_zero()) continue;
    ++cases;
    auto g = antiderivative(dr, x);
    REQUIRE(diff(g, x) == dr);
    REQUIRE_FALSE((g - r).depends_on(x));
  }
  CHECK(cases > 100);
}

#include <doctest.h>

#include "flatlab/error.hpp"
#include "support/generators.hpp"

using namespace flatlab;
using namespace flatlab::expr;
using flatlab::testing::test_vars;

namespace {

RationalExpr P(const char* s) { return parse(s, test_vars()); }

}  // namespace

TEST_CASE("parse reads the grammar into canonical form") {
  SUBCASE("rational constant is pulled into the denominator") {
    auto e = P("y^2*l - 1/2");
    CHECK(e.num().to_string(*test_vars()) == "2*y^2*l - 1");
    CHECK(e.den().to_string(*test_vars()) == "2");
  }
  SUBCASE("cubic over three") {
    auto e = P("x^3/3 + 4*z");
    CHECK(e.num().to_string(*test_vars()) == "x^3 + 12*z");
    CHECK(e.den().to_string(*test_vars()) == "3");
  }
  SUBCASE("cancellation gives 0/1") {
    auto e = P("(x - x)");
    CHECK(e.is_zero());
    CHECK(e.den().is_one());
    CHECK(e.to_string() == "0");
  }
  SUBCASE("unary minus binds looser than power") {
    CHECK(P("-x^2") == P("0 - x*x"));
    CHECK(P("2*-x") == P("-2*x"));
  }
  SUBCASE("whitespace is insignificant") { CHECK(P("  x *\ty ") == P("x*y")); }
  SUBCASE("big integers stay exact") {
    auto e = P("123456789012345678901234567890*x/3");
    CHECK(e.to_string() == "41152263004115226300411522630*x");
  }
}

TEST_CASE("parse reports errors with positions") {
  auto position_of = [](const char* s) -> long {
    try {
      P(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(position_of("x + * y") == 4);
  CHECK(position_of("(x + y") == 6);
  CHECK(position_of("x y") == 2);
  CHECK(position_of("x^y") == 2);
  CHECK(position_of("x^2^3") == 3);
  CHECK(position_of("q + 1") == 0);
  CHECK(position_of("1.5") == 0);
  CHECK(position_of("") == 0);
  SUBCASE("division by a syntactically zero constant") {
    CHECK(position_of("1/0") == 2);
    CHECK(position_of("x/(y - y)") == 2);
  }
}

TEST_CASE("printing follows graded-lex order and re-parses") {
  CHECK(P("z + x^2 + y*x").to_string() == "x^2 + x*y + z");
  CHECK(P("-x/(3*z)").to_string() == "-x/(3*z)");
  CHECK(P("1/x^2").to_string() == "1/x^2");
  CHECK(P("1/(x*y)").to_string() == "1/(x*y)");
  CHECK(P("(x + 1)/(x - 1)").to_string() == "(x + 1)/(x - 1)");
  CHECK(P("1/45*x^5 + 4/3*x^2*z - 16*z^2/x").to_string() ==
        "(x^6 + 60*x^3*z - 720*z^2)/(45*x)");
  for (const char* s : {"-x/(3*z)", "(x^6 + 60*x^3*z - 720*z^2)/(45*x)", "l_xz*y - 1/2", "-7"}) {
    auto e = P(s);
    CHECK(P(e.to_string().c_str()).identical(e));
  }
}

TEST_CASE("canonical denominator has a positive leading coefficient") {
  auto e = P("x/(1 - y)");
  CHECK(e.den().leading().coeff > 0);
  CHECK(e.to_string() == "-x/(y - 1)");
}

#include <doctest.h>

#include <vector>

#include "flatlab/error.hpp"
#include "support/generators.hpp"

using namespace flatlab;
using namespace flatlab::expr;
using flatlab::testing::test_vars;

namespace {

RationalExpr P(const char* s) { return parse(s, test_vars()); }

// Schoolbook product of dense univariate coefficient lists (index = power).
std::vector<long> schoolbook(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::string dense_to_text(const std::vector<long>& c, const char* var) {
  std::string s = "0";
  for (std::size_t k = 0; k < c.size(); ++k)
    s += " + (" + std::to_string(c[k]) + ")*" + var + "^" + std::to_string(k);
  return s;
}

}  // namespace

TEST_CASE("field arithmetic examples") {
  CHECK(is_zero(P("x") + P("-x")));
  CHECK((P("1/x") * P("x")).identical(RationalExpr(1L)));
  SUBCASE("quotient of a difference of squares") {
    // (x + 1)(x - 1) expanded independently of the polynomial kernel.
    auto expanded = schoolbook({1, 1}, {-1, 1});
    CHECK(expanded == std::vector<long>{-1, 0, 1});
    auto q = P(dense_to_text(expanded, "x").c_str()) / P("x - 1");
    CHECK(q.identical(P("x + 1")));
    CHECK(q.den().is_one());
  }
  CHECK_THROWS_AS(P("x") / P("y - y"), DivisionByZero);
}

TEST_CASE("results stay canonical") {
  auto r = P("1/(x + y)") + P("1/(x - y)");
  CHECK(r.to_string() == "2*x/(x^2 - y^2)");
  auto m = P("(x^2 - y^2)/(x*z)") * P("z^2/(x + y)");
  CHECK(m.to_string() == "(x*z - y*z)/x");
  CHECK(P("(x + y)/(x*z)") - P("y/(x*z)") == P("1/z"));
  CHECK((P("(x + y)/(x*z)") - P("y/(x*z)")).identical(P("1/z")));
  CHECK(P("2/(4*x)").to_string() == "1/(2*x)");
  CHECK(P("(x/3)^3").to_string() == "x^3/27");
  CHECK(P("x").pow(-2).identical(P("1/x^2")));
}

TEST_CASE("constants carry no variable set until combined") {
  RationalExpr half(BigRational(1, 2));
  CHECK(half.vars() == nullptr);
  auto e = half * P("x");
  CHECK(e.vars() == test_vars());
  CHECK(e.to_string() == "x/2");
  CHECK(half.is_constant());
  CHECK(half.constant_value() == BigRational(1, 2));
}

TEST_CASE("mixing variable sets is rejected") {
  auto other = VarSet::Builder().symbols({"x"}).build();
  auto a = parse("x", other);
  CHECK_THROWS_AS(a + P("x"), Error);
}

TEST_CASE("equality survives an exhausted gcd cap") {
  auto capped = VarSet::Builder().symbols({"x", "y"}).gcd_degree_cap(0).build();
  auto a = parse("(x^2 - y^2)/(x + y)", capped);
  auto b = parse("x - y", capped);
  CHECK(a == b);
  CHECK(is_zero(a - b));
}

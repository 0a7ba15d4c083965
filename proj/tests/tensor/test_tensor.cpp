#include <doctest.h>

#include "flatlab/error.hpp"
#include "flatlab/tensor/report.hpp"
#include "support/generators.hpp"

using namespace flatlab;
using namespace flatlab::expr;
using namespace flatlab::tensor;
using flatlab::testing::test_vars;

namespace {

RationalExpr P(const char* s) { return parse(s, test_vars()); }

Metric diag(const std::vector<std::string>& coords, const std::vector<const char*>& entries) {
  SymbolicMatrix g(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) g(i, i) = P(entries[i]);
  return Metric(Chart(test_vars(), coords), g);
}

// The 3D metric written out entry by entry, independent of the metrics module.
Metric hand_metric3d(const char* l) {
  SymbolicMatrix g(3);
  auto L = P(l);
  auto y = P("y");
  auto lx = diff(L, "x");
  g(0, 0) = y * y;
  g(0, 2) = g(2, 0) = y * y * L - RationalExpr(BigRational(1, 2));
  g(1, 2) = g(2, 1) = RationalExpr(1L);
  g(2, 2) = y * y * L * L - RationalExpr(2L) * y * lx + L;
  return Metric(Chart(test_vars(), {"x", "y", "z"}), g);
}

bool all_zero(const std::vector<RationalExpr>& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("chart validation") {
  CHECK_THROWS_AS(Chart(test_vars(), std::vector<std::string>{}), DimensionMismatch);
  CHECK_THROWS_AS(Chart(test_vars(), {"x", "x"}), Error);
  CHECK_THROWS_AS(Chart(test_vars(), {"x", "l"}), Error);
  CHECK_THROWS_AS(Chart(test_vars(), {"x", "q"}), UnknownVariable);
  Chart c(test_vars(), {"x", "y", "z"});
  CHECK(c.dim() == 3);
  CHECK(c.index_of("z") == 2u);
  CHECK_FALSE(c.index_of("u").has_value());
}

TEST_CASE("metric must be symmetric") {
  SymbolicMatrix g = SymbolicMatrix::identity(2);
  g(0, 1) = P("x");
  CHECK_THROWS_AS(Metric(Chart(test_vars(), {"x", "y"}), g), Error);
}

TEST_CASE("inverse_metric examples") {
  auto id = diag({"x", "y"}, {"1", "1"});
  CHECK(inverse_metric(id) == SymbolicMatrix::identity(2));

  auto inv = inverse_metric(diag({"y", "x"}, {"y^2", "1"}));
  CHECK(inv(0, 0).identical(P("1/y^2")));
  CHECK(inv(1, 1).identical(P("1")));
  CHECK(inv(0, 1).is_zero());

  auto g = hand_metric3d("0");
  CHECK(g(0, 2).identical(P("-1/2")));
  CHECK(g.components() * inverse_metric(g) == SymbolicMatrix::identity(3));

  SymbolicMatrix sing(2);
  sing(0, 0) = sing(0, 1) = sing(1, 0) = sing(1, 1) = P("x");
  CHECK_THROWS_AS(inverse_metric(Metric(Chart(test_vars(), {"x", "y"}), sing)), SingularMetric);
}

TEST_CASE("inverse_metric on larger charts") {
  const std::vector<std::string> six{"x", "y", "z", "u", "v", "w"};
  SUBCASE("block diagonal 3+3") {
    auto a = hand_metric3d("l");
    SymbolicMatrix g(6);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) g(i, j) = a(i, j);
    g(3, 4) = g(4, 3) = g(3, 5) = g(5, 3) = g(4, 5) = g(5, 4) = P("1/(w*u + v*w + u*v)^2");
    Metric m(Chart(test_vars(), six), g);
    CHECK(m.components() * inverse_metric(m) == SymbolicMatrix::identity(6));
  }
  SUBCASE("coupled 6x6 takes the elimination path") {
    SymbolicMatrix g(6);
    for (std::size_t i = 0; i < 3; ++i) {
      g(i, i + 3) = g(i + 3, i) = RationalExpr(1L);
      g(i, i) = P("x*u");
    }
    g(0, 1) = g(1, 0) = P("y + v");
    Metric m(Chart(test_vars(), six), g);
    CHECK(m.components() * inverse_metric(m) == SymbolicMatrix::identity(6));
  }
  SUBCASE("singular 5x5") {
    SymbolicMatrix g(5);
    for (std::size_t i = 0; i + 1 < 5; ++i) g(i, i + 1) = g(i + 1, i) = P("x");
    for (std::size_t j = 0; j < 5; ++j) g(4, j) = g(j, 4) = RationalExpr(0L);
    CHECK_THROWS_AS(inverse_metric(Metric(Chart(test_vars(), {"x", "y", "z", "u", "v"}), g)),
                    SingularMetric);
  }
}

TEST_CASE("christoffel of a Euclidean metric vanishes") {
  auto c = christoffel(diag({"x", "y", "z"}, {"1", "1", "1"}));
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(c(k, i, j).is_zero());
}

TEST_CASE("polar plane is flat") {
  // ds^2 = dr^2 + r^2 dth^2 with r = x, th = y.
  auto m = diag({"x", "y"}, {"1", "x^2"});
  auto c = christoffel(m);
  CHECK(c(0, 1, 1).identical(P("-x")));
  CHECK(c(1, 0, 1).identical(P("1/x")));
  auto rep = is_flat(m);
  CHECK(rep.flat);
  CHECK(rep.ricci_flat);
  CHECK_FALSE(rep.witness.has_value());
}

TEST_CASE("hyperbolic plane has constant curvature -1") {
  // g = (dx^2 + dy^2)/y^2. By hand: G^x_xy = -1/y, G^y_xx = 1/y, G^y_yy = -1/y, so
  // R^x_xyy = -d_y G^x_xy + G^x_xy G^y_yy - G^x_yx G^x_xy = -1/y^2.
  auto m = diag({"x", "y"}, {"1/y^2", "1/y^2"});
  auto c = christoffel(m);
  CHECK(c(0, 0, 1).identical(P("-1/y")));
  CHECK(c(1, 0, 0).identical(P("1/y")));
  CHECK(c(1, 1, 1).identical(P("-1/y")));
  auto r = riemann_from_connection(c);
  CHECK(r(0, 0, 1, 1).identical(P("-1/y^2")));
  CHECK(r(0, 1, 0, 1).identical(P("1/y^2")));
  // Einstein with Ric = (n - 1) K g = -g.
  auto ric = ricci(r);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(ric.ric(i, j) == -m(i, j));
  auto rep = is_flat(m);
  CHECK_FALSE(rep.flat);
  CHECK_FALSE(rep.ricci_flat);
  REQUIRE(rep.witness.has_value());
  CHECK(*rep.witness == "-1/y^2");
}

TEST_CASE("zero connection gives zero curvature") {
  Connection c(Chart(test_vars(), {"x", "y", "z"}));
  auto r = riemann_from_connection(c);
  CHECK(r.is_zero());
  CHECK(ricci(r).is_zero());
}

TEST_CASE("3D metric: flat exactly on KdV solutions") {
  for (const char* l : {"0", "5", "-x/(3*z)"}) {
    CAPTURE(l);
    auto rep = is_flat(hand_metric3d(l));
    CHECK(rep.flat);
    CHECK(rep.ricci_flat);
  }
  auto rep = is_flat(hand_metric3d("x"));
  CHECK_FALSE(rep.flat);
  CHECK(rep.witness.has_value());
  CHECK(rep.to_json()["flat"] == false);
  CHECK(rep.to_json()["nonzero_riemann_indices"].size() == rep.nonzero_riemann_indices.size());
}

TEST_CASE("curvature identities on a symbolic metric") {
  auto m = hand_metric3d("l");
  auto c = christoffel(m);
  CHECK(c.is_symmetric());
  CHECK(all_zero(compatibility_defect(m, c)));
  auto r = riemann_from_connection(c);
  const std::size_t n = 3;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          CHECK(is_zero(r(l, i, j, k) + r(l, j, i, k)));
          CHECK(is_zero(r(l, i, j, k) + r(l, j, k, i) + r(l, k, i, j)));
        }
  // Levi-Civita Ricci is symmetric.
  auto ric = ricci(r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) CHECK(ric.ric(i, j) == ric.ric(j, i));
}

TEST_CASE("property: random metrics satisfy compatibility and Bianchi") {
  flatlab::testing::ExprGen gen(test_vars(), {"x", "y"}, 7);
  int cases = 0;
  for (int t = 0; t < 25; ++t) {
    SymbolicMatrix g(2);
    g(0, 0) = RationalExpr::fraction(test_vars(), gen.nonzero_polynomial(2, 2), Polynomial(1L));
    g(1, 1) = RationalExpr::fraction(test_vars(), gen.nonzero_polynomial(2, 2), Polynomial(1L));
    g(0, 1) = g(1, 0) = RationalExpr::fraction(test_vars(), gen.polynomial(2, 1), Polynomial(1L));
    Metric m(Chart(test_vars(), {"x", "y"}), g);
    if (determinant(g).is_zero()) continue;
    ++cases;
    auto c = christoffel(m);
    REQUIRE(all_zero(compatibility_defect(m, c)));
    auto r = riemann_from_connection(c);
    for (std::size_t l = 0; l < 2; ++l)
      for (std::size_t k = 0; k < 2; ++k)
        REQUIRE(is_zero(r(l, 0, 1, k) + r(l, 1, k, 0) + r(l, k, 0, 1)));
  }
  CHECK(cases > 15);
}

TEST_CASE("block-diagonal metrics have no cross-block components") {
  auto a = hand_metric3d("l");
  SymbolicMatrix g(6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g(i, j) = a(i, j);
  g(3, 3) = P("v^2");
  g(3, 5) = g(5, 3) = P("v^2*u - 1/2");
  g(4, 5) = g(5, 4) = RationalExpr(1L);
  g(5, 5) = P("v^2*u^2 + u");
  Metric m(Chart(test_vars(), {"x", "y", "z", "u", "v", "w"}), g);
  auto r = riemann_from_connection(christoffel(m));
  auto block = [](std::size_t i) { return i / 3; };
  for (std::size_t l = 0; l < 6; ++l)
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t k = 0; k < 6; ++k) {
          bool same = block(l) == block(i) && block(i) == block(j) && block(j) == block(k);
          if (!same) CHECK(r(l, i, j, k).is_zero());
        }
}

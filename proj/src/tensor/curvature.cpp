#include "flatlab/tensor/curvature.hpp"

#include "flatlab/error.hpp"

namespace flatlab::tensor {

using expr::diff;

Connection::Connection(Chart chart)
    : chart_(std::move(chart)), g_(chart_.dim() * chart_.dim() * chart_.dim()) {}

bool Connection::is_symmetric() const {
  for (std::size_t k = 0; k < dim(); ++k)
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j)
        if (!((*this)(k, i, j) == (*this)(k, j, i))) return false;
  return true;
}

Riemann::Riemann(Chart chart) : chart_(std::move(chart)) {
  const std::size_t n = chart_.dim();
  r_.resize(n * n * n * n);
}

bool Riemann::is_zero() const {
  for (const auto& c : r_)
    if (!c.is_zero()) return false;
  return true;
}

bool Ricci::is_zero() const {
  for (std::size_t i = 0; i < ric.size(); ++i)
    for (std::size_t j = 0; j < ric.size(); ++j)
      if (!ric(i, j).is_zero()) return false;
  return true;
}

Connection christoffel(const Metric& m) { return christoffel(m, inverse_metric(m)); }

Connection christoffel(const Metric& m, const SymbolicMatrix& inv) {
  const std::size_t n = m.dim();
  if (inv.size() != n) throw DimensionMismatch("inverse metric size mismatch");
  const Chart& chart = m.chart();

  // dg[a][i][j] = d_a g_ij
  std::vector<RationalExpr> dg(n * n * n);
  auto d = [&](std::size_t a, std::size_t i, std::size_t j) -> RationalExpr& {
    return dg[(a * n + i) * n + j];
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        if (m(i, j).is_constant()) continue;
        d(a, i, j) = diff(m(i, j), chart.coord(a));
        d(a, j, i) = d(a, i, j);
      }

  // First kind: G_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
  const RationalExpr half(expr::BigRational(1, 2));
  std::vector<RationalExpr> first(n * n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        RationalExpr s = d(i, j, l) + d(j, i, l) - d(l, i, j);
        if (!s.is_zero()) s = half * s;
        first[(l * n + i) * n + j] = s;
      }

  Connection c(chart);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        RationalExpr s;
        for (std::size_t l = 0; l < n; ++l) {
          const RationalExpr& f = first[(l * n + i) * n + j];
          if (f.is_zero() || inv(k, l).is_zero()) continue;
          s += inv(k, l) * f;
        }
        c(k, i, j) = s;
        c(k, j, i) = s;
      }
  return c;
}

Riemann riemann_from_connection(const Connection& c) {
  const std::size_t n = c.dim();
  const Chart& chart = c.chart();
  Riemann r(chart);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          RationalExpr s;
          if (!c(l, j, k).is_constant()) s += diff(c(l, j, k), chart.coord(i));
          if (!c(l, i, k).is_constant()) s -= diff(c(l, i, k), chart.coord(j));
          for (std::size_t m = 0; m < n; ++m) {
            if (!c(l, i, m).is_zero() && !c(m, j, k).is_zero()) s += c(l, i, m) * c(m, j, k);
            if (!c(l, j, m).is_zero() && !c(m, i, k).is_zero()) s -= c(l, j, m) * c(m, i, k);
          }
          r(l, j, i, k) = -s;
          r(l, i, j, k) = std::move(s);
        }
  return r;
}

Ricci ricci(const Riemann& r) {
  const std::size_t n = r.dim();
  Ricci out{r.chart(), SymbolicMatrix(n)};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      RationalExpr s;
      for (std::size_t l = 0; l < n; ++l)
        if (!r(l, l, j, k).is_zero()) s += r(l, l, j, k);
      out.ric(j, k) = s;
    }
  return out;
}

std::vector<RationalExpr> compatibility_defect(const Metric& m, const Connection& c) {
  const std::size_t n = m.dim();
  if (c.dim() != n) throw DimensionMismatch("connection and metric dimensions differ");
  std::vector<RationalExpr> out(n * n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        RationalExpr s = diff(m(i, j), m.chart().coord(k));
        for (std::size_t a = 0; a < n; ++a) {
          if (!c(a, k, i).is_zero() && !m(a, j).is_zero()) s -= c(a, k, i) * m(a, j);
          if (!c(a, k, j).is_zero() && !m(i, a).is_zero()) s -= c(a, k, j) * m(i, a);
        }
        out[(k * n + i) * n + j] = std::move(s);
      }
  return out;
}

}  // namespace flatlab::tensor

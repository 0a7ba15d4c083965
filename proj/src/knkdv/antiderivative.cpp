#include "flatlab/knkdv/antiderivative.hpp"

#include <vector>

#include "flatlab/error.hpp"
#include "flatlab/expr/poly_gcd.hpp"

namespace flatlab::knkdv {

using expr::BigRational;
using expr::Polynomial;
using expr::RationalExpr;
using expr::VarId;
using expr::VarSetPtr;

namespace {

// Univariate polynomial in v over the field of rational functions in the
// remaining variables; index = power of v.
using UPoly = std::vector<RationalExpr>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly to_upoly(const Polynomial& p, VarId v, const VarSetPtr& vars) {
  UPoly out;
  for (auto& c : p.coefficients_in(v)) out.push_back(RationalExpr::fraction(vars, c, Polynomial(1L)));
  trim(out);
  return out;
}

// a = q*b + r with deg r < deg b.
void divmod(UPoly a, const UPoly& b, UPoly& q, UPoly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, RationalExpr());
  const RationalExpr& lc = b.back();
  while (a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    RationalExpr f = a.back() / lc;
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!b[i].is_zero()) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  r = std::move(a);
}

RationalExpr to_expr(const UPoly& p, VarId v, const VarSetPtr& vars) {
  RationalExpr out, power(1L);
  RationalExpr x = RationalExpr::variable(vars, v);
  for (const auto& c : p) {
    if (!c.is_zero()) out += c * power;
    power *= x;
  }
  return out;
}

// Solves the square system m * sol = rhs by Gauss-Jordan elimination.
std::vector<RationalExpr> solve(std::vector<std::vector<RationalExpr>> m, std::vector<RationalExpr> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r)
      if (!m[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == n) throw IntegrationError("singular reduction system");
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    RationalExpr p = m[col][col];
    for (std::size_t j = col; j < n; ++j)
      if (!m[col][j].is_zero()) m[col][j] /= p;
    if (!rhs[col].is_zero()) rhs[col] /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      RationalExpr f = m[r][col];
      for (std::size_t j = col; j < n; ++j)
        if (!m[col][j].is_zero()) m[r][j] -= f * m[col][j];
      if (!rhs[col].is_zero()) rhs[r] -= f * rhs[col];
    }
  }
  return rhs;
}

}  // namespace

RationalExpr antiderivative(const RationalExpr& f, VarId v) {
  if (f.is_zero()) return f;
  VarSetPtr vars = f.vars();
  if (!vars) {
    // A pure number c integrates to c*v only once v has a variable set.
    throw IntegrationError("cannot integrate a bare constant without a variable set");
  }
  if (vars->is_jet(v)) throw IntegrationError("cannot integrate with respect to a function jet");
  const Polynomial& num = f.num();
  const Polynomial& den = f.den();
  for (VarId j = 0; j < vars->size(); ++j)
    if (vars->is_jet(j) && vars->depends_on(j, v) && (num.depends_on(j) || den.depends_on(j)))
      throw IntegrationError("integrand involves an unknown function of the integration variable");

  RationalExpr x = RationalExpr::variable(vars, v);

  // Polynomial part by long division in v.
  UPoly n = to_upoly(num, v, vars), d = to_upoly(den, v, vars), q, r;
  divmod(n, d, q, r);
  RationalExpr result;
  {
    RationalExpr power = x;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (!q[i].is_zero())
        result += q[i] * RationalExpr(BigRational(1, static_cast<long>(i + 1))) * power;
      power *= x;
    }
  }
  if (r.empty()) return result;

  // Proper part r/den: integral = A/D1 + integral B/D2 with D1 = gcd(D, D'),
  // D2 = D/D1, deg A < deg D1, deg B < deg D2, from
  //   r = A' D2 - A (D2 D1' / D1) + B D1.
  const Polynomial& D = den;
  Polynomial D1 = expr::gcd(D, D.partial(v));
  if (D1.degree(v) == 0) D1 = Polynomial(1L);
  auto D2o = Polynomial::divide_exact(D, D1);
  if (!D2o) throw IntegrationError("squarefree split failed");
  Polynomial D2 = *D2o;
  auto To = Polynomial::divide_exact(D2 * D1.partial(v), D1);
  if (!To) throw IntegrationError("squarefree split failed");
  const Polynomial T = *To;

  const unsigned p = D1.degree(v), s = D2.degree(v);
  const std::size_t m = p + s;
  Polynomial xv = Polynomial::variable(v);
  std::vector<UPoly> columns;
  for (unsigned i = 0; i < p; ++i) {
    Polynomial xi = xv.pow(i);
    columns.push_back(to_upoly(xi.partial(v) * D2 - xi * T, v, vars));
  }
  for (unsigned j = 0; j < s; ++j) columns.push_back(to_upoly(xv.pow(j) * D1, v, vars));

  std::vector<std::vector<RationalExpr>> sys(m, std::vector<RationalExpr>(m));
  std::vector<RationalExpr> rhs(m);
  for (std::size_t c = 0; c < m; ++c) {
    if (columns[c].size() > m) throw IntegrationError("reduction system has unexpected degree");
    for (std::size_t row = 0; row < columns[c].size(); ++row) sys[row][c] = columns[c][row];
  }
  for (std::size_t row = 0; row < r.size(); ++row) rhs[row] = r[row];
  std::vector<RationalExpr> sol = solve(std::move(sys), std::move(rhs));

  for (unsigned j = 0; j < s; ++j)
    if (!sol[p + j].is_zero())
      throw IntegrationError("antiderivative has a logarithmic part; no rational antiderivative");

  UPoly a(sol.begin(), sol.begin() + p);
  result += to_expr(a, v, vars) / RationalExpr::fraction(vars, D1, Polynomial(1L));
  return result;
}

}  // namespace flatlab::knkdv

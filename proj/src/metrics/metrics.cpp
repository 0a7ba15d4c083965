#include "flatlab/metrics/metrics.hpp"

#include "flatlab/error.hpp"

namespace flatlab::metrics {

using expr::BigRational;
using expr::VarId;
using tensor::Chart;
using tensor::SymbolicMatrix;

VarSetPtr standard_vars() {
  static const VarSetPtr vars = expr::VarSet::Builder()
                                    .symbols({"x", "y", "z", "u", "v", "w", "eps", "c"})
                                    .function("l", {"x", "z"}, 3)
                                    .function("L", {"u", "w"}, 3)
                                    .gcd_degree_cap(expr::gcd_degree_cap_from_env().value_or(
                                        expr::kDefaultGcdDegreeCap))
                                    .build();
  return vars;
}

namespace {

// Symbols that are not coordinates of the metric being built act as
// constant parameters, so only the forbidden coordinates are off limits.
// Unknown functions must be functions of exactly the `args` coordinates.
void require_scope(const RationalExpr& e, const std::vector<std::string>& forbidden,
                   const std::vector<std::string>& args, const char* what) {
  if (!e.vars()) return;
  const auto& vars = *e.vars();
  std::uint32_t bad = 0, ok = 0;
  for (const auto& f : forbidden) bad |= 1u << vars.id(f);
  for (const auto& a : args) ok |= 1u << vars.id(a);
  const std::uint32_t support = e.support();
  for (VarId v = 0; v < vars.size(); ++v) {
    if (!((support >> v) & 1u)) continue;
    bool out = (bad >> v) & 1u;
    if (vars.is_jet(v))
      for (VarId arg : vars[v].args) out = out || !((ok >> arg) & 1u);
    if (out) throw ScopeError(std::string(what) + " depends on '" + vars.name(v) + "', outside its coordinates");
  }
}

VarSetPtr pick_vars(std::initializer_list<const RationalExpr*> es) {
  for (auto* e : es)
    if (e->vars()) return e->vars();
  return standard_vars();
}

RationalExpr diff_or_zero(const RationalExpr& e, const std::string& v) {
  return e.vars() ? expr::diff(e, v) : RationalExpr(0L);
}

Metric kdv_block_on(const VarSetPtr& vars, const RationalExpr& L, const RationalExpr& M,
                    const Names3& coords) {
  require_scope(L, {coords[1]}, {coords[0], coords[2]}, "block function");
  require_scope(M, {coords[1]}, {coords[0], coords[2]}, "block function");
  RationalExpr b = RationalExpr::variable(vars, coords[1]);
  RationalExpr b2 = b * b;
  SymbolicMatrix g(3);
  g(0, 0) = b2;
  g(0, 2) = g(2, 0) = b2 * L + M;
  g(1, 2) = g(2, 1) = RationalExpr(1L);
  g(2, 2) = b2 * L * L - RationalExpr(2L) * b * diff_or_zero(L, coords[0]) + RationalExpr(2L) * L +
            RationalExpr(2L) * L * M;
  return Metric(Chart(vars, {coords[0], coords[1], coords[2]}), std::move(g));
}

}  // namespace

Metric kdv_block(const RationalExpr& L, const RationalExpr& M, const Names3& coords) {
  return kdv_block_on(pick_vars({&L, &M}), L, M, coords);
}

Metric metric3d(const RationalExpr& l, const Names3& coords) {
  return kdv_block(l, RationalExpr(BigRational(-1, 2)), coords);
}

KNInput kn_input(const RationalExpr& f2) {
  require_scope(f2, {"y", "u", "v", "w"}, {"x", "z"}, "F2");
  KNInput in;
  in.f2 = f2;
  in.l_thm1 = knkdv::l_from_f2(f2, knkdv::LForm::thm1);
  in.l_thm3 = knkdv::l_from_f2(f2, knkdv::LForm::thm3);
  in.f1 = knkdv::f1_from_f2(f2);
  in.b = knkdv::b_from_f2(f2);
  in.kn_solution = knkdv::kn_residual(f2).is_zero();
  in.l_forms_agree = in.l_thm1 == in.l_thm3;
  return in;
}

namespace {

Metric direct_sum(const Metric& a, const Metric& b) {
  std::vector<VarId> coords = a.chart().coords();
  for (VarId v : b.chart().coords()) coords.push_back(v);
  const std::size_t n = a.dim(), m = b.dim();
  SymbolicMatrix g(n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b(i, j);
  return Metric(Chart::from_ids(a.chart().vars(), coords), std::move(g));
}

}  // namespace

Metric metric6d_kn(const RationalExpr& f2) {
  KNInput in = kn_input(f2);
  if (in.kn_solution && !in.l_forms_agree)
    throw Error("the two closed forms of l disagree on a KN solution");
  Metric base = metric3d(in.l_thm3);
  const VarSetPtr& vars = base.chart().vars();
  auto u = RationalExpr::variable(vars, "u"), v = RationalExpr::variable(vars, "v"),
       w = RationalExpr::variable(vars, "w");
  RationalExpr s = w * u + v * w + u * v;
  RationalExpr off = in.b / (s * s);
  SymbolicMatrix fiber(3);
  fiber(0, 1) = fiber(1, 0) = fiber(0, 2) = fiber(2, 0) = fiber(1, 2) = fiber(2, 1) = off;
  std::vector<VarId> coords = base.chart().coords();
  for (const char* n : {"u", "v", "w"}) coords.push_back(vars->id(n));
  SymbolicMatrix g(6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      g(i, j) = base(i, j);
      g(3 + i, 3 + j) = fiber(i, j);
    }
  return Metric(Chart::from_ids(vars, coords), std::move(g));
}

Metric metric6d_product(const RationalExpr& f2, const RationalExpr& L, const RationalExpr& M) {
  require_scope(f2, {"y", "u", "v", "w"}, {"x", "z"}, "F2");
  require_scope(L, {"x", "y", "z"}, {"u", "w"}, "L");
  require_scope(M, {"x", "y", "z"}, {"u", "w"}, "M");
  Metric first = metric3d(knkdv::l_from_f2(f2, knkdv::LForm::thm3));
  Metric second = kdv_block_on(first.chart().vars(), L, M, {"u", "v", "w"});
  return direct_sum(first, second);
}

Metric riemann_extension(const Connection& c, const std::vector<std::string>& fiber) {
  const std::size_t n = c.dim();
  if (fiber.size() != n)
    throw DimensionMismatch("fiber has " + std::to_string(fiber.size()) + " variables, base has " +
                            std::to_string(n));
  const VarSetPtr& vars = c.chart().vars();
  std::vector<VarId> coords = c.chart().coords();
  std::vector<RationalExpr> xi;
  for (const auto& f : fiber) {
    if (c.chart().index_of(f)) throw ScopeError("fiber variable '" + f + "' is a base coordinate");
    coords.push_back(vars->id(f));
    xi.push_back(RationalExpr::variable(vars, f));
  }
  SymbolicMatrix g(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      RationalExpr s;
      for (std::size_t k = 0; k < n; ++k)
        if (!c(k, i, j).is_zero()) s += c(k, i, j) * xi[k];
      if (!s.is_zero()) s = RationalExpr(-2L) * s;
      g(i, j) = g(j, i) = s;
    }
    g(i, n + i) = g(n + i, i) = RationalExpr(1L);
  }
  return Metric(Chart::from_ids(vars, coords), std::move(g));
}

Metric eq8_literal(const Connection& c, const Names3& fiber) {
  if (c.dim() != 3) throw DimensionMismatch("the printed 6D metric extends a 3D connection");
  const VarSetPtr& vars = c.chart().vars();
  auto u = RationalExpr::variable(vars, fiber[0]), v = RationalExpr::variable(vars, fiber[1]),
       w = RationalExpr::variable(vars, fiber[2]);
  // Pi^k_ij with the 1-based labels used in print.
  auto P = [&](int k, int i, int j) -> const RationalExpr& { return c(k - 1, i - 1, j - 1); };
  const RationalExpr m2(-2L);
  SymbolicMatrix g(6);
  g(0, 0) = m2 * (P(1, 1, 1) * u + P(3, 1, 1) * w + P(2, 1, 1) * v);
  g(2, 2) = m2 * (P(1, 3, 3) * u + P(3, 3, 3) * w + P(2, 3, 3) * v);
  g(0, 2) = g(2, 0) = m2 * (P(3, 1, 3) * w + P(1, 1, 3) * u + P(3, 1, 2) * v);
  g(0, 1) = g(1, 0) = m2 * (P(1, 1, 2) * u + P(2, 1, 2) * v);
  g(1, 2) = g(2, 1) = m2 * (P(2, 2, 3) * v + P(1, 2, 3) * u);
  for (std::size_t i = 0; i < 3; ++i) g(i, 3 + i) = g(3 + i, i) = RationalExpr(1L);
  std::vector<VarId> coords = c.chart().coords();
  for (const auto& f : fiber) coords.push_back(vars->id(f));
  return Metric(Chart::from_ids(vars, coords), std::move(g));
}

Metric ricci_flat_deformation(const Metric& m, const RationalExpr& eps, const std::string& y) {
  auto iy = m.chart().index_of(y);
  if (!iy) throw ScopeError("metric has no coordinate named '" + y + "'");
  for (VarId v : m.chart().coords())
    if (eps.depends_on(v)) throw ScopeError("eps must not depend on the coordinates");
  return m.with(*iy, *iy, m(*iy, *iy) + eps);
}

std::vector<std::array<std::size_t, 2>> differing_entries(const Metric& a, const Metric& b) {
  if (!(a.chart() == b.chart())) throw DimensionMismatch("metrics live on different charts");
  std::vector<std::array<std::size_t, 2>> out;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j)
      if (!(a(i, j) == b(i, j))) out.push_back({i, j});
  return out;
}

}  // namespace flatlab::metrics

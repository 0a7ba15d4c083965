#include "flatlab/numeric/fd_curvature.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "flatlab/expr/parser.hpp"
#include "flatlab/metrics/metrics.hpp"

namespace flatlab::numeric {

using expr::RationalExpr;

SampledMetric sample(const tensor::Metric& m, const std::map<std::string, double>& params) {
  const std::size_t n = m.dim();
  const auto& chart = m.chart();
  std::vector<RationalExpr> comps;
  comps.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) comps.push_back(m(i, j));
  expr::Point base;
  auto vars = chart.vars();
  for (const auto& [name, value] : params) base[vars->id(name)] = value;
  std::vector<expr::VarId> coords = chart.coords();
  auto eval = [comps, base, coords](const std::vector<double>& p) {
    if (p.size() != coords.size()) throw DimensionMismatch("point does not match metric dimension");
    expr::Point at = base;
    for (std::size_t k = 0; k < coords.size(); ++k) at[coords[k]] = p[k];
    std::vector<double> out;
    out.reserve(comps.size());
    for (const auto& c : comps) out.push_back(c.is_zero() ? 0.0 : expr::eval_numeric(c, at));
    return out;
  };
  return SampledMetric{n, eval, "sampled"};
}

SampledMetric sampled_metric3d(const ScalarField2& l) {
  auto vars = metrics::standard_vars();
  auto sym = metrics::metric3d(expr::parse("l", vars));
  const expr::VarId jl = vars->id("l"), jlx = vars->id("l_x");
  std::vector<RationalExpr> comps;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) comps.push_back(sym(i, j));
  const expr::VarId x = vars->id("x"), y = vars->id("y"), z = vars->id("z");
  auto eval = [comps, l, jl, jlx, x, y, z](const std::vector<double>& p) {
    if (p.size() != 3) throw DimensionMismatch("metric3d takes (x, y, z) points");
    expr::Point at{{x, p[0]}, {y, p[1]}, {z, p[2]}, {jl, l(p[0], p[2])}, {jlx, l.dx(p[0], p[2])}};
    std::vector<double> out;
    out.reserve(9);
    for (const auto& c : comps) out.push_back(c.is_zero() ? 0.0 : expr::eval_numeric(c, at));
    return out;
  };
  return SampledMetric{3, eval, "metric3d(" + l.label() + ")"};
}

namespace {

using Mat = Eigen::MatrixXd;

// gamma[k][i][j] flattened as (k * n + i) * n + j.
using Gammas = std::vector<double>;

Mat metric_at(const SampledMetric& m, const std::vector<double>& p) {
  std::vector<double> raw = m.eval(p);
  const std::size_t n = m.dim;
  if (raw.size() != n * n) throw DimensionMismatch("sampled metric returned the wrong size");
  Mat g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double a = raw[i * n + j], b = raw[j * n + i];
      if (!std::isfinite(a)) throw SingularMetric("metric component is not finite");
      if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}))
        throw DimensionMismatch(fmt::format("sampled metric is not symmetric at ({}, {})", i, j));
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a;
    }
  return g;
}

Gammas christoffel_at(const SampledMetric& m, const std::vector<double>& p, double h, double max_condition) {
  const std::size_t n = m.dim;
  Mat g = metric_at(m, p);
  Eigen::JacobiSVD<Mat> svd(g);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1), smax = s(0);
  if (!(smin > 0) || smax / smin > max_condition)
    throw SingularMetric(fmt::format("metric ill-conditioned near the probe (condition {:.3g})",
                                     smin > 0 ? smax / smin : INFINITY));
  Mat ginv = g.inverse();
  // dg[a](i, j) = d_a g_ij
  std::vector<Mat> dg(n);
  std::vector<double> q = p;
  for (std::size_t a = 0; a < n; ++a) {
    q[a] = p[a] + h;
    Mat gp = metric_at(m, q);
    q[a] = p[a] - h;
    Mat gm = metric_at(m, q);
    q[a] = p[a];
    dg[a] = (gp - gm) / (2 * h);
  }
  auto I = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
  Gammas out(n * n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t r = 0; r < n; ++r)
          acc += ginv(I(k), I(r)) * (dg[i](I(r), I(j)) + dg[j](I(r), I(i)) - dg[r](I(i), I(j)));
        out[(k * n + i) * n + j] = out[(k * n + j) * n + i] = 0.5 * acc;
      }
  return out;
}

}  // namespace

ResidualReport fd_curvature(const SampledMetric& m, const std::vector<double>& point, double h,
                            double max_condition) {
  const std::size_t n = m.dim;
  if (point.size() != n) throw DimensionMismatch("point does not match metric dimension");
  if (!(h > 0) || !std::isfinite(h)) throw Error("step size must be positive");
  const Gammas g0 = christoffel_at(m, point, h, max_condition);
  // dG[a] = d_a Gamma at the point
  std::vector<Gammas> dG(n);
  std::vector<double> q = point;
  for (std::size_t a = 0; a < n; ++a) {
    q[a] = point[a] + h;
    Gammas gp = christoffel_at(m, q, h, max_condition);
    q[a] = point[a] - h;
    Gammas gm = christoffel_at(m, q, h, max_condition);
    q[a] = point[a];
    dG[a].resize(gp.size());
    for (std::size_t t = 0; t < gp.size(); ++t) dG[a][t] = (gp[t] - gm[t]) / (2 * h);
  }
  auto G = [&](std::size_t k, std::size_t i, std::size_t j) { return g0[(k * n + i) * n + j]; };
  auto dGa = [&](std::size_t a, std::size_t k, std::size_t i, std::size_t j) {
    return dG[a][(k * n + i) * n + j];
  };
  ResidualReport rep{h, 0.0, 0.0};
  std::vector<double> ric(n * n, 0.0);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          double r = dGa(i, l, j, k) - dGa(j, l, i, k);
          for (std::size_t s = 0; s < n; ++s) r += G(l, i, s) * G(s, j, k) - G(l, j, s) * G(s, i, k);
          rep.max_riemann = std::max(rep.max_riemann, std::abs(r));
          if (l == i) ric[j * n + k] += r;
        }
  for (double r : ric) rep.max_ricci = std::max(rep.max_ricci, std::abs(r));
  return rep;
}

ConvergenceStudy convergence_study(const SampledMetric& m, const std::vector<double>& point,
                                   const std::vector<double>& h_ladder) {
  ConvergenceStudy st{point, {}, std::nullopt, false};
  std::vector<std::pair<double, double>> samples;
  for (double h : h_ladder) {
    st.rows.push_back(fd_curvature(m, point, h));
    samples.emplace_back(h, st.rows.back().max_riemann);
  }
  try {
    st.order = convergence_order(samples);
  } catch (const ResidualSaturated&) {
    st.saturated = true;
  }
  return st;
}

}  // namespace flatlab::numeric

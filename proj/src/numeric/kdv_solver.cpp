#include "flatlab/numeric/kdv_solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "flatlab/error.hpp"

namespace flatlab::numeric {

double KdVResult::mass_drift() const {
  double scale = std::abs(mass_initial);
  double l1 = 0.0;
  for (double v : slices.front()) l1 += std::abs(v);
  scale = std::max(scale, l1 * grid.dx());
  if (scale == 0.0) return std::abs(mass_final - mass_initial);
  return std::abs(mass_final - mass_initial) / scale;
}

ScalarField2 KdVResult::field() const { return ScalarField2::sampled("kdv solution", grid, z, slices); }

double max_stable_dz(const Grid1D& grid, double max_abs, double kappa) {
  const double dx = grid.dx();
  return kappa * dx * dx * dx / (4.0 + 3.0 * dx * dx * max_abs);
}

double mass(const std::vector<double>& values, const Grid1D& grid) {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.dx();
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) return x;
    m = std::max(m, std::abs(x));
  }
  return m;
}

// Right-hand side 3 l l_x - l_xxx with the three-point averaged nonlinearity
// and the five-point dispersion stencil.
void rhs(const std::vector<double>& l, double dx, std::vector<double>& out) {
  const std::size_t n = l.size();
  const double a = 1.0 / (2.0 * dx), b = 1.0 / (2.0 * dx * dx * dx);
  for (std::size_t i = 0; i < n; ++i) {
    const double m2 = l[(i + n - 2) % n], m1 = l[(i + n - 1) % n], p1 = l[(i + 1) % n],
                 p2 = l[(i + 2) % n];
    out[i] = (p1 + l[i] + m1) * (p1 - m1) * a - (p2 - 2.0 * p1 + 2.0 * m1 - m2) * b;
  }
}

}  // namespace

KdVResult solve_kdv(const ScalarField2& initial, double z0, const Grid1D& grid, std::size_t steps,
                    double dz, const KdVOptions& options) {
  if (!(dz > 0) || !std::isfinite(dz)) throw StepSizeError("dz must be positive");
  if (!(options.kappa > 0)) throw StepSizeError("kappa must be positive");
  std::vector<double> cur(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) cur[i] = initial(grid.x(i), z0);
  const double m0 = max_abs(cur);
  if (!std::isfinite(m0)) throw InstabilityError("initial data is not finite");
  const double bound = max_stable_dz(grid, m0, options.kappa);
  if (dz > bound)
    throw StepSizeError(fmt::format("dz = {:.6g} exceeds the step bound {:.6g} (dx = {:.6g}, max|l| = {:.6g})",
                                    dz, bound, grid.dx(), m0));
  const double limit = options.blowup_factor * std::max(m0, 1e-12);

  KdVResult res{grid, {z0}, {cur}, mass(cur, grid), 0.0};
  const double dx = grid.dx();
  std::vector<double> prev = cur, next(grid.n), f(grid.n);
  for (std::size_t s = 1; s <= steps; ++s) {
    rhs(cur, dx, f);
    if (s == 1) {
      for (std::size_t i = 0; i < grid.n; ++i) next[i] = cur[i] + dz * f[i];
    } else {
      for (std::size_t i = 0; i < grid.n; ++i) next[i] = prev[i] + 2.0 * dz * f[i];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
    const double m = max_abs(cur);
    if (!std::isfinite(m) || m > limit)
      throw InstabilityError(fmt::format("solution blew up at step {} (z = {:.6g}, max|l| = {:.6g})", s,
                                         z0 + static_cast<double>(s) * dz, m));
    const bool keep = s == steps || (options.snapshot_every > 0 && s % options.snapshot_every == 0);
    if (keep) {
      res.z.push_back(z0 + static_cast<double>(s) * dz);
      res.slices.push_back(cur);
    }
  }
  res.mass_final = mass(cur, grid);
  return res;
}

void write_csv(std::ostream& out, const Grid1D& grid, const std::vector<double>& values) {
  if (values.size() != grid.n) throw DimensionMismatch("values do not match grid");
  out << "x,value\n";
  for (std::size_t i = 0; i < grid.n; ++i) out << fmt::format("{:.17g},{:.17g}\n", grid.x(i), values[i]);
}

}  // namespace flatlab::numeric

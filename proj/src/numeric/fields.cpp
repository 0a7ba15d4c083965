#include "flatlab/numeric/fields.hpp"

#include <algorithm>
#include <cmath>

#include "flatlab/error.hpp"

namespace flatlab::numeric {

Grid1D::Grid1D(double lo, double hi, std::size_t points) : x_min(lo), x_max(hi), n(points) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(hi > lo))
    throw DegenerateInput("grid needs finite bounds with max > min");
  if (points < 8) throw DegenerateInput("grid needs at least 8 points");
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x(i);
  return out;
}

ScalarField2 ScalarField2::analytic(std::string label, Fn value, Fn dx) {
  if (!value) throw Error("analytic field needs a value function");
  if (!dx) {
    dx = [value](double x, double z) {
      const double h = 1e-3 * std::max(1.0, std::abs(x));
      return (-value(x + 2 * h, z) + 8 * value(x + h, z) - 8 * value(x - h, z) + value(x - 2 * h, z)) /
             (12 * h);
    };
  }
  return ScalarField2(Kind::analytic, std::move(label), std::move(value), std::move(dx));
}

namespace {

struct Samples {
  Grid1D grid;
  std::vector<double> z;
  std::vector<std::vector<double>> slices;

  // Cubic Lagrange weights on nodes i-1..i+2 at fractional offset t in [0, 1).
  template <class F>
  double at_slice(const std::vector<double>& s, double x, F&& combine) const {
    double u = (x - grid.x_min) / grid.dx();
    const double n = static_cast<double>(grid.n);
    u = std::fmod(u, n);
    if (u < 0) u += n;
    // land exactly on a node when rounding left u a hair off an integer
    const double r = std::round(u);
    if (std::abs(u - r) < 1e-9 * std::max(1.0, u)) u = r == n ? 0.0 : r;
    const auto i = static_cast<long>(std::floor(u));
    const double t = u - static_cast<double>(i);
    auto node = [&](long k) {
      long m = (k % static_cast<long>(grid.n) + static_cast<long>(grid.n)) % static_cast<long>(grid.n);
      return s[static_cast<std::size_t>(m)];
    };
    return combine(node(i - 1), node(i), node(i + 1), node(i + 2), t);
  }

  template <class F>
  double eval(double x, double zq, F&& combine) const {
    if (zq < z.front() - 1e-12 || zq > z.back() + 1e-12)
      throw Error("sampled field queried outside its z range");
    auto it = std::upper_bound(z.begin(), z.end(), zq);
    std::size_t hi = static_cast<std::size_t>(it - z.begin());
    if (hi == 0) hi = 1;
    if (hi >= z.size()) hi = z.size() - 1;
    if (z.size() == 1) return at_slice(slices[0], x, combine);
    const std::size_t lo = hi - 1;
    const double w = (zq - z[lo]) / (z[hi] - z[lo]);
    double a = at_slice(slices[lo], x, combine), b = at_slice(slices[hi], x, combine);
    if (w <= 0) return a;
    if (w >= 1) return b;
    return (1 - w) * a + w * b;
  }
};

double cubic_value(double pm, double p0, double p1, double p2, double t) {
  if (t == 0.0) return p0;
  const double wm = -t * (t - 1) * (t - 2) / 6;
  const double w0 = (t + 1) * (t - 1) * (t - 2) / 2;
  const double w1 = -(t + 1) * t * (t - 2) / 2;
  const double w2 = (t + 1) * t * (t - 1) / 6;
  return wm * pm + w0 * p0 + w1 * p1 + w2 * p2;
}

// d/dt of the same interpolant.
double cubic_slope(double pm, double p0, double p1, double p2, double t) {
  const double wm = -(3 * t * t - 6 * t + 2) / 6;
  const double w0 = (3 * t * t - 4 * t - 1) / 2;
  const double w1 = -(3 * t * t - 2 * t - 2) / 2;
  const double w2 = (3 * t * t - 1) / 6;
  return wm * pm + w0 * p0 + w1 * p1 + w2 * p2;
}

}  // namespace

ScalarField2 ScalarField2::sampled(std::string label, const Grid1D& grid, std::vector<double> z,
                                   std::vector<std::vector<double>> slices) {
  if (z.empty() || z.size() != slices.size()) throw DimensionMismatch("one z value per slice required");
  for (std::size_t k = 0; k < slices.size(); ++k) {
    if (slices[k].size() != grid.n) throw DimensionMismatch("slice size does not match grid");
    if (k > 0 && !(z[k] > z[k - 1])) throw Error("slice z values must increase");
  }
  auto data = std::make_shared<const Samples>(Samples{grid, std::move(z), std::move(slices)});
  const double inv_dx = 1.0 / grid.dx();
  Fn value = [data](double x, double zq) { return data->eval(x, zq, cubic_value); };
  Fn dx = [data, inv_dx](double x, double zq) {
    return inv_dx * data->eval(x, zq, cubic_slope);
  };
  return ScalarField2(Kind::grid, std::move(label), std::move(value), std::move(dx));
}

ScalarField2 soliton(double c) {
  if (!(c > 0) || !std::isfinite(c)) throw DegenerateInput("soliton speed must be positive");
  const double k = 0.5 * std::sqrt(c);
  auto value = [c, k](double x, double z) {
    const double s = 1.0 / std::cosh(k * (x - c * z));
    return -c * s * s;
  };
  auto dx = [c, k](double x, double z) {
    const double th = k * (x - c * z);
    const double s = 1.0 / std::cosh(th);
    return 2.0 * c * k * s * s * std::tanh(th);
  };
  return ScalarField2::analytic("soliton(" + std::to_string(c) + ")", value, dx);
}

ScalarField2 constant_field(double value) {
  return ScalarField2::analytic(
      "constant", [value](double, double) { return value; }, [](double, double) { return 0.0; });
}

}  // namespace flatlab::numeric

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace flatlab::numeric {

/// Uniform periodic grid: x_i = x_min + i dx, i < n, dx = (x_max - x_min)/n.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n = 8;

  Grid1D(double lo, double hi, std::size_t points);
  double dx() const noexcept { return (x_max - x_min) / static_cast<double>(n); }
  double x(std::size_t i) const noexcept { return x_min + static_cast<double>(i) * dx(); }
  std::vector<double> nodes() const;
};

/// A function l(x, z) with its x-derivative.
class ScalarField2 {
 public:
  enum class Kind { analytic, grid };
  using Fn = std::function<double(double, double)>;

  /// If dx is empty, the derivative is taken by a fourth-order central
  /// difference of `value`.
  static ScalarField2 analytic(std::string label, Fn value, Fn dx = {});

  /// Periodic cubic interpolation in x of samples on `grid`, one slice per
  /// entry of `z` (ascending), linear in z between slices. Reproduces the
  /// samples exactly at nodes. Throws Error outside [z.front(), z.back()].
  static ScalarField2 sampled(std::string label, const Grid1D& grid, std::vector<double> z,
                              std::vector<std::vector<double>> slices);

  double operator()(double x, double z) const { return value_(x, z); }
  double dx(double x, double z) const { return dx_(x, z); }
  Kind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }

 private:
  ScalarField2(Kind k, std::string label, Fn v, Fn d)
      : kind_(k), label_(std::move(label)), value_(std::move(v)), dx_(std::move(d)) {}
  Kind kind_;
  std::string label_;
  Fn value_;
  Fn dx_;
};

/// KdV soliton l = -c sech^2(sqrt(c)/2 (x - c z)) of l_z - 3 l l_x + l_xxx = 0.
/// Throws DegenerateInput for c <= 0.
ScalarField2 soliton(double c);

ScalarField2 constant_field(double value);

}  // namespace flatlab::numeric

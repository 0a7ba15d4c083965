#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatlab/error.hpp"
#include "flatlab/numeric/fields.hpp"
#include "flatlab/tensor/metric.hpp"

namespace flatlab::numeric {

/// A metric known only through point evaluation. `eval` returns the dim x dim
/// components row-major.
struct SampledMetric {
  std::size_t dim = 0;
  std::function<std::vector<double>(const std::vector<double>&)> eval;
  std::string label;
};

/// Evaluates the exact metric at points. `params` binds every non-coordinate
/// symbol the components use.
SampledMetric sample(const tensor::Metric& m, const std::map<std::string, double>& params = {});

/// metric3d on (x, y, z) with l and l_x taken from the field.
SampledMetric sampled_metric3d(const ScalarField2& l);

struct ResidualReport {
  double h = 0.0;
  double max_riemann = 0.0;
  double max_ricci = 0.0;
};

/// Finite-difference curvature at `point`: central differences of g give the
/// Christoffel symbols at the point and its +-h neighbours, central
/// differences of those give R^l_ijk. Both stages are O(h^2).
/// Throws SingularMetric if g is ill-conditioned (condition number above
/// max_condition) at any stencil centre, DimensionMismatch on a bad point or
/// an asymmetric sample.
ResidualReport fd_curvature(const SampledMetric& m, const std::vector<double>& point, double h,
                            double max_condition = 1e12);

/// Residuals at or below the rounding floor leave no slope to fit.
class ResidualSaturated : public Error {
 public:
  using Error::Error;
};

/// Least-squares slope of log(value) against log(h). Needs >= 3 samples with
/// h strictly decreasing; throws ResidualSaturated on a non-positive value.
double convergence_order(const std::vector<std::pair<double, double>>& samples);

struct ConvergenceStudy {
  std::vector<double> point;
  std::vector<ResidualReport> rows;
  /// Fitted on max_riemann; empty when saturated.
  std::optional<double> order;
  bool saturated = false;
};

ConvergenceStudy convergence_study(const SampledMetric& m, const std::vector<double>& point,
                                   const std::vector<double>& h_ladder);

}  // namespace flatlab::numeric

#include <cmath>

#include "flatlab/numeric/fd_curvature.hpp"

namespace flatlab::numeric {

double convergence_order(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) throw Error("convergence order needs at least 3 samples");
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!(samples[k].first > 0)) throw Error("step sizes must be positive");
    if (k > 0 && !(samples[k].first < samples[k - 1].first))
      throw Error("step sizes must be strictly decreasing");
    if (!(samples[k].second > 0)) throw ResidualSaturated("residual at the rounding floor");
  }
  double mx = 0, my = 0;
  const double n = static_cast<double>(samples.size());
  for (const auto& [h, v] : samples) {
    mx += std::log(h);
    my += std::log(v);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (const auto& [h, v] : samples) {
    const double dx = std::log(h) - mx;
    sxy += dx * (std::log(v) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace flatlab::numeric

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatlab/tensor/curvature.hpp"

namespace flatlab::tensor {

/// Flatness verdicts for one metric. Indices are 0-based chart positions.
/// Riemann indices list only i < j; the mirrored components are negatives.
struct CurvatureReport {
  std::size_t dim = 0;
  bool flat = false;
  bool ricci_flat = false;
  std::vector<std::array<std::size_t, 4>> nonzero_riemann_indices;
  std::vector<std::array<std::size_t, 2>> nonzero_ricci_indices;
  /// First nonzero Riemann component, printed in full.
  std::optional<std::array<std::size_t, 4>> witness_index;
  std::optional<std::string> witness;

  nlohmann::ordered_json to_json() const;
};

CurvatureReport curvature_report(const Riemann& r);

/// Both compute the full report; they differ only in intent at call sites.
CurvatureReport is_flat(const Metric& m);
CurvatureReport is_ricci_flat(const Metric& m);

}  // namespace flatlab::tensor

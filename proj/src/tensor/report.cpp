#include "flatlab/tensor/report.hpp"

namespace flatlab::tensor {

nlohmann::ordered_json CurvatureReport::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim;
  j["flat"] = flat;
  j["ricci_flat"] = ricci_flat;
  j["nonzero_riemann_indices"] = nonzero_riemann_indices;
  j["nonzero_ricci_indices"] = nonzero_ricci_indices;
  j["witness_index"] = witness_index ? nlohmann::ordered_json(*witness_index) : nullptr;
  j["witness"] = witness ? nlohmann::ordered_json(*witness) : nullptr;
  return j;
}

CurvatureReport curvature_report(const Riemann& r) {
  const std::size_t n = r.dim();
  CurvatureReport rep;
  rep.dim = n;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          if (r(l, i, j, k).is_zero()) continue;
          rep.nonzero_riemann_indices.push_back({l, i, j, k});
          if (!rep.witness) {
            rep.witness_index = std::array<std::size_t, 4>{l, i, j, k};
            rep.witness = r(l, i, j, k).to_string();
          }
        }
  rep.flat = rep.nonzero_riemann_indices.empty();
  if (!rep.flat) {
    Ricci ric = ricci(r);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!ric.ric(i, j).is_zero()) rep.nonzero_ricci_indices.push_back({i, j});
  }
  rep.ricci_flat = rep.nonzero_ricci_indices.empty();
  return rep;
}

CurvatureReport is_flat(const Metric& m) {
  return curvature_report(riemann_from_connection(christoffel(m)));
}

CurvatureReport is_ricci_flat(const Metric& m) { return is_flat(m); }

}  // namespace flatlab::tensor

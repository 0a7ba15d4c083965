#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "flatlab/metrics/metrics.hpp"

namespace flatlab::metrics {

/// What the source theorem asserts about a named metric.
enum class Claim { flat, ricci_flat_curved };

struct ParamSpec {
  std::string name;
  std::string default_expr;
  std::string meaning;
};

struct MetricEntry {
  std::string name;
  std::string description;
  Claim claim;
  std::vector<ParamSpec> params;
};

const std::vector<MetricEntry>& registry();
/// Throws Error for an unknown name.
const MetricEntry& lookup(std::string_view name);

/// Residual of one input function in the equation it is supposed to solve.
struct InputCheck {
  std::string param;
  std::string equation;  // "kdv", "kn" or "m_constraint"
  RationalExpr residual;
  bool satisfied() const { return residual.is_zero(); }
};

struct BuiltMetric {
  const MetricEntry* entry = nullptr;
  Metric metric;
  std::map<std::string, RationalExpr> params;
  std::vector<InputCheck> input_checks;
  std::vector<std::string> notes;
};

/// Parses the bindings (missing ones take their defaults) and builds the
/// metric. Throws ParseError for bad expressions and Error for unknown
/// parameter names.
BuiltMetric build_named(std::string_view name, const std::map<std::string, std::string>& bindings,
                        const VarSetPtr& vars = standard_vars());

}  // namespace flatlab::metrics

#include "flatlab/metrics/registry.hpp"

#include "flatlab/error.hpp"
#include "flatlab/expr/parser.hpp"

namespace flatlab::metrics {

const std::vector<MetricEntry>& registry() {
  static const std::vector<MetricEntry> entries{
      {"eq4", "3D metric built from a KdV solution l(x,z)", Claim::flat,
       {{"l", "-x/(3*z)", "KdV solution in (x, z)"}}},
      {"eq1", "6D metric built from a KN solution F(x,z)", Claim::flat,
       {{"F", "x^3/3 + 4*z", "KN solution in (x, z)"}}},
      {"eq6", "6D product of a KN block and a KdV block", Claim::flat,
       {{"F", "x^3/3 + 4*z", "KN solution in (x, z)"},
        {"L", "-u/(3*w)", "KdV solution in (u, w)"},
        {"M", "-1/2", "coupling function in (u, w)"}}},
      {"eq8", "6D Riemann extension of the 3D metric", Claim::flat,
       {{"l", "-x/(3*z)", "KdV solution in (x, z)"}}},
      {"thm4", "Riemann extension deformed by eps dy^2", Claim::ricci_flat_curved,
       {{"l", "-x/(3*z)", "KdV solution in (x, z)"}, {"eps", "1", "deformation constant"}}},
  };
  return entries;
}

const MetricEntry& lookup(std::string_view name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  std::string known;
  for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + e.name;
  throw Error("unknown metric '" + std::string(name) + "' (known: " + known + ")");
}

namespace {

std::string index_label(std::size_t i, std::size_t j, const tensor::Chart& chart) {
  return "g(" + chart.name(i) + "," + chart.name(j) + ")";
}

Metric extension_of(const RationalExpr& l) {
  return riemann_extension(tensor::christoffel(metric3d(l)), {"u", "v", "w"});
}

}  // namespace

BuiltMetric build_named(std::string_view name, const std::map<std::string, std::string>& bindings,
                        const VarSetPtr& vars) {
  const MetricEntry& entry = lookup(name);
  for (const auto& [k, v] : bindings) {
    bool known = false;
    for (const auto& p : entry.params) known = known || p.name == k;
    if (!known) throw Error("metric '" + entry.name + "' has no parameter '" + k + "'");
  }
  std::map<std::string, RationalExpr> p;
  for (const auto& spec : entry.params) {
    auto it = bindings.find(spec.name);
    p[spec.name] = expr::parse(it == bindings.end() ? spec.default_expr : it->second, vars);
  }

  const knkdv::Coords uw{"u", "w"};
  auto built = [&](Metric m) { return BuiltMetric{&entry, std::move(m), p, {}, {}}; };

  if (entry.name == "eq4") {
    BuiltMetric b = built(metric3d(p["l"]));
    b.input_checks.push_back({"l", "kdv", knkdv::kdv_residual(p["l"])});
    return b;
  }
  if (entry.name == "eq1") {
    KNInput in = kn_input(p["F"]);
    BuiltMetric b = built(metric6d_kn(p["F"]));
    b.input_checks.push_back({"F", "kn", knkdv::kn_residual(p["F"])});
    b.notes.push_back("l = " + in.l_thm3.to_string() +
                      (in.l_forms_agree ? " (both closed forms agree)" : " (closed forms disagree)"));
    b.notes.push_back("B = " + in.b.to_string());
    return b;
  }
  if (entry.name == "eq6") {
    BuiltMetric b = built(metric6d_product(p["F"], p["L"], p["M"]));
    b.input_checks.push_back({"F", "kn", knkdv::kn_residual(p["F"])});
    b.input_checks.push_back({"L", "kdv", knkdv::kdv_residual(p["L"], uw)});
    b.input_checks.push_back({"M", "m_constraint", knkdv::m_constraint_residual(p["L"], p["M"])});
    return b;
  }
  if (entry.name == "eq8" || entry.name == "thm4") {
    Metric ext = extension_of(p["l"]);
    std::vector<std::string> notes;
    Metric literal = eq8_literal(tensor::christoffel(metric3d(p["l"])));
    for (auto [i, j] : differing_entries(ext, literal))
      notes.push_back("printed form differs from the generic extension at " +
                      index_label(i, j, ext.chart()) + ": " + literal(i, j).to_string() + " vs " +
                      ext(i, j).to_string());
    BuiltMetric b =
        built(entry.name == "eq8" ? std::move(ext) : ricci_flat_deformation(ext, p["eps"]));
    b.input_checks.push_back({"l", "kdv", knkdv::kdv_residual(p["l"])});
    b.notes = std::move(notes);
    return b;
  }
  throw Error("metric '" + entry.name + "' has no builder");
}

}  // namespace flatlab::metrics

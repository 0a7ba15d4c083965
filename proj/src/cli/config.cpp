#include "flatlab/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

namespace flatlab::cli {

std::vector<std::pair<std::string, std::string>> RunConfig::bindings() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : params) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == k; });
    if (it == out.end())
      out.emplace_back(k, v);
    else
      it->second = v;
  }
  return out;
}

std::pair<std::string, std::string> parse_param(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=expr, got '" + s + "'");
  std::string name = s.substr(0, eq), value = s.substr(eq + 1);
  auto trim = [](std::string& t) {
    t.erase(0, t.find_first_not_of(" \t"));
    t.erase(t.find_last_not_of(" \t") + 1);
  };
  trim(name);
  trim(value);
  if (name.empty() || value.empty()) throw UsageError("--param expects name=expr, got '" + s + "'");
  return {name, value};
}

std::vector<double> parse_floats(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || p != item.data() + item.size() || !std::isfinite(v))
      throw UsageError("not a number: '" + item + "' in '" + s + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

GridSpec parse_grid(const std::string& s) {
  auto v = parse_floats(s);
  if (v.size() != 3) throw UsageError("--grid expects min,max,n");
  if (!(v[1] > v[0])) throw UsageError("--grid needs max > min");
  if (v[2] < 8 || v[2] != std::floor(v[2])) throw UsageError("--grid needs an integer n >= 8");
  return GridSpec{v[0], v[1], static_cast<std::size_t>(v[2])};
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"flatlab: flatness checks for metrics built from KdV and KN solutions"};
  app.require_subcommand(1);

  std::vector<std::string> params;
  std::string format = "json", grid, ladder, curved = "auto", eps;
  std::vector<std::string> probes;
  std::optional<double> dz;
  std::optional<std::size_t> steps;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Write the JSON report here as well");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--run-id", cfg.run_id, "Identifier used when reports are merged");
  };

  auto* verify = app.add_subcommand("verify", "Build a named metric and check its curvature claim");
  verify->add_option("metric_name", cfg.metric, "eq4 | eq1 | eq6 | eq8 | thm4");
  verify->add_option("--metric", cfg.metric, "Same as the positional name");
  verify->add_option("--param", params, "name=expr, repeatable");
  verify->add_option("--eps", eps, "Shorthand for --param eps=expr");
  verify->add_option("--probe", probes, "Numeric probe point x,y,z[,u,v,w], repeatable");
  verify->add_option("--h-ladder", ladder, "Finite-difference steps h1,h2,h3 (decreasing)");
  verify->add_option("--riemann-nonzero", curved, "thm4 curvature expectation")
      ->check(CLI::IsMember({"auto", "require", "record"}));
  add_common(verify);

  auto* generate = app.add_subcommand("generate", "Iterate KN solutions from a starting solution");
  generate->add_option("--start", cfg.start, "Starting KN solution F(x, z)");
  generate->add_option("--generations", cfg.generations, "Number of iterates");
  add_common(generate);

  auto* solve = app.add_subcommand("solve", "Integrate the KdV equation numerically");
  solve->add_option("--param", params, "soliton=c or l0=expr in x");
  solve->add_option("--grid", grid, "min,max,n");
  solve->add_option("--dz", dz, "Step in z (default: the stability bound)");
  solve->add_option("--steps", steps, "Number of steps (default: reach z = 1)");
  solve->add_option("--probe", probes, "Flatness probe x,y,z for metric3d of the soliton, repeatable");
  solve->add_option("--h-ladder", ladder, "Finite-difference steps h1,h2,h3 (decreasing)");
  solve->add_option("--dump-dir", cfg.dump_dir, "Write x,value CSV files for the stored slices");
  add_common(solve);

  auto* report = app.add_subcommand("report", "Merge JSON reports into a pass/fail matrix");
  report->add_option("inputs", cfg.inputs, "Report files, later files win on duplicate run ids");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.command = app.get_subcommands().front()->get_name();
  for (const auto& p : params) cfg.params.push_back(parse_param(p));
  if (!eps.empty()) cfg.params.emplace_back("eps", eps);
  for (const auto& p : probes) cfg.probes.push_back(parse_floats(p));
  if (!ladder.empty()) {
    cfg.h_ladder = parse_floats(ladder);
    if (cfg.h_ladder.size() < 3) throw UsageError("--h-ladder needs at least 3 step sizes");
    for (std::size_t k = 0; k < cfg.h_ladder.size(); ++k)
      if (!(cfg.h_ladder[k] > 0) || (k > 0 && !(cfg.h_ladder[k] < cfg.h_ladder[k - 1])))
        throw UsageError("--h-ladder must be positive and strictly decreasing");
  }
  if (!grid.empty()) cfg.grid = parse_grid(grid);
  cfg.dz = dz;
  cfg.steps = steps;
  if (dz && !(*dz > 0)) throw UsageError("--dz must be positive");
  if (steps && *steps == 0) throw UsageError("--steps must be positive");
  cfg.format = format == "text" ? Format::text : Format::json;
  cfg.curved = curved == "require"  ? CurvedExpectation::require
               : curved == "record" ? CurvedExpectation::record
                                    : CurvedExpectation::automatic;
  if (cfg.command == "verify" && cfg.metric.empty()) throw UsageError("verify needs a metric name");
  if (cfg.command == "report" && cfg.inputs.empty()) throw UsageError("report needs at least one input file");
  return cfg;
}

}  // namespace flatlab::cli

#include "flatlab/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "flatlab/expr/parser.hpp"
#include "flatlab/knkdv/knkdv.hpp"
#include "flatlab/metrics/registry.hpp"
#include "flatlab/numeric/fd_curvature.hpp"
#include "flatlab/numeric/kdv_solver.hpp"
#include "flatlab/tensor/report.hpp"

namespace flatlab::cli {

using nlohmann::ordered_json;
using expr::RationalExpr;

namespace {

constexpr double kOrderLo = 1.7, kOrderHi = 2.3;
constexpr double kMassTol = 1e-6, kSolitonTol = 1e-3, kConstantTol = 1e-12;
// l = x as the non-solution control for the numeric flatness probes
constexpr double kControlFloor = 1e-3;

ordered_json check(std::string name, const ordered_json& expected, const ordered_json& actual, bool pass) {
  ordered_json c;
  c["name"] = std::move(name);
  c["expected"] = expected;
  c["actual"] = actual;
  c["pass"] = pass;
  return c;
}

bool all_pass(const ordered_json& checks) {
  for (const auto& c : checks)
    if (!c["pass"].get<bool>()) return false;
  return true;
}

void finish(Outcome& o, const ordered_json& checks) {
  const bool pass = all_pass(checks);
  o.report["checks"] = checks;
  o.report["verdict"] = pass ? "pass" : "fail";
  o.exit_code = pass ? ExitCode::ok : ExitCode::mismatch;
}

ordered_json envelope(const RunConfig& cfg, const std::string& default_id, const std::string& theorem) {
  ordered_json j;
  j["tool"] = "flatlab";
  j["command"] = cfg.command;
  j["run_id"] = cfg.run_id.empty() ? default_id : cfg.run_id;
  j["theorem"] = theorem;
  return j;
}

std::string theorem_of(const std::string& metric) {
  static const std::map<std::string, std::string> m{
      {"eq1", "Thm1"}, {"eq4", "Thm2"}, {"eq6", "Thm3"}, {"eq8", "Thm4"}, {"thm4", "Thm4"}};
  return m.at(metric);
}

ordered_json study_json(const numeric::ConvergenceStudy& st, const std::optional<double>& ricci_order) {
  ordered_json j;
  j["point"] = st.point;
  ordered_json rows = ordered_json::array();
  for (const auto& r : st.rows) rows.push_back({{"h", r.h}, {"max_riemann", r.max_riemann}, {"max_ricci", r.max_ricci}});
  j["rows"] = rows;
  j["order"] = st.order ? ordered_json(*st.order) : ordered_json(nullptr);
  j["ricci_order"] = ricci_order ? ordered_json(*ricci_order) : ordered_json(nullptr);
  j["saturated"] = st.saturated;
  return j;
}

// Saturated counts as converged: the residual already sits at the rounding floor.
bool converges(const std::optional<double>& order, bool saturated) {
  return saturated || (order && *order >= kOrderLo && *order <= kOrderHi);
}

std::optional<double> ricci_order(const numeric::ConvergenceStudy& st, bool& saturated) {
  std::vector<std::pair<double, double>> s;
  for (const auto& r : st.rows) s.emplace_back(r.h, r.max_ricci);
  saturated = false;
  try {
    return numeric::convergence_order(s);
  } catch (const numeric::ResidualSaturated&) {
    saturated = true;
    return std::nullopt;
  }
}

std::string point_label(const std::vector<double>& p) {
  std::string s;
  for (double v : p) s += (s.empty() ? "" : ",") + nlohmann::json(v).dump();
  return s;
}

}  // namespace

Outcome cmd_verify(const RunConfig& cfg) {
  const auto& entry = metrics::lookup(cfg.metric);
  std::map<std::string, std::string> bindings;
  for (const auto& [k, v] : cfg.bindings()) bindings[k] = v;
  auto built = metrics::build_named(cfg.metric, bindings);

  Outcome o;
  o.report = envelope(cfg, "verify-" + cfg.metric, theorem_of(cfg.metric));
  ordered_json config;
  config["metric"] = cfg.metric;
  ordered_json params = ordered_json::object();
  for (const auto& spec : entry.params) params[spec.name] = built.params.at(spec.name).to_string();
  config["params"] = params;
  if (!cfg.probes.empty()) {
    config["probes"] = cfg.probes;
    config["h_ladder"] = cfg.h_ladder;
  }
  o.report["config"] = config;

  const auto& chart = built.metric.chart();
  ordered_json coords = ordered_json::array();
  for (std::size_t i = 0; i < chart.dim(); ++i) coords.push_back(chart.name(i));
  o.report["metric"] = {{"name", entry.name},
                        {"description", entry.description},
                        {"claim", entry.claim == metrics::Claim::flat ? "flat" : "ricci_flat_curved"},
                        {"coordinates", coords}};

  ordered_json inputs = ordered_json::array();
  for (const auto& ic : built.input_checks)
    inputs.push_back({{"param", ic.param},
                      {"equation", ic.equation},
                      {"residual", ic.residual.to_string()},
                      {"satisfied", ic.satisfied()}});
  o.report["input_checks"] = inputs;

  const auto rep = tensor::is_flat(built.metric);
  o.report["curvature"] = rep.to_json();

  ordered_json checks = ordered_json::array();
  if (entry.claim == metrics::Claim::flat) {
    checks.push_back(check("flat", true, rep.flat, rep.flat));
  } else {
    checks.push_back(check("ricci_flat", true, rep.ricci_flat, rep.ricci_flat));
    const bool nonzero = !rep.flat;
    CurvedExpectation mode = cfg.curved;
    if (mode == CurvedExpectation::automatic) {
      auto it = built.params.find("l");
      const bool constant_l = it != built.params.end() && it->second.is_constant();
      mode = constant_l ? CurvedExpectation::record : CurvedExpectation::require;
    }
    if (mode == CurvedExpectation::require)
      checks.push_back(check("riemann_nonzero", true, nonzero, nonzero));
    else
      checks.push_back(check("riemann_nonzero", nullptr, nonzero, true));
  }

  if (!cfg.probes.empty()) {
    auto sampled = numeric::sample(built.metric);
    ordered_json studies = ordered_json::array();
    for (const auto& p : cfg.probes) {
      if (p.size() != chart.dim())
        throw UsageError("probe " + point_label(p) + " has " + std::to_string(p.size()) +
                         " coordinates, the metric needs " + std::to_string(chart.dim()));
      auto st = numeric::convergence_study(sampled, p, cfg.h_ladder);
      bool rsat = false;
      auto rord = ricci_order(st, rsat);
      studies.push_back(study_json(st, rord));
      if (entry.claim == metrics::Claim::flat) {
        checks.push_back(check("numeric_flat@" + point_label(p), "order in [1.7, 2.3]",
                               st.order ? ordered_json(*st.order) : ordered_json("saturated"),
                               converges(st.order, st.saturated)));
      } else {
        checks.push_back(check("numeric_ricci_flat@" + point_label(p), "order in [1.7, 2.3]",
                               rord ? ordered_json(*rord) : ordered_json("saturated"), converges(rord, rsat)));
      }
    }
    o.report["numeric"] = studies;
  }
  if (!built.notes.empty()) o.report["notes"] = built.notes;
  finish(o, checks);
  return o;
}

Outcome cmd_generate(const RunConfig& cfg) {
  auto vars = metrics::standard_vars();
  const RationalExpr start = expr::parse(cfg.start, vars);
  const RationalExpr r0 = knkdv::kn_residual(start);
  if (!r0.is_zero())
    throw Error("initial expression does not solve the KN equation (residual " + r0.to_string() + ")");

  Outcome o;
  o.report = envelope(cfg, "generate", "Thm1");
  o.report["config"] = {{"start", start.to_string()}, {"generations", cfg.generations}};

  std::vector<knkdv::KNSolution> chain{{start, 0}};
  std::optional<std::string> failure;
  for (unsigned g = 0; g < cfg.generations; ++g) {
    try {
      chain.push_back(knkdv::kn_iterate(chain.back()));
    } catch (const IntegrationError& e) {
      failure = e.what();
      break;
    }
  }

  ordered_json checks = ordered_json::array();
  std::vector<knkdv::PoolEntry> pool;
  for (const auto& s : chain) {
    const bool ok = knkdv::kn_residual(s.f).is_zero();
    pool.push_back({s.name(), s.f.to_string(), "kn", ok});
    checks.push_back(check("kn_residual_zero:" + s.name(), true, ok, ok));
  }
  o.report["pool"] = knkdv::pool_to_json(pool);
  o.report["complete"] = !failure;
  if (failure) {
    o.report["error"] = *failure;
    checks.push_back(check("chain_complete", cfg.generations, chain.size() - 1, false));
  }
  finish(o, checks);
  return o;
}

Outcome cmd_solve(const RunConfig& cfg) {
  auto b = cfg.bindings();
  if (b.size() != 1 || (b[0].first != "soliton" && b[0].first != "l0"))
    throw UsageError("solve needs exactly one of --param soliton=c or --param l0=expr");
  const numeric::Grid1D grid(cfg.grid.lo, cfg.grid.hi, cfg.grid.n);

  std::optional<numeric::ScalarField2> oracle;
  std::optional<double> soliton_c;
  double oracle_tol = 0.0;
  ordered_json initial;
  numeric::ScalarField2 l0 = numeric::constant_field(0);
  if (b[0].first == "soliton") {
    std::vector<double> c;
    try {
      c = parse_floats(b[0].second);
    } catch (const UsageError&) {
      throw UsageError("soliton speed must be a number, got '" + b[0].second + "'");
    }
    if (c.size() != 1) throw UsageError("soliton takes one speed");
    l0 = numeric::soliton(c[0]);
    oracle = l0;
    soliton_c = c[0];
    oracle_tol = kSolitonTol;
    initial = {{"kind", "soliton"}, {"c", c[0]}};
  } else {
    auto vars = metrics::standard_vars();
    // plain decimals are accepted as constants; the expression grammar takes rationals only
    std::optional<double> literal;
    try {
      auto v = parse_floats(b[0].second);
      if (v.size() == 1) literal = v[0];
    } catch (const UsageError&) {
    }
    const RationalExpr e = literal ? RationalExpr(0L) : expr::parse(b[0].second, vars);
    const auto x = vars->id("x");
    for (std::size_t v = 0; v < vars->size(); ++v)
      if (v != x && !expr::is_zero(expr::diff(e, static_cast<expr::VarId>(v))))
        throw ScopeError("l0 may depend on x only");
    const RationalExpr ex = expr::diff(e, x);
    if (literal)
      l0 = numeric::constant_field(*literal);
    else
      l0 = numeric::ScalarField2::analytic(
          e.to_string(), [e, x](double xx, double) { return expr::eval_numeric(e, expr::Point{{x, xx}}); },
          [ex, x](double xx, double) { return expr::eval_numeric(ex, expr::Point{{x, xx}}); });
    if (literal || e.is_constant()) {
      oracle = l0;
      oracle_tol = kConstantTol;
    }
    initial = {{"kind", "expression"}, {"l0", literal ? ordered_json(*literal) : ordered_json(e.to_string())}};
  }

  double max0 = 0;
  for (std::size_t i = 0; i < grid.n; ++i) max0 = std::max(max0, std::abs(l0(grid.x(i), 0.0)));
  double dz = 0;
  std::size_t steps = 0;
  if (cfg.dz) {
    dz = *cfg.dz;
    steps = cfg.steps ? *cfg.steps : static_cast<std::size_t>(std::ceil(cfg.z_end / dz));
  } else {
    const double bound = numeric::max_stable_dz(grid, max0);
    if (cfg.steps) {
      steps = *cfg.steps;
      dz = bound;
    } else {
      steps = static_cast<std::size_t>(std::ceil(cfg.z_end / bound));
      dz = cfg.z_end / static_cast<double>(steps);
    }
  }

  numeric::KdVOptions opt;
  if (!cfg.dump_dir.empty()) opt.snapshot_every = std::max<std::size_t>(1, steps / 10);
  auto res = numeric::solve_kdv(l0, 0.0, grid, steps, dz, opt);

  Outcome o;
  o.report = envelope(cfg, "solve", "numeric");
  ordered_json config;
  config["initial"] = initial;
  config["grid"] = {{"min", grid.x_min}, {"max", grid.x_max}, {"n", grid.n}};
  config["dz"] = dz;
  config["steps"] = steps;
  if (!cfg.probes.empty()) {
    config["probes"] = cfg.probes;
    config["h_ladder"] = cfg.h_ladder;
  }
  o.report["config"] = config;

  ordered_json result;
  result["z_final"] = res.z.back();
  result["mass_initial"] = res.mass_initial;
  result["mass_final"] = res.mass_final;
  result["mass_drift"] = res.mass_drift();
  ordered_json checks = ordered_json::array();
  checks.push_back(check("mass_drift", "<= 1e-06", res.mass_drift(), res.mass_drift() <= kMassTol));
  if (oracle) {
    double err = 0;
    for (std::size_t k = 0; k < res.slices.size(); ++k)
      for (std::size_t i = 0; i < grid.n; ++i)
        err = std::max(err, std::abs(res.slices[k][i] - (*oracle)(grid.x(i), res.z[k])));
    result["max_error"] = err;
    checks.push_back(check("max_error", oracle_tol, err, err <= oracle_tol));
  }
  o.report["result"] = result;

  if (!cfg.dump_dir.empty()) {
    std::filesystem::create_directories(cfg.dump_dir);
    ordered_json files = ordered_json::array();
    for (std::size_t k = 0; k < res.slices.size(); ++k) {
      auto path = std::filesystem::path(cfg.dump_dir) / ("slice_" + std::to_string(k) + ".csv");
      std::ofstream f(path);
      if (!f) throw Error("cannot write " + path.string());
      numeric::write_csv(f, grid, res.slices[k]);
      files.push_back({{"z", res.z[k]}, {"path", path.string()}});
    }
    o.report["dumps"] = files;
  }

  if (!cfg.probes.empty()) {
    if (!soliton_c) throw UsageError("--probe in solve needs --param soliton=c");
    auto m = numeric::sampled_metric3d(numeric::soliton(*soliton_c));
    auto control = numeric::sample(metrics::metric3d(expr::parse("x", metrics::standard_vars())));
    ordered_json studies = ordered_json::array();
    for (const auto& p : cfg.probes) {
      if (p.size() != 3) throw UsageError("solve probes are x,y,z points");
      auto st = numeric::convergence_study(m, p, cfg.h_ladder);
      bool rsat = false;
      studies.push_back(study_json(st, ricci_order(st, rsat)));
      checks.push_back(check("numeric_flat@" + point_label(p), "order in [1.7, 2.3]",
                             st.order ? ordered_json(*st.order) : ordered_json("saturated"),
                             converges(st.order, st.saturated)));
    }
    o.report["numeric"] = studies;
    // the control's curvature is -3x/y, which vanishes on x = 0
    std::vector<double> cp{1, 1, 0};
    for (const auto& p : cfg.probes)
      if (p[0] != 0) {
        cp = p;
        break;
      }
    auto ctl = numeric::convergence_study(control, cp, cfg.h_ladder);
    double floor = INFINITY;
    for (const auto& r : ctl.rows) floor = std::min(floor, r.max_riemann);
    o.report["control"] = study_json(ctl, std::nullopt);
    checks.push_back(check("control_stalls", "> 0.001", floor, floor > kControlFloor));
  }
  finish(o, checks);
  return o;
}

Outcome cmd_report(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw UsageError("report needs at least one input file");
  Outcome o;
  struct Run {
    std::string file;
    ordered_json j;
  };
  std::vector<std::pair<std::string, Run>> runs;  // insertion order by first appearance
  for (const auto& path : cfg.inputs) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read report '" + path + "'");
    ordered_json j;
    try {
      j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error("corrupt report '" + path + "': " + e.what());
    }
    for (const char* key : {"run_id", "theorem", "verdict"})
      if (!j.is_object() || !j.contains(key) || !j[key].is_string())
        throw Error("report '" + path + "' lacks a string '" + key + "'");
    const std::string id = j["run_id"].get<std::string>();
    auto it = std::find_if(runs.begin(), runs.end(), [&](const auto& r) { return r.first == id; });
    if (it != runs.end()) {
      o.warnings.push_back("duplicate run id '" + id + "': " + path + " replaces " + it->second.file);
      it->second = Run{path, std::move(j)};
    } else {
      runs.emplace_back(id, Run{path, std::move(j)});
    }
  }

  o.report["tool"] = "flatlab";
  o.report["command"] = "report";
  o.report["run_id"] = cfg.run_id.empty() ? "report" : cfg.run_id;
  o.report["inputs"] = cfg.inputs;
  ordered_json listing = ordered_json::array();
  std::vector<std::string> order{"Thm1", "Thm2", "Thm3", "Thm4", "numeric"};
  for (const auto& [id, r] : runs) {
    listing.push_back({{"run_id", id}, {"theorem", r.j["theorem"]}, {"file", r.file}, {"verdict", r.j["verdict"]}});
    const auto th = r.j["theorem"].get<std::string>();
    if (std::find(order.begin(), order.end(), th) == order.end()) order.push_back(th);
  }
  o.report["runs"] = listing;

  ordered_json matrix = ordered_json::array();
  ordered_json checks = ordered_json::array();
  for (const auto& th : order) {
    ordered_json ids = ordered_json::array();
    bool pass = true;
    for (const auto& [id, r] : runs)
      if (r.j["theorem"] == th) {
        ids.push_back(id);
        pass = pass && r.j["verdict"] == "pass";
      }
    if (ids.empty()) continue;
    matrix.push_back({{"theorem", th}, {"runs", ids}, {"pass", pass}});
    checks.push_back(check(th, "pass", pass ? "pass" : "fail", pass));
  }
  o.report["matrix"] = matrix;
  o.report["warnings"] = o.warnings;
  finish(o, checks);
  return o;
}

namespace {

void render(std::ostringstream& out, const ordered_json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar_list = [](const ordered_json& a) {
    for (const auto& e : a)
      if (e.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !(v.is_array() && scalar_list(v))) {
        out << pad << k << ":\n";
        render(out, v, indent + 1);
      } else {
        out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured() && !(v.is_array() && scalar_list(v))) {
        out << pad << "-\n";
        render(out, v, indent + 1);
      } else {
        out << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string render_text(const ordered_json& j) {
  std::ostringstream out;
  render(out, j, 0);
  return out.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    expr::gcd_degree_cap_from_env();
    cfg = parse_args(argc, argv, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::usage;
  }
  if (!cfg) return ExitCode::ok;

  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (cfg->command == "verify")
      o = cmd_verify(*cfg);
    else if (cfg->command == "generate")
      o = cmd_generate(*cfg);
    else if (cfg->command == "solve")
      o = cmd_solve(*cfg);
    else
      o = cmd_report(*cfg);
  } catch (const InstabilityError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::instability;
  } catch (const StepSizeError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::instability;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::usage;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (cfg->command != "report") o.report["timing"] = {{"seconds", secs}};
  for (const auto& w : o.warnings) err << "warning: " << w << "\n";

  const std::string json = o.report.dump(2) + "\n";
  if (!cfg->out.empty()) {
    std::ofstream f(cfg->out);
    if (!f) {
      err << "error: cannot write " << cfg->out << "\n";
      return ExitCode::usage;
    }
    f << json;
  }
  out << (cfg->format == Format::json ? json : render_text(o.report));
  return o.exit_code;
}

}  // namespace flatlab::cli

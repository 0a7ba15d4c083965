#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "flatlab/cli/config.hpp"
#include "flatlab/expr/parser.hpp"
#include "flatlab/metrics/metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("flatlab_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// args is passed through the shell as written.
Result run(const std::string& args, const std::string& env = "") {
  const auto out = scratch() / "stdout", err = scratch() / "stderr";
  const std::string cmd = env + " '" FLATLAB_CLI_PATH "' " + args + " >'" + out.string() + "' 2>'" +
                          err.string() + "'";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool same_expr(const std::string& a, const std::string& b) {
  auto vars = flatlab::metrics::standard_vars();
  return flatlab::expr::parse(a, vars) == flatlab::expr::parse(b, vars);
}

json find_check(const json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return c;
  return nullptr;
}

std::string strip_timing(std::string s) {
  auto j = json::parse(s);
  j.erase("timing");
  return j.dump();
}

}  // namespace

TEST_CASE("argument helpers") {
  using namespace flatlab::cli;
  CHECK(parse_param("l=-x/(3*z)") == std::pair<std::string, std::string>{"l", "-x/(3*z)"});
  CHECK(parse_param(" eps = 1 ") == std::pair<std::string, std::string>{"eps", "1"});
  CHECK_THROWS_AS(parse_param("l"), UsageError);
  CHECK_THROWS_AS(parse_param("=x"), UsageError);
  CHECK(parse_floats("1, 2.5,-3e-2") == std::vector<double>{1, 2.5, -3e-2});
  CHECK_THROWS_AS(parse_floats("1,,2"), UsageError);
  CHECK_THROWS_AS(parse_floats("1,a"), UsageError);
  auto g = parse_grid("-30,30,1024");
  CHECK(g.lo == -30);
  CHECK(g.n == 1024);
  CHECK_THROWS_AS(parse_grid("0,1,4"), UsageError);
  CHECK_THROWS_AS(parse_grid("1,0,16"), UsageError);
  CHECK_THROWS_AS(parse_grid("0,1,16.5"), UsageError);
  RunConfig c;
  c.params = {{"l", "x"}, {"eps", "2"}, {"l", "0"}};
  CHECK(c.bindings() == std::vector<std::pair<std::string, std::string>>{{"l", "0"}, {"eps", "2"}});
}

TEST_CASE("verify eq4") {
  auto ok = run("verify eq4 --param 'l=-x/(3*z)'");
  REQUIRE(ok.code == 0);
  auto j = ok.j();
  CHECK(j["curvature"]["flat"] == true);
  CHECK(j["verdict"] == "pass");
  CHECK(j["theorem"] == "Thm2");
  CHECK(same_expr(j["config"]["params"]["l"], "-x/(3*z)"));

  auto bad = run("verify --metric eq4 --param l=x");
  CHECK(bad.code == 1);
  auto b = bad.j();
  CHECK(b["curvature"]["flat"] == false);
  CHECK(b["input_checks"][0]["residual"] == "-3*x");
  CHECK(b["input_checks"][0]["satisfied"] == false);
  CHECK(b["verdict"] == "fail");
}

TEST_CASE("verify thm4 expectations") {
  auto r = run("verify thm4 --param 'l=-x/(3*z)' --param eps=1");
  REQUIRE(r.code == 0);
  auto j = r.j();
  CHECK(j["curvature"]["ricci_flat"] == true);
  CHECK(j["curvature"]["flat"] == false);
  CHECK(find_check(j, "riemann_nonzero")["expected"] == true);

  auto zero = run("verify thm4 --param l=0 --eps 1");
  REQUIRE(zero.code == 0);
  auto z = zero.j();
  CHECK(find_check(z, "riemann_nonzero")["expected"].is_null());
  CHECK(find_check(z, "riemann_nonzero")["pass"] == true);

  // eps = 0 leaves the flat extension: curvature is required and absent
  auto flat = run("verify thm4 --param 'l=-x/(3*z)' --eps 0");
  CHECK(flat.code == 1);
  CHECK(find_check(flat.j(), "riemann_nonzero")["actual"] == false);
  CHECK(run("verify thm4 --param 'l=-x/(3*z)' --eps 0 --riemann-nonzero record").code == 0);
}

TEST_CASE("verify the remaining named metrics") {
  for (const char* m : {"eq1", "eq6", "eq8"}) {
    CAPTURE(m);
    auto r = run(std::string("verify ") + m);
    CHECK(r.code == 0);
    CHECK(r.j()["verdict"] == "pass");
  }
  CHECK(run("verify eq1 --param F=x^2").code == 1);
}

TEST_CASE("verify with numeric probes") {
  auto r = run("verify eq4 --param 'l=-x/(3*z)' --probe 1,1,1 --probe 2,0.5,1.5");
  REQUIRE(r.code == 0);
  auto j = r.j();
  REQUIRE(j["numeric"].size() == 2);
  double order = j["numeric"][0]["order"];
  CHECK(order == doctest::Approx(2.0).epsilon(0.15));
  CHECK(run("verify eq4 --probe 1,1").code == 2);
  // symbolic l cannot be sampled
  CHECK(run("verify eq4 --param l=l --probe 1,1,1").code == 2);
}

TEST_CASE("generate") {
  auto r = run("generate --start x --generations 2");
  REQUIRE(r.code == 0);
  auto pool = r.j()["pool"];
  REQUIRE(pool.size() == 3);
  CHECK(same_expr(pool[0]["expr"], "x"));
  CHECK(same_expr(pool[1]["expr"], "x^3/3 + 4*z"));
  CHECK(same_expr(pool[2]["expr"], "x^5/45 + 4/3*x^2*z - 16*z^2/x"));
  for (const auto& e : pool) CHECK(e["residual_verified"] == true);

  auto three = run("generate --start x --generations 3");
  REQUIRE(three.code == 0);
  CHECK(three.j()["pool"].size() == 4);
  CHECK(three.j()["pool"][3]["residual_verified"] == true);

  auto bad = run("generate --start 'x^2' --generations 2");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("-3/x") != std::string::npos);
}

TEST_CASE("solve") {
  auto zero = run("solve --param l0=0 --grid=-10,10,128 --steps 50");
  REQUIRE(zero.code == 0);
  CHECK(zero.j()["result"]["max_error"] == 0.0);

  const auto dump = scratch() / "dump";
  auto half = run("solve --param l0=0.5 --grid=-10,10,128 --steps 50 --dump-dir '" + dump.string() + "'");
  REQUIRE(half.code == 0);
  CHECK(half.j()["result"]["max_error"].get<double>() <= 1e-12);
  std::ifstream csv(dump / "slice_0.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "x,value");
  std::getline(csv, line);
  CHECK(line == "-10,0.5");

  auto cfl = run("solve --param soliton=1 --grid=-10,10,64 --dz 1 --steps 3");
  CHECK(cfl.code == 3);
  CHECK(cfl.err.find("step bound") != std::string::npos);
  CHECK(run("solve --param soliton=0").code == 2);
  CHECK(run("solve --param l0=x --param soliton=1").code == 2);
  CHECK(run("solve --param 'l0=x*z'").code == 2);
}

TEST_CASE("solve soliton with probes") {
  auto r = run("solve --param soliton=1 --grid=-30,30,1024 --probe 0,1,0 --probe 0.7,1.3,0.2");
  REQUIRE(r.code == 0);
  auto j = r.j();
  CHECK(j["result"]["max_error"].get<double>() <= 1e-3);
  CHECK(j["result"]["mass_drift"].get<double>() <= 1e-6);
  CHECK(j["result"]["z_final"].get<double>() == doctest::Approx(1.0));
  CHECK(find_check(j, "control_stalls")["pass"] == true);
  CHECK(j["control"]["point"][0] == 0.7);
}

TEST_CASE("report merge") {
  const auto dir = scratch();
  auto p = [&](const char* n) { return (dir / n).string(); };
  REQUIRE(run("verify eq4 --out '" + p("a.json") + "'").code == 0);
  REQUIRE(run("verify eq4 --param l=x --run-id verify-eq4 --out '" + p("b.json") + "'").code == 1);
  REQUIRE(run("generate --out '" + p("c.json") + "'").code == 0);

  auto m = run("report '" + p("a.json") + "' '" + p("c.json") + "'");
  REQUIRE(m.code == 0);
  auto j = m.j();
  REQUIRE(j["matrix"].size() == 2);
  CHECK(j["matrix"][0]["theorem"] == "Thm1");
  CHECK(j["matrix"][1]["theorem"] == "Thm2");

  // b.json reuses a.json's run id and, coming later, replaces it
  auto d = run("report '" + p("a.json") + "' '" + p("b.json") + "'");
  CHECK(d.code == 1);
  CHECK(d.err.find("duplicate run id 'verify-eq4'") != std::string::npos);
  CHECK(d.j()["warnings"].size() == 1);
  CHECK(d.j()["runs"].size() == 1);
  CHECK(run("report '" + p("b.json") + "' '" + p("a.json") + "'").code == 0);

  CHECK(run("report").code == 2);
  std::ofstream(dir / "corrupt.json") << "{\"run_id\": ";
  CHECK(run("report '" + p("corrupt.json") + "'").code == 2);
  std::ofstream(dir / "other.json") << "{\"hello\": 1}";
  CHECK(run("report '" + p("other.json") + "'").code == 2);
  CHECK(run("report '" + p("missing.json") + "'").code == 2);
}

TEST_CASE("reports are deterministic apart from timing") {
  auto a = run("verify eq1 --param 'F=x^3/3 + 4*z'");
  auto b = run("verify eq1 --param 'F=x^3/3 + 4*z'");
  REQUIRE(a.code == 0);
  CHECK(a.out != b.out);  // timing differs
  CHECK(strip_timing(a.out) == strip_timing(b.out));
}

TEST_CASE("usage errors and environment") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("verify").code == 2);
  CHECK(run("verify eq9").code == 2);
  CHECK(run("verify eq4 --param 'l=x +'").code == 2);
  CHECK(run("verify eq4 --param q=x").code == 2);
  CHECK(run("verify eq4 --format yaml").code == 2);
  CHECK(run("verify eq4 --h-ladder 1e-2,2e-2,1e-3 --probe 1,1,1").code == 2);
  CHECK(run("solve --param soliton=1 --grid 0,1").code == 2);
  CHECK(run("verify eq4", "FLATLAB_GCD_DEGREE_CAP=abc").code == 2);
  CHECK(run("verify eq4", "FLATLAB_GCD_DEGREE_CAP=0").code == 2);
  CHECK(run("verify eq4", "FLATLAB_GCD_DEGREE_CAP=128").code == 0);
  auto help = run("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("text format") {
  auto r = run("verify eq4 --format text");
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: pass") != std::string::npos);
  CHECK(r.out.find("  flat: true") != std::string::npos);
}

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatlab/cli/config.hpp"

namespace flatlab::cli {

enum ExitCode : int { ok = 0, mismatch = 1, usage = 2, instability = 3 };

struct Outcome {
  nlohmann::ordered_json report;
  int exit_code = ExitCode::ok;
  std::vector<std::string> warnings;
};

/// Each command returns its report with "verdict" set and the exit code that
/// goes with it. Input problems surface as exceptions.
Outcome cmd_verify(const RunConfig& cfg);
Outcome cmd_generate(const RunConfig& cfg);
Outcome cmd_solve(const RunConfig& cfg);
Outcome cmd_report(const RunConfig& cfg);

/// Indented key: value rendering of a report.
std::string render_text(const nlohmann::ordered_json& j);

/// Whole program: parse, dispatch, print, write --out. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flatlab::cli

#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatlab/error.hpp"

namespace flatlab::cli {

/// Bad flags or flag values. Maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Format { json, text };

/// How verify treats the nonzero-Riemann half of the thm4 claim.
enum class CurvedExpectation { automatic, require, record };

struct GridSpec {
  double lo = -30.0;
  double hi = 30.0;
  std::size_t n = 1024;
};

struct RunConfig {
  std::string command;
  std::string metric;
  /// In command-line order; a repeated name keeps the last value.
  std::vector<std::pair<std::string, std::string>> params;
  std::string start = "x";
  unsigned generations = 2;
  GridSpec grid;
  std::optional<double> dz;
  std::optional<std::size_t> steps;
  double z_end = 1.0;
  std::vector<std::vector<double>> probes;
  std::vector<double> h_ladder{1e-2, 5e-3, 2.5e-3};
  std::string out;
  std::string dump_dir;
  Format format = Format::json;
  std::string run_id;
  CurvedExpectation curved = CurvedExpectation::automatic;
  std::vector<std::string> inputs;

  /// Parameter bindings with repeated names collapsed.
  std::vector<std::pair<std::string, std::string>> bindings() const;
};

/// "name=expr", split at the first "=".
std::pair<std::string, std::string> parse_param(const std::string& s);
/// Comma-separated floats, all finite.
std::vector<double> parse_floats(const std::string& s);
/// "min,max,n".
GridSpec parse_grid(const std::string& s);

/// Parses argv. Returns nullopt after printing help. Throws UsageError.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

}  // namespace flatlab::cli

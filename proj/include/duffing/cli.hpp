#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "duffing/params.hpp"

namespace duffing::cli {

enum ExitCode { kOk = 0, kIoError = 1, kUsage = 2, kNumerical = 3, kDivergence = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `min:max[:count]`, count defaulting to 400.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 400;
};
Range parse_range(std::string_view text);  // throws UsageError

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  Params params;
  std::optional<Range> omega;
  std::optional<Range> range;
  std::optional<Range> f_range;
  std::optional<Range> f0_range;
  std::optional<Range> zeta_range;
  std::optional<Range> c_range;
  std::optional<std::pair<int, int>> grid;
  std::string vary;
  std::string out;  // empty: standard output, or $DUFFING_OUT_DIR/<command>.<ext>
  std::optional<Format> format;
  int threads = 0;
  bool serial = false;
  bool include_negative = false;
  int steps_per_period = 2000;
  int transient_periods = 400;
  int measure_periods = 100;
  int refine = 0;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {
      "response", "jumps",          "manifold2d", "manifold3d", "border",
      "double-omega", "singular-scan", "sweep",   "derive-tables"};
  return names;
}

// Throws UsageError on unknown flags, malformed or non-finite numbers,
// gamma or zeta <= 0, and missing required ranges.  Returns std::nullopt
// after printing help to `out` when --help is given.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

// Runs the command, writes its data file and a one-line summary.  Returns an
// ExitCode.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_args + run with the exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace duffing::cli

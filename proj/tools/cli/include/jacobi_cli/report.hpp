#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jacobi/index.hpp"
#include "jacobi/verdict.hpp"
#include "jacobi_cli/config.hpp"

namespace jacobi::cli {

/// Exit codes of `jacobi run`. The run code is the worst over all reports.
enum ExitCode : int {
  exit_pass = 0,
  exit_inequality_failed = 1,
  exit_hypothesis_not_met = 2,
  exit_numerical_error = 3,
  exit_config_error = 4,
  exit_io_error = 5,
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what) {}
};

struct RunReport {
  std::string tool = "jacobi";
  std::string version;
  std::string scenario;
  std::string name;
  Json config;
  std::optional<std::uint64_t> seed;
  std::vector<VerdictRecord> verdicts;
  std::vector<IndexReport> indices;
  std::map<std::string, double> metrics;
  /// Runtime errors that stopped a scenario before it produced verdicts.
  std::vector<std::string> errors;
  int exit_code = exit_pass;
  double seconds = 0.0;
};

const char* tool_version();

/// Worst severity over verdicts and errors.
int exit_code_for(const RunReport& report);

/// Schema:
///   {tool, version, scenario, name, config, seed (null if unset),
///    verdicts: [{statement, lhs, rhs, slack, pass, hypothesis_ok, status, notes}],
///    indices: [{subspace, interval: {lo, hi, include_lo, include_hi, text}, total,
///               zeros: [{time, multiplicity}], scan_step, refine_tol, snap_tol,
///               warnings}],
///    metrics: {name: value}, errors: [...], exit_code, timing: {seconds}}
/// Non-finite numbers are written as null and read back as NaN.
Json to_json(const RunReport& report, bool include_timing = true);
RunReport report_from_json(const Json& j);

/// Columns: scenario,id,lhs,rhs,slack,pass,time,multiplicity. One row per
/// verdict (time and multiplicity empty), then one row per zero (lhs, rhs,
/// slack and pass empty; id is "<subspace> <interval>").
std::string csv_header();
std::string to_csv(const RunReport& report, bool header = true);

/// "json" or "csv"; throws IoError when the file cannot be written.
void write_report(const RunReport& report, const std::string& format, const std::string& path);
void write_text(const std::string& text, const std::string& path);

}  // namespace jacobi::cli

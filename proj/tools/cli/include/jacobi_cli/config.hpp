#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "jacobi/index.hpp"
#include "jacobi/integrator.hpp"
#include "jacobi/interval.hpp"

namespace jacobi::cli {

using Json = nlohmann::json;

/// Invalid or incomplete config; `path` is the JSON pointer of the field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

const std::vector<std::string>& scenario_names();

struct NumericSettings {
  double scan_step = 0.0;  ///< 0 picks the automatic step
  double rtol = 1e-10;     ///< integrator relative tolerance; atol = rtol / 100
  double refine_tol = 1e-10;

  IndexOptions index() const;
  IntegratorOptions integrator() const;
};

/// A parsed scenario. `body` keeps the full JSON object (the config echo in
/// reports); typed fields mirror the shared keys after overrides.
struct ScenarioConfig {
  std::string scenario;
  std::string name;
  std::optional<std::uint64_t> seed;
  NumericSettings numerics;
  Json body;
};

/// Command-line overrides of config fields.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> scan_step;
  std::optional<double> tol;
};

/// Validates required fields for the scenario; throws ConfigError.
ScenarioConfig parse_config(const Json& j);
/// Reads and parses a config file. The name defaults to the file stem.
ScenarioConfig load_config(const std::string& path);
/// Applies overrides to the typed fields and to the echoed body.
void apply_overrides(ScenarioConfig& config, const Overrides& overrides);

// Field readers. `path` is the JSON pointer of `obj`; errors name the field.
// Numbers accept JSON numbers or expression strings ("pi/2").
double read_number(const Json& value, const std::string& path);
double number_field(const Json& obj, const std::string& key, const std::string& path);
double number_field(const Json& obj, const std::string& key, const std::string& path,
                    double fallback);
int int_field(const Json& obj, const std::string& key, const std::string& path);
int int_field(const Json& obj, const std::string& key, const std::string& path, int fallback);
std::string string_field(const Json& obj, const std::string& key, const std::string& path);
std::string string_field(const Json& obj, const std::string& key, const std::string& path,
                         const std::string& fallback);
const Json& object_field(const Json& obj, const std::string& key, const std::string& path);
std::uint64_t read_seed(const Json& value, const std::string& path);

/// "[0, pi)", [lo, hi] (closed) or {lo, hi, include_lo, include_hi}.
IntervalSpec read_interval(const Json& value, const std::string& path);
/// `intervals` (list) or `interval` (single); empty when neither is present.
std::vector<IntervalSpec> read_intervals(const Json& obj, const std::string& path);

}  // namespace jacobi::cli

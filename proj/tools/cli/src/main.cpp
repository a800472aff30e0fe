#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "jacobi/errors.hpp"
#include "jacobi/models.hpp"
#include "jacobi_cli/config.hpp"
#include "jacobi_cli/report.hpp"
#include "jacobi_cli/scenario.hpp"

namespace fs = std::filesystem;
using namespace jacobi::cli;

namespace {

// Output of one config: a report, or the config error that stopped it.
using Outcome = std::variant<RunReport, ConfigError>;

Outcome run_one(const std::string& path, const Overrides& overrides) {
  try {
    ScenarioConfig c = load_config(path);
    apply_overrides(c, overrides);
    return run_scenario(c);
  } catch (const ConfigError& e) {
    return ConfigError(path + "#" + e.path(), std::string(e.what()).substr(e.path().size() + 2));
  }
}

std::optional<std::string> env_out_dir() {
  const char* d = std::getenv("JACOBI_OUT_DIR");
  if (d == nullptr || *d == '\0') return std::nullopt;
  return std::string(d);
}

// Destination of report `name`; empty means stdout.
std::string destination(const std::string& out, bool many, const std::string& name,
                        const std::string& format) {
  std::string dir;
  if (!out.empty()) {
    if (!many && !fs::is_directory(out)) return out;
    dir = out;
  } else if (auto env = env_out_dir()) {
    dir = *env;
  } else {
    return {};
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir, ec.message());
  return (fs::path(dir) / (name + "." + format)).string();
}

int cmd_run(const std::vector<std::string>& configs, const std::string& out,
            const std::string& format, const Overrides& overrides) {
  std::vector<std::future<Outcome>> jobs;
  for (const auto& path : configs) {
    jobs.push_back(std::async(std::launch::async, run_one, path, overrides));
  }
  int code = exit_pass;
  bool config_failed = false;
  const bool many = configs.size() > 1;
  Json stdout_json = Json::array();
  std::string stdout_csv;
  for (auto& job : jobs) {
    Outcome o = job.get();
    if (auto* err = std::get_if<ConfigError>(&o)) {
      std::cerr << "config error: " << err->what() << "\n";
      config_failed = true;
      continue;
    }
    const RunReport& r = std::get<RunReport>(o);
    code = std::max(code, r.exit_code);
    int passed = 0;
    for (const auto& v : r.verdicts) passed += v.pass ? 1 : 0;
    std::cerr << r.name << ": " << passed << "/" << r.verdicts.size() << " verdicts pass";
    if (!r.errors.empty()) std::cerr << ", " << r.errors.size() << " errors";
    std::cerr << ", exit " << r.exit_code << "\n";
    for (const auto& e : r.errors) std::cerr << "  error: " << e << "\n";
    try {
      const std::string dest = destination(out, many, r.name, format);
      if (!dest.empty()) {
        write_report(r, format, dest);
      } else if (format == "json") {
        stdout_json.push_back(to_json(r));
      } else {
        stdout_csv += to_csv(r, stdout_csv.empty());
      }
    } catch (const IoError& e) {
      std::cerr << "i/o error: " << e.what() << "\n";
      return exit_io_error;
    }
  }
  if (format == "json" && !stdout_json.empty()) {
    std::cout << (stdout_json.size() == 1 ? stdout_json[0] : stdout_json).dump(2) << "\n";
  } else if (!stdout_csv.empty()) {
    std::cout << stdout_csv;
  }
  return config_failed ? exit_config_error : code;
}

int cmd_trace(const std::string& config, const std::string& out, int samples,
              const Overrides& overrides) {
  try {
    ScenarioConfig c = load_config(config);
    apply_overrides(c, overrides);
    const std::string csv = trace_csv(sigma_trace(c, samples));
    const std::string dest = destination(out, false, c.name + ".trace", "csv");
    if (dest.empty()) {
      std::cout << csv;
    } else {
      write_text(csv, dest);
    }
    return exit_pass;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << config << "#" << e.what() << "\n";
    return exit_config_error;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return exit_io_error;
  } catch (const jacobi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numerical_error;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval indices of Jacobi equations and the dimension bounds built on them"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<double> scan_step;
  std::optional<double> tol;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "Output file, or directory for several configs "
                                  "(default: $JACOBI_OUT_DIR, else stdout)");
    sub->add_option("--seed", seed, "Root seed, overrides the config");
    sub->add_option("--scan-step", scan_step, "Index scan step, overrides the config")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", tol, "Integrator relative tolerance (absolute = tol/100)")
        ->check(CLI::PositiveNumber);
  };

  std::vector<std::string> configs;
  auto* run = app.add_subcommand("run", "Run scenario configs and write reports");
  run->add_option("config", configs, "Scenario config files (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  add_common(run);

  app.add_subcommand("list-models", "List the built-in submersion models");

  std::string trace_config;
  int samples = 0;
  auto* trace = app.add_subcommand("trace", "Write (t, sigma_min) plot data for a config's subspace");
  trace->add_option("config", trace_config, "Scenario config file (JSON)")->required()->check(CLI::ExistingFile);
  trace->add_option("--samples", samples, "Number of samples (default 401)")->check(CLI::PositiveNumber);
  add_common(trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config_error;
  }

  const Overrides overrides{seed, scan_step, tol};
  if (run->parsed()) return cmd_run(configs, out, format, overrides);
  if (trace->parsed()) return cmd_trace(trace_config, out, samples, overrides);
  for (const auto& name : jacobi::model_names()) {
    const auto m = jacobi::make_model(name);
    std::cout << name << "  n=" << m.n << " k=" << m.k << " conj_radius_base="
              << m.constants.conj_radius_base << " shortest_closed_geodesic="
              << m.constants.shortest_closed_geodesic << "\n";
  }
  return exit_pass;
}

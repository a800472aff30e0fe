#include "jacobi_cli/config.hpp"

#include <filesystem>
#include <fstream>

#include "jacobi_cli/expr.hpp"

namespace jacobi::cli {
namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }

void require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(child(path, key), "required field is missing");
}

void require_one(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  std::string names;
  for (const char* k : keys) {
    if (obj.contains(k)) return;
    names += names.empty() ? k : std::string(" or ") + k;
  }
  throw ConfigError(path + "/" + *keys.begin(), "one of " + names + " is required");
}

void validate(const ScenarioConfig& c) {
  const Json& b = c.body;
  const std::string& s = c.scenario;
  auto model_or_system = [&] { require_one(b, {"system", "model"}, ""); };
  if (s == "index") {
    model_or_system();
    require(b, "subspace", "");
    require_one(b, {"interval", "intervals"}, "");
  } else if (s == "inequality") {
    model_or_system();
    require(b, "subspace", "");
    const std::string kind = string_field(b, "kind", "");
    if (kind == "lytchak") {
      require(b, "other", "");
      require(b, "interval", "");
    } else if (kind == "conj_upper") {
      require(b, "r", "");
      require(b, "c", "");
    } else if (kind == "delta_lower") {
      require(b, "r", "");
      require(b, "delta", "");
    } else if (kind == "periodic_upper") {
      require(b, "r", "");
    } else {
      throw ConfigError("/kind", "unknown inequality '" + kind +
                                     "' (lytchak, conj_upper, delta_lower, periodic_upper)");
    }
  } else if (s == "span") {
    model_or_system();
    require(b, "subspace", "");
    require(b, "delta", "");
  } else if (s == "transverse") {
    if (!b.contains("model") || b.contains("w")) {
      model_or_system();
      require(b, "subspace", "");
      require(b, "w", "");
      require_one(b, {"interval", "intervals"}, "");
    }
  } else if (s == "theorem_A" || s == "theorem_B" || s == "foliation") {
    require(b, "model", "");
  } else if (s == "submanifold") {
    model_or_system();
    require_one(b, {"tangent", "projector"}, "");
  } else if (s == "random_suite") {
    require(b, "kind", "");
    require(b, "trials", "");
  }
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"index",     "inequality", "span",
                                              "transverse", "theorem_A",  "theorem_B",
                                              "foliation", "submanifold", "random_suite"};
  return names;
}

IndexOptions NumericSettings::index() const {
  IndexOptions o;
  o.scan_step = scan_step;
  o.refine_tol = refine_tol;
  return o;
}

IntegratorOptions NumericSettings::integrator() const {
  IntegratorOptions o;
  o.rel_tol = rtol;
  o.abs_tol = rtol / 100.0;
  return o;
}

double read_number(const Json& value, const std::string& path) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    try {
      return eval_number(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
  }
  throw ConfigError(path, "expected a number or number expression");
}

double number_field(const Json& obj, const std::string& key, const std::string& path) {
  require(obj, key, path);
  return read_number(obj.at(key), child(path, key));
}

double number_field(const Json& obj, const std::string& key, const std::string& path,
                    double fallback) {
  return obj.contains(key) ? read_number(obj.at(key), child(path, key)) : fallback;
}

int int_field(const Json& obj, const std::string& key, const std::string& path) {
  require(obj, key, path);
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(child(path, key), "expected an integer");
  return v.get<int>();
}

int int_field(const Json& obj, const std::string& key, const std::string& path, int fallback) {
  return obj.contains(key) ? int_field(obj, key, path) : fallback;
}

std::string string_field(const Json& obj, const std::string& key, const std::string& path) {
  require(obj, key, path);
  const Json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(child(path, key), "expected a string");
  return v.get<std::string>();
}

std::string string_field(const Json& obj, const std::string& key, const std::string& path,
                         const std::string& fallback) {
  return obj.contains(key) ? string_field(obj, key, path) : fallback;
}

const Json& object_field(const Json& obj, const std::string& key, const std::string& path) {
  require(obj, key, path);
  const Json& v = obj.at(key);
  if (!v.is_object()) throw ConfigError(child(path, key), "expected an object");
  return v;
}

std::uint64_t read_seed(const Json& value, const std::string& path) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used, 0);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError(path, "expected a non-negative 64-bit seed");
}

IntervalSpec read_interval(const Json& value, const std::string& path) {
  IntervalSpec iv;
  if (value.is_string()) {
    std::string s = value.get<std::string>();
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) throw ConfigError(path, "empty interval");
    s = s.substr(first, last - first + 1);
    const auto comma = s.find(',');
    if (s.size() < 3 || comma == std::string::npos || (s.front() != '[' && s.front() != '(') ||
        (s.back() != ']' && s.back() != ')')) {
      throw ConfigError(path, "expected an interval like \"[0, pi)\"");
    }
    iv.include_lo = s.front() == '[';
    iv.include_hi = s.back() == ']';
    iv.lo = read_number(Json(s.substr(1, comma - 1)), path);
    iv.hi = read_number(Json(s.substr(comma + 1, s.size() - comma - 2)), path);
  } else if (value.is_array()) {
    if (value.size() != 2) throw ConfigError(path, "expected [lo, hi]");
    iv.lo = read_number(value[0], path + "/0");
    iv.hi = read_number(value[1], path + "/1");
  } else if (value.is_object()) {
    iv.lo = number_field(value, "lo", path);
    iv.hi = number_field(value, "hi", path);
    if (value.contains("include_lo")) iv.include_lo = value.at("include_lo").get<bool>();
    if (value.contains("include_hi")) iv.include_hi = value.at("include_hi").get<bool>();
  } else {
    throw ConfigError(path, "expected an interval");
  }
  if (!iv.valid()) throw ConfigError(path, "interval has lo > hi");
  return iv;
}

std::vector<IntervalSpec> read_intervals(const Json& obj, const std::string& path) {
  std::vector<IntervalSpec> out;
  if (obj.contains("intervals")) {
    const Json& list = obj.at("intervals");
    if (!list.is_array()) throw ConfigError(child(path, "intervals"), "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      out.push_back(read_interval(list[i], child(path, "intervals") + "/" + std::to_string(i)));
    }
  } else if (obj.contains("interval")) {
    out.push_back(read_interval(obj.at("interval"), child(path, "interval")));
  }
  return out;
}

ScenarioConfig parse_config(const Json& j) try {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  ScenarioConfig c;
  c.body = j;
  c.scenario = string_field(j, "scenario", "");
  bool known = false;
  for (const auto& n : scenario_names()) known = known || n == c.scenario;
  if (!known) throw ConfigError("/scenario", "unknown scenario '" + c.scenario + "'");
  c.name = string_field(j, "name", "", c.scenario);
  if (j.contains("seed")) c.seed = read_seed(j.at("seed"), "/seed");
  c.numerics.scan_step = number_field(j, "scan_step", "", 0.0);
  c.numerics.rtol = number_field(j, "tol", "", c.numerics.rtol);
  c.numerics.refine_tol = number_field(j, "refine_tol", "", c.numerics.refine_tol);
  if (c.numerics.scan_step < 0.0) throw ConfigError("/scan_step", "must be >= 0");
  if (!(c.numerics.rtol > 0.0)) throw ConfigError("/tol", "must be > 0");
  if (!(c.numerics.refine_tol > 0.0)) throw ConfigError("/refine_tol", "must be > 0");
  validate(c);
  return c;
} catch (const Json::exception& e) {
  throw ConfigError("", e.what());
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path, e.what());
  }
  if (j.is_object() && !j.contains("name")) j["name"] = std::filesystem::path(path).stem().string();
  return parse_config(j);
}

void apply_overrides(ScenarioConfig& config, const Overrides& o) {
  if (o.seed) {
    config.seed = o.seed;
    config.body["seed"] = *o.seed;
  }
  if (o.scan_step) {
    config.numerics.scan_step = *o.scan_step;
    config.body["scan_step"] = *o.scan_step;
  }
  if (o.tol) {
    config.numerics.rtol = *o.tol;
    config.body["tol"] = *o.tol;
  }
  if (config.scenario == "random_suite" && !config.seed) {
    throw ConfigError("/seed", "random_suite requires a seed");
  }
}

}  // namespace jacobi::cli

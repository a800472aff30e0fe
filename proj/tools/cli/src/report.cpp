#include "jacobi_cli/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace jacobi::cli {
namespace {

#ifndef JACOBI_VERSION
#define JACOBI_VERSION "unknown"
#endif

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_from(const Json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

VerdictStatus status_from(const std::string& s) {
  for (auto st : {VerdictStatus::pass, VerdictStatus::inequality_failed,
                  VerdictStatus::hypothesis_not_met, VerdictStatus::numerical_error}) {
    if (s == to_string(st)) return st;
  }
  throw std::invalid_argument("unknown verdict status '" + s + "'");
}

// Shortest round-trip form.
std::string fmt(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const char* tool_version() { return JACOBI_VERSION; }

int exit_code_for(const RunReport& report) {
  int code = report.errors.empty() ? exit_pass : exit_numerical_error;
  for (const auto& v : report.verdicts) {
    switch (v.status) {
      case VerdictStatus::pass: break;
      case VerdictStatus::inequality_failed: code = std::max(code, int(exit_inequality_failed)); break;
      case VerdictStatus::hypothesis_not_met: code = std::max(code, int(exit_hypothesis_not_met)); break;
      case VerdictStatus::numerical_error: code = std::max(code, int(exit_numerical_error)); break;
    }
  }
  return code;
}

Json to_json(const RunReport& r, bool include_timing) {
  Json j;
  j["tool"] = r.tool;
  j["version"] = r.version;
  j["scenario"] = r.scenario;
  j["name"] = r.name;
  j["config"] = r.config;
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  j["verdicts"] = Json::array();
  for (const auto& v : r.verdicts) {
    j["verdicts"].push_back({{"statement", v.statement},
                             {"lhs", number(v.lhs)},
                             {"rhs", number(v.rhs)},
                             {"slack", number(v.slack)},
                             {"pass", v.pass},
                             {"hypothesis_ok", v.hypothesis_ok},
                             {"status", to_string(v.status)},
                             {"notes", v.notes}});
  }
  j["indices"] = Json::array();
  for (const auto& ix : r.indices) {
    Json zeros = Json::array();
    for (const auto& z : ix.zeros) zeros.push_back({{"time", number(z.time)}, {"multiplicity", z.multiplicity}});
    j["indices"].push_back({{"subspace", ix.subspace_id},
                            {"interval",
                             {{"lo", number(ix.interval.lo)},
                              {"hi", number(ix.interval.hi)},
                              {"include_lo", ix.interval.include_lo},
                              {"include_hi", ix.interval.include_hi},
                              {"text", ix.interval.to_string()}}},
                            {"total", ix.total},
                            {"zeros", zeros},
                            {"scan_step", number(ix.scan_step)},
                            {"refine_tol", number(ix.refine_tol)},
                            {"snap_tol", number(ix.snap_tol)},
                            {"warnings", ix.warnings}});
  }
  j["metrics"] = Json::object();
  for (const auto& [k, v] : r.metrics) j["metrics"][k] = number(v);
  j["errors"] = r.errors;
  j["exit_code"] = r.exit_code;
  if (include_timing) j["timing"] = {{"seconds", r.seconds}};
  return j;
}

RunReport report_from_json(const Json& j) {
  RunReport r;
  r.tool = j.at("tool").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.scenario = j.at("scenario").get<std::string>();
  r.name = j.at("name").get<std::string>();
  r.config = j.at("config");
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& v : j.at("verdicts")) {
    VerdictRecord rec;
    rec.statement = v.at("statement").get<std::string>();
    rec.lhs = number_from(v.at("lhs"));
    rec.rhs = number_from(v.at("rhs"));
    rec.slack = number_from(v.at("slack"));
    rec.pass = v.at("pass").get<bool>();
    rec.hypothesis_ok = v.at("hypothesis_ok").get<bool>();
    rec.status = status_from(v.at("status").get<std::string>());
    rec.notes = v.at("notes").get<std::string>();
    r.verdicts.push_back(std::move(rec));
  }
  for (const auto& ix : j.at("indices")) {
    IndexReport rep;
    rep.subspace_id = ix.at("subspace").get<std::string>();
    const Json& iv = ix.at("interval");
    rep.interval = {number_from(iv.at("lo")), number_from(iv.at("hi")),
                    iv.at("include_lo").get<bool>(), iv.at("include_hi").get<bool>()};
    rep.total = ix.at("total").get<int>();
    for (const auto& z : ix.at("zeros")) {
      rep.zeros.push_back({number_from(z.at("time")), z.at("multiplicity").get<int>()});
    }
    rep.scan_step = number_from(ix.at("scan_step"));
    rep.refine_tol = number_from(ix.at("refine_tol"));
    rep.snap_tol = number_from(ix.at("snap_tol"));
    rep.warnings = ix.at("warnings").get<std::vector<std::string>>();
    r.indices.push_back(std::move(rep));
  }
  for (const auto& [k, v] : j.at("metrics").items()) r.metrics[k] = number_from(v);
  r.errors = j.at("errors").get<std::vector<std::string>>();
  r.exit_code = j.at("exit_code").get<int>();
  if (j.contains("timing")) r.seconds = j.at("timing").at("seconds").get<double>();
  return r;
}

std::string csv_header() { return "scenario,id,lhs,rhs,slack,pass,time,multiplicity\n"; }

std::string to_csv(const RunReport& r, bool header) {
  std::string out = header ? csv_header() : std::string();
  const std::string scen = csv_field(r.scenario);
  for (const auto& v : r.verdicts) {
    out += scen + "," + csv_field(v.statement) + "," + fmt(v.lhs) + "," + fmt(v.rhs) + "," +
           fmt(v.slack) + "," + (v.pass ? "true" : "false") + ",,\n";
  }
  for (const auto& ix : r.indices) {
    const std::string id = csv_field(ix.subspace_id + " " + ix.interval.to_string());
    for (const auto& z : ix.zeros) {
      out += scen + "," + id + ",,,,," + fmt(z.time) + "," + std::to_string(z.multiplicity) + "\n";
    }
  }
  return out;
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

void write_report(const RunReport& report, const std::string& format, const std::string& path) {
  if (format == "json") {
    write_text(to_json(report).dump(2) + "\n", path);
  } else if (format == "csv") {
    write_text(to_csv(report), path);
  } else {
    throw IoError(path, "unknown format '" + format + "'");
  }
}

}  // namespace jacobi::cli

#pragma once

#include <memory>
#include <optional>
#include <string>

#include "jacobi/field_space.hpp"
#include "jacobi/flow.hpp"
#include "jacobi/models.hpp"
#include "jacobi_cli/config.hpp"

namespace jacobi::cli {

/// Per-scenario build state. The model named by the top-level "model" key is
/// built once so every system and subspace taken from it shares one SystemPtr.
struct BuildContext {
  explicit BuildContext(const ScenarioConfig& config);
  const ScenarioConfig& config;
  std::optional<SubmersionModel> model;
  /// The scenario model or one named in `spec` ("model" key).
  const SubmersionModel& model_for(const Json& spec, const std::string& path);

 private:
  std::vector<std::unique_ptr<SubmersionModel>> extra_;
};

/// System specs:
///   {"type": "constant", "delta": 1, "m": 2}
///   {"type": "trig", "m": 3, "seed": 7, "norm_bound": 9, "harmonics": 2, "frequency": 1}
///   {"type": "positive", "m": 3, "delta": 1, "seed": 7, "bump_bound": 3}
///   {"type": "model", "model": "s3_s2", "part": "total" | "base"}
///   {"type": "sampled", "times": [...], "values": [[[row], ...], ...]}
/// Random systems fall back to the config seed.
SystemPtr build_system(const Json& spec, const std::string& path, BuildContext& ctx);

/// "system" if present, otherwise the total space of "model".
SystemPtr scenario_system(BuildContext& ctx);

/// Subspace specs:
///   {"type": "vanishing", "at": 0}
///   {"type": "span", "anchor": 0, "fields": [[v..., v'...], ...]}
///   {"type": "submersion"} / {"type": "holonomy"}     (needs "model")
///   {"type": "submanifold", "tangent": [[...], ...] | "vertical", "shape": [[...]]}
///   {"type": "random_lagrangian", "anchor": 0, "seed": 3}
/// An optional "id" names the subspace in reports.
FieldSubspace build_subspace(const Json& spec, const std::string& path, const SystemPtr& system,
                             BuildContext& ctx);

/// Orthogonal projector onto T N from "tangent" (basis rows or "vertical")
/// or "projector" in `obj`.
Matrix tangent_projector(const Json& obj, const std::string& path, int m,
                         const std::optional<SubmersionModel>& model);

Matrix read_matrix(const Json& value, const std::string& path);
Vector read_vector(const Json& value, const std::string& path);

/// Flow anchored at `anchor` covering [lo, hi] and the anchor.
FlowPtr build_flow(const SystemPtr& system, double anchor, double lo, double hi,
                   const NumericSettings& numerics);

}  // namespace jacobi::cli

#include "jacobi_cli/builders.hpp"

#include <algorithm>

#include "jacobi/errors.hpp"
#include "jacobi/linalg.hpp"
#include "jacobi/random.hpp"

namespace jacobi::cli {
namespace {

std::uint64_t seed_for(const Json& spec, const std::string& path, const ScenarioConfig& config) {
  if (spec.contains("seed")) return read_seed(spec.at("seed"), path + "/seed");
  if (config.seed) return *config.seed;
  throw ConfigError(path + "/seed", "random construction needs a seed");
}

SubmersionModel model_named(const std::string& name, const std::string& path) {
  try {
    return make_model(name);
  } catch (const ContractError&) {
    std::string known;
    for (const auto& n : model_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError(path, "unknown model '" + name + "' (" + known + ")");
  }
}

}  // namespace

BuildContext::BuildContext(const ScenarioConfig& c) : config(c) {
  if (c.body.contains("model")) model = model_named(string_field(c.body, "model", ""), "/model");
}

const SubmersionModel& BuildContext::model_for(const Json& spec, const std::string& path) {
  if (spec.contains("model")) {
    const std::string name = string_field(spec, "model", path);
    if (model && model->name == name) return *model;
    for (const auto& m : extra_) {
      if (m->name == name) return *m;
    }
    extra_.push_back(std::make_unique<SubmersionModel>(model_named(name, path + "/model")));
    return *extra_.back();
  }
  if (model) return *model;
  throw ConfigError(path + "/model", "a model is required");
}

Matrix read_matrix(const Json& value, const std::string& path) {
  if (!value.is_array() || value.empty() || !value[0].is_array()) {
    throw ConfigError(path, "expected a matrix as a list of rows");
  }
  const auto rows = static_cast<Eigen::Index>(value.size());
  const auto cols = static_cast<Eigen::Index>(value[0].size());
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = value[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError(path + "/" + std::to_string(i), "ragged matrix row");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = read_number(row[static_cast<std::size_t>(j)],
                              path + "/" + std::to_string(i) + "/" + std::to_string(j));
    }
  }
  return out;
}

Vector read_vector(const Json& value, const std::string& path) {
  if (!value.is_array()) throw ConfigError(path, "expected a list of numbers");
  Vector out(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = read_number(value[i], path + "/" + std::to_string(i));
  }
  return out;
}

SystemPtr build_system(const Json& spec, const std::string& path, BuildContext& ctx) {
  if (!spec.is_object()) throw ConfigError(path, "expected a system object");
  const std::string type = string_field(spec, "type", path);
  if (type == "constant") {
    const int m = int_field(spec, "m", path);
    if (m < 1) throw ConfigError(path + "/m", "must be >= 1");
    return constant_curvature_system(number_field(spec, "delta", path), m);
  }
  if (type == "trig" || type == "positive") {
    const int m = int_field(spec, "m", path);
    if (m < 1) throw ConfigError(path + "/m", "must be >= 1");
    Rng rng(seed_for(spec, path, ctx.config));
    const int harmonics = int_field(spec, "harmonics", path, 2);
    const double frequency = number_field(spec, "frequency", path, 1.0);
    if (type == "trig") {
      return random_trig_system(m, rng, number_field(spec, "norm_bound", path, 9.0), harmonics,
                                frequency);
    }
    return random_positive_system(m, number_field(spec, "delta", path), rng,
                                  number_field(spec, "bump_bound", path, 3.0), harmonics,
                                  frequency);
  }
  if (type == "model") {
    const SubmersionModel& model = ctx.model_for(spec, path);
    const std::string part = string_field(spec, "part", path, "total");
    if (part == "total") return model.total;
    if (part == "base") return model.base;
    throw ConfigError(path + "/part", "expected total or base");
  }
  if (type == "sampled") {
    const Json& times = spec.contains("times") ? spec.at("times") : Json();
    const Json& values = spec.contains("values") ? spec.at("values") : Json();
    if (!times.is_array() || !values.is_array() || times.size() != values.size()) {
      throw ConfigError(path, "sampled systems need equally long times and values");
    }
    std::vector<double> t;
    std::vector<Matrix> v;
    for (std::size_t i = 0; i < times.size(); ++i) {
      t.push_back(read_number(times[i], path + "/times/" + std::to_string(i)));
      v.push_back(read_matrix(values[i], path + "/values/" + std::to_string(i)));
    }
    try {
      return JacobiSystem::sampled(std::move(t), std::move(v),
                                   number_field(spec, "symmetry_tol", path, 1e-10));
    } catch (const ContractError& e) {
      throw ConfigError(path, e.what());
    }
  }
  throw ConfigError(path + "/type", "unknown system type '" + type +
                                        "' (constant, trig, positive, model, sampled)");
}

SystemPtr scenario_system(BuildContext& ctx) {
  if (ctx.config.body.contains("system")) return build_system(ctx.config.body.at("system"), "/system", ctx);
  if (ctx.model) return ctx.model->total;
  throw ConfigError("/system", "a system or model is required");
}

Matrix tangent_projector(const Json& obj, const std::string& path, int m,
                         const std::optional<SubmersionModel>& model) {
  if (obj.contains("projector")) {
    const Matrix p = read_matrix(obj.at("projector"), path + "/projector");
    if (p.rows() != m || p.cols() != m) throw ConfigError(path + "/projector", "wrong shape");
    return p;
  }
  if (!obj.contains("tangent")) throw ConfigError(path + "/tangent", "required field is missing");
  const Json& t = obj.at("tangent");
  Matrix basis;
  if (t.is_string() && t.get<std::string>() == "vertical") {
    if (!model) throw ConfigError(path + "/tangent", "\"vertical\" needs a model");
    basis = model->vertical_basis(0.0);
  } else if (t.is_array() && t.empty()) {
    return Matrix::Zero(m, m);
  } else {
    basis = read_matrix(t, path + "/tangent").transpose();
  }
  if (basis.rows() != m) throw ConfigError(path + "/tangent", "vectors must have length m");
  const Matrix q = orthonormal_columns(basis);
  return q * q.transpose();
}

FieldSubspace build_subspace(const Json& spec, const std::string& path, const SystemPtr& system,
                             BuildContext& ctx) {
  if (!spec.is_object()) throw ConfigError(path, "expected a subspace object");
  const std::string type = string_field(spec, "type", path);
  const int m = system->dim();
  auto named = [&](FieldSubspace s) {
    return spec.contains("id") ? s.with_id(string_field(spec, "id", path)) : s;
  };
  try {
    if (type == "vanishing") return named(vanishing_lagrangian(system, number_field(spec, "at", path, 0.0)));
    if (type == "span") {
      const Json& fields = spec.contains("fields") ? spec.at("fields") : Json();
      if (!fields.is_array() || fields.empty()) throw ConfigError(path + "/fields", "expected a list of fields");
      Matrix cols(2 * m, static_cast<Eigen::Index>(fields.size()));
      for (std::size_t j = 0; j < fields.size(); ++j) {
        const std::string fp = path + "/fields/" + std::to_string(j);
        Vector v;
        if (fields[j].is_object()) {
          v.resize(2 * m);
          v << read_vector(fields[j].at("value"), fp + "/value"),
              read_vector(fields[j].at("derivative"), fp + "/derivative");
        } else {
          v = read_vector(fields[j], fp);
        }
        if (v.size() != 2 * m) throw ConfigError(fp, "a field needs 2m = " + std::to_string(2 * m) + " entries");
        cols.col(static_cast<Eigen::Index>(j)) = v;
      }
      return named(FieldSubspace::from_matrix(system, number_field(spec, "anchor", path, 0.0), cols));
    }
    if (type == "submersion" || type == "holonomy") {
      const SubmersionModel& model = ctx.model_for(spec, path);
      if (model.total != system) throw ConfigError(path, type + " subspaces live on the model's total system");
      return named(type == "submersion" ? submersion_lagrangian(model) : holonomy_subspace(model));
    }
    if (type == "submanifold") {
      std::optional<SubmersionModel> model;
      if (spec.contains("model") || ctx.model) model = ctx.model_for(spec, path);
      const Matrix p = tangent_projector(spec, path, m, model);
      const Matrix shape = spec.contains("shape") ? read_matrix(spec.at("shape"), path + "/shape")
                                                  : Matrix(Matrix::Zero(m, m));
      return named(submanifold_lagrangian(system, p, shape, number_field(spec, "anchor", path, 0.0)));
    }
    if (type == "random_lagrangian") {
      Rng rng(seed_for(spec, path, ctx.config));
      return named(random_lagrangian(system, number_field(spec, "anchor", path, 0.0), rng));
    }
  } catch (const ContractError& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path + "/type", "unknown subspace type '" + type +
                                        "' (vanishing, span, submersion, holonomy, submanifold, "
                                        "random_lagrangian)");
}

FlowPtr build_flow(const SystemPtr& system, double anchor, double lo, double hi,
                   const NumericSettings& numerics) {
  const Span span{std::min(lo, anchor), std::max(hi, anchor)};
  return FundamentalSolution::make(system, anchor, span, numerics.integrator());
}

}  // namespace jacobi::cli

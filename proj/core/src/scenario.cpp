#include "zonoreach/scenario.hpp"

#include <cmath>

#include "json.hpp"
#include "zonoreach/serialize.hpp"

namespace zonoreach {

namespace {

using nlohmann::json;

Matrix matrix_from(const json& rows, const char* what) {
  if (!rows.is_array()) throw ParameterError(std::string(what) + ": expected a nested array.");
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r > 0 ? static_cast<Eigen::Index>(rows[0].size()) : 0;
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) {
      throw ParameterError(std::string(what) + ": rows must have equal length.");
    }
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return m;
}

json matrix_to(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Zonotope zonotope_from(const json& doc, const char* what) {
  if (!doc.contains("center") || !doc.contains("generators")) {
    throw ParameterError(std::string(what) + ": zonotopes need 'center' and 'generators'.");
  }
  const Matrix c = matrix_from(json::array({doc["center"]}), what);
  Matrix g = matrix_from(doc["generators"], what);
  if (g.size() == 0) g = Matrix(c.cols(), 0);
  return Zonotope(c.row(0).transpose(), std::move(g));
}

json zonotope_to(const Zonotope& z) {
  json center = json::array();
  for (Eigen::Index i = 0; i < z.center.size(); ++i) center.push_back(z.center(i));
  return json{{"center", std::move(center)}, {"generators", matrix_to(z.generators)}};
}

}  // namespace

RunOptions Scenario::run_options() const {
  RunOptions options;
  options.rho = rho;
  options.horizon = horizon;
  options.use_intersection = use_intersection;
  return options;
}

Scenario scenario_from_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParameterError("scenario: invalid JSON document.");
  if (!doc.contains("seed")) throw ParameterError("scenario: 'seed' is mandatory.");

  Scenario s;
  s.name = doc.value("name", std::string("scenario"));
  s.seed = doc["seed"].get<std::uint64_t>();

  if (!doc.contains("system")) throw ParameterError("scenario: 'system' is mandatory.");
  const json& system = doc["system"];
  Matrix A = matrix_from(system.at("A"), "system.A");
  Matrix B = matrix_from(system.at("B"), "system.B");
  if (!doc.contains("noise")) throw ParameterError("scenario: 'noise' is mandatory.");
  s.system = TrueSystem(std::move(A), std::move(B), zonotope_from(doc["noise"], "noise"));

  if (!doc.contains("X0") || !doc.contains("U")) {
    throw ParameterError("scenario: 'X0' and 'U' are mandatory.");
  }
  s.x0 = zonotope_from(doc["X0"], "X0");
  s.u = zonotope_from(doc["U"], "U");
  require_dims(s.x0.dim() == s.system.state_dim(), "scenario: X0 must match the system dimension.");
  require_dims(s.u.dim() == s.system.input_dim(), "scenario: U must match the input dimension.");

  if (doc.contains("data")) {
    const json& data = doc["data"];
    s.data.experiments = data.value("experiments", 1);
    s.data.samples_per_experiment = data.value("samples_per_experiment", 100);
    s.data.seed = data.value("seed", Rng::derive(s.seed, 0xD47AULL));
    if (data.contains("input_range")) {
      s.data.input_range = zonotope_from(data["input_range"], "data.input_range");
      require_dims(s.data.input_range.dim() == s.system.input_dim(),
                   "scenario: data.input_range must match the input dimension.");
    }
  } else {
    s.data.seed = Rng::derive(s.seed, 0xD47AULL);
  }

  s.horizon = doc.value("horizon", 1);
  require_param(s.horizon >= 0, "scenario: horizon must be non-negative.");
  if (doc.contains("rho")) {
    if (doc["rho"].is_string()) {
      require_param(doc["rho"].get<std::string>() == "inf",
                    "scenario: rho must be a number or \"inf\".");
      s.rho = std::numeric_limits<double>::infinity();
    } else {
      s.rho = doc["rho"].get<double>();
      require_param(s.rho >= 1.0, "scenario: rho must be at least 1.");
    }
  }
  s.method = doc.value("method", std::string("identity"));
  s.use_intersection = doc.value("use_intersection", false);

  if (doc.contains("select")) {
    const json& sel = doc["select"];
    s.select.givens.max_depth = sel.value("givens_depth", s.select.givens.max_depth);
    s.select.givens.epsilon = sel.value("givens_epsilon", s.select.givens.epsilon);
    s.select.trust_region.max_iterations =
        sel.value("tr_max_iterations", s.select.trust_region.max_iterations);
    s.select.trust_region.grad_tol = sel.value("tr_grad_tol", s.select.trust_region.grad_tol);
    s.select.random_starts = sel.value("random_starts", s.select.random_starts);
  }
  s.select.seed = Rng::derive(s.seed, 0x5E1EC7ULL);

  if (doc.contains("volume")) {
    const json& vol = doc["volume"];
    s.volume.subset_cap = vol.value("subset_cap", s.volume.subset_cap);
    s.volume.projected_dims = vol.value("projected_dims", s.volume.projected_dims);
    s.volume.mc_samples = vol.value("mc_samples", s.volume.mc_samples);
  }
  s.volume.mc_seed = Rng::derive(s.seed, 0xACC0ULL);
  return s;
}

std::string to_json(const Scenario& s) {
  json doc{{"name", s.name},
           {"seed", s.seed},
           {"system", {{"A", matrix_to(s.system.A)}, {"B", matrix_to(s.system.B)}}},
           {"noise", zonotope_to(s.system.noise)},
           {"X0", zonotope_to(s.x0)},
           {"U", zonotope_to(s.u)},
           {"data",
            {{"experiments", s.data.experiments},
             {"samples_per_experiment", s.data.samples_per_experiment},
             {"seed", s.data.seed}}},
           {"horizon", s.horizon},
           {"method", s.method},
           {"use_intersection", s.use_intersection},
           {"select",
            {{"givens_depth", s.select.givens.max_depth},
             {"givens_epsilon", s.select.givens.epsilon},
             {"tr_max_iterations", s.select.trust_region.max_iterations},
             {"tr_grad_tol", s.select.trust_region.grad_tol},
             {"random_starts", s.select.random_starts}}},
           {"volume",
            {{"subset_cap", s.volume.subset_cap},
             {"projected_dims", s.volume.projected_dims},
             {"mc_samples", s.volume.mc_samples}}}};
  if (s.data.input_range.dim() > 0) {
    doc["data"]["input_range"] = zonotope_to(s.data.input_range);
  }
  if (std::isinf(s.rho)) {
    doc["rho"] = "inf";
  } else {
    doc["rho"] = s.rho;
  }
  return doc.dump(2);
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(read_text_file(path));
}

}  // namespace zonoreach

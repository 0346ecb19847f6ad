#include "zonoreach/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace zonoreach {

namespace {

using nlohmann::json;

json matrix_to_array(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_array(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_array(const json& rows, const char* what) {
  if (!rows.is_array()) throw ParameterError(std::string(what) + ": expected a nested array.");
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  if (r == 0) return Matrix(0, 0);
  const Eigen::Index c = static_cast<Eigen::Index>(rows[0].size());
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

Vector vector_from_array(const json& arr, const char* what) {
  if (!arr.is_array()) throw ParameterError(std::string(what) + ": expected an array.");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = arr[static_cast<std::size_t>(i)].get<double>();
  return v;
}

json parse(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParameterError("serialize: invalid JSON document.");
  return doc;
}

const json& field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParameterError(std::string("serialize: missing field '") + key + "'.");
  }
  return *it;
}

json zonotope_to_value(const Zonotope& z) {
  return json{{"center", vector_to_array(z.center)},
              {"generators", matrix_to_array(z.generators)}};
}

json constrained_to_value(const ConstrainedZonotope& cz) {
  return json{{"center", vector_to_array(cz.center)},
              {"generators", matrix_to_array(cz.generators)},
              {"Aeq", matrix_to_array(cz.Aeq)},
              {"beq", vector_to_array(cz.beq)}};
}

Zonotope zonotope_from_value(const json& doc) {
  const Vector c = vector_from_array(field(doc, "center"), "center");
  Matrix g = matrix_from_array(field(doc, "generators"), "generators");
  if (g.size() == 0) g = Matrix(c.size(), 0);
  return Zonotope(c, std::move(g));
}

ConstrainedZonotope constrained_from_value(const json& doc) {
  const Vector c = vector_from_array(field(doc, "center"), "center");
  Matrix g = matrix_from_array(field(doc, "generators"), "generators");
  if (g.size() == 0) g = Matrix(c.size(), 0);
  Matrix a = matrix_from_array(field(doc, "Aeq"), "Aeq");
  if (a.size() == 0) a = Matrix(0, g.cols());
  return ConstrainedZonotope(c, std::move(g), std::move(a),
                             vector_from_array(field(doc, "beq"), "beq"));
}

json matrix_zonotope_to_value(const MatrixZonotope& mz) {
  json doc{{"center", matrix_to_array(mz.center())}};
  if (mz.factored()) {
    json left = json::array(), right = json::array();
    for (const Vector& l : mz.left_factors()) left.push_back(vector_to_array(l));
    for (const Vector& r : mz.right_factors()) right.push_back(vector_to_array(r));
    doc["left"] = std::move(left);
    doc["right"] = std::move(right);
  } else {
    json gens = json::array();
    for (int k = 0; k < mz.generator_count(); ++k) gens.push_back(matrix_to_array(mz.generator(k)));
    doc["gen_list"] = std::move(gens);
  }
  return doc;
}

MatrixZonotope matrix_zonotope_from_value(const json& doc) {
  Matrix center = matrix_from_array(field(doc, "center"), "center");
  if (doc.contains("left") || doc.contains("right")) {
    std::vector<Vector> left, right;
    for (const json& l : field(doc, "left")) left.push_back(vector_from_array(l, "left"));
    for (const json& r : field(doc, "right")) right.push_back(vector_from_array(r, "right"));
    return MatrixZonotope::rank_one(std::move(center), std::move(left), std::move(right));
  }
  std::vector<Matrix> gens;
  for (const json& g : field(doc, "gen_list")) gens.push_back(matrix_from_array(g, "gen_list"));
  return MatrixZonotope::dense(std::move(center), std::move(gens));
}

json volume_to_value(const VolumeResult& v) {
  json doc{{"value", v.value},
           {"method", v.method_label()},
           {"subsets", v.subsets},
           {"sample_count", v.sample_count},
           {"std_error", v.std_error}};
  if (v.basis.size() > 0) doc["basis"] = matrix_to_array(v.basis);
  return doc;
}

json step_set_to_value(const StepSet& s) {
  if (const auto* z = std::get_if<Zonotope>(&s)) {
    json doc = zonotope_to_value(*z);
    doc["kind"] = "zonotope";
    return doc;
  }
  json doc = constrained_to_value(std::get<ConstrainedZonotope>(s));
  doc["kind"] = "constrained";
  return doc;
}

StepSet step_set_from_value(const json& doc) {
  const std::string kind = field(doc, "kind").get<std::string>();
  if (kind == "zonotope") return zonotope_from_value(doc);
  if (kind == "constrained") return constrained_from_value(doc);
  throw ParameterError("serialize: unknown step-set kind '" + kind + "'.");
}

}  // namespace

std::string to_json(const Zonotope& z) { return zonotope_to_value(z).dump(); }
std::string to_json(const ConstrainedZonotope& cz) { return constrained_to_value(cz).dump(); }
std::string to_json(const MatrixZonotope& mz) { return matrix_zonotope_to_value(mz).dump(); }

std::string to_json(const ReductionReport& report) {
  return json{{"kept", report.kept},
              {"discarded", report.discarded},
              {"box_halfwidths", vector_to_array(report.box_halfwidths)},
              {"box_volume", report.box_volume},
              {"hadamard_bound", report.hadamard_bound}}
      .dump();
}

std::string to_json(const VolumeResult& volume) { return volume_to_value(volume).dump(); }

std::string to_json(const IdentifiedModel& model) {
  return json{{"msigma", matrix_zonotope_to_value(model.msigma)},
              {"H", matrix_to_array(model.H)},
              {"sigma_ratio", model.sigma_ratio}}
      .dump();
}

std::string to_json(const ReachRun& reach) {
  json sets = json::array();
  for (const StepSet& s : reach.sets) sets.push_back(step_set_to_value(s));
  json volumes = json::array();
  for (const VolumeResult& v : reach.volumes) volumes.push_back(volume_to_value(v));
  return json{{"label", reach.label},
              {"P", matrix_to_array(reach.P)},
              {"sets", std::move(sets)},
              {"counts", reach.counts},
              {"raw_counts", reach.raw_counts},
              {"volumes", std::move(volumes)},
              {"step_seconds", reach.step_seconds},
              {"total_seconds", reach.total_seconds},
              {"constraint_cap_hit", reach.constraint_cap_hit}}
      .dump();
}

Zonotope zonotope_from_json(const std::string& text) { return zonotope_from_value(parse(text)); }

ConstrainedZonotope constrained_from_json(const std::string& text) {
  return constrained_from_value(parse(text));
}

MatrixZonotope matrix_zonotope_from_json(const std::string& text) {
  return matrix_zonotope_from_value(parse(text));
}

IdentifiedModel model_from_json(const std::string& text) {
  const json doc = parse(text);
  IdentifiedModel model;
  model.msigma = matrix_zonotope_from_value(field(doc, "msigma"));
  model.H = matrix_from_array(field(doc, "H"), "H");
  model.sigma_ratio = field(doc, "sigma_ratio").get<double>();
  return model;
}

ReachRun reach_run_from_json(const std::string& text) {
  const json doc = parse(text);
  ReachRun reach;
  for (const json& s : field(doc, "sets")) reach.sets.push_back(step_set_from_value(s));
  if (doc.contains("volumes")) {
    for (const json& v : doc["volumes"]) {
      VolumeResult volume;
      volume.value = field(v, "value").get<double>();
      const std::string label = field(v, "method").get<std::string>();
      volume.method = label == "exact"         ? VolumeResult::Method::exact
                      : label == "projected3d" ? VolumeResult::Method::projected3d
                                               : VolumeResult::Method::montecarlo;
      volume.subsets = field(v, "subsets").get<std::int64_t>();
      volume.sample_count = field(v, "sample_count").get<std::int64_t>();
      volume.std_error = field(v, "std_error").get<double>();
      reach.volumes.push_back(volume);
    }
  }
  reach.label = field(doc, "label").get<std::string>();
  reach.P = matrix_from_array(field(doc, "P"), "P");
  reach.counts = field(doc, "counts").get<std::vector<long long>>();
  reach.raw_counts = field(doc, "raw_counts").get<std::vector<long long>>();
  reach.step_seconds = field(doc, "step_seconds").get<std::vector<double>>();
  reach.total_seconds = field(doc, "total_seconds").get<double>();
  reach.constraint_cap_hit = field(doc, "constraint_cap_hit").get<bool>();
  return reach;
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  char buffer[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", m(i, j));
      out += buffer;
      out += j + 1 < m.cols() ? ',' : '\n';
    }
  }
  return out;
}

Matrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && rows.front().size() != row.size()) {
      throw ParameterError("matrix_from_csv: ragged rows.");
    }
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

std::string trace_to_csv(const OptTrace& trace) {
  std::string out = "step,objective,radius,orthogonality\n";
  char buffer[128];
  for (std::size_t i = 0; i < trace.objective.size(); ++i) {
    std::snprintf(buffer, sizeof(buffer), "%zu,%.17g,%.17g,%.17g\n", i, trace.objective[i],
                  i < trace.radius.size() ? trace.radius[i] : 0.0,
                  i < trace.orthogonality.size() ? trace.orthogonality[i] : 0.0);
    out += buffer;
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParameterError("write_text_file: cannot open '" + path + "' for writing.");
  file << content;
  if (!file.good()) throw ParameterError("write_text_file: failed writing '" + path + "'.");
}

std::string read_text_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParameterError("read_text_file: cannot open '" + path + "'.");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

}  // namespace zonoreach

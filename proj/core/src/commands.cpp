#include "zonoreach/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "zonoreach/fixtures.hpp"
#include "zonoreach/reduction.hpp"
#include "zonoreach/serialize.hpp"
#include "zonoreach/svg.hpp"
#include "zonoreach/volume.hpp"

namespace zonoreach {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

Matrix columns_at(const Matrix& g, const std::vector<int>& indices) {
  Matrix out(g.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = g.col(indices[k]);
  return out;
}

json matrix_value(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// The reporting policy for one stored step set: exact while affordable,
/// then the projection onto the first `projected_dims` coordinates (so
/// every run is scored in the same frame), Monte-Carlo as the backstop
/// and always for constrained sets.
VolumeResult step_volume(const StepSet& set, const VolumeConfig& config,
                         std::uint64_t seed) {
  if (std::holds_alternative<ConstrainedZonotope>(set)) {
    Rng rng(seed);
    return mc_volume(std::get<ConstrainedZonotope>(set), config.mc_samples, rng);
  }
  const Zonotope& z = std::get<Zonotope>(set);
  const int n = z.dim();
  if (n <= config.projected_dims) {
    try {
      return exact_volume(z, config.subset_cap);
    } catch (const BudgetError&) {
      Rng rng(seed);
      return mc_volume(z, config.mc_samples, rng);
    }
  }
  const Matrix basis = Matrix::Identity(n, n).leftCols(config.projected_dims);
  try {
    return projected_volume(z, basis, config.subset_cap);
  } catch (const BudgetError&) {
    Rng rng(seed);
    VolumeResult mc = mc_volume(linear_map(basis.transpose(), z), config.mc_samples, rng);
    mc.basis = basis;
    return mc;
  }
}

struct Pipeline {
  DataSet data;
  IdentifiedModel model;
};

Pipeline identify_pipeline(const Scenario& scenario) {
  Pipeline p{generate_data(scenario.system, scenario.x0, scenario.u, scenario.data), {}};
  p.model = identify(p.data, scenario.system.noise);
  return p;
}

bool method_needs_objective(const std::string& method) {
  return method == "givens" || method == "givens_sym" || method == "riemannian";
}

std::function<double(const Matrix&)> make_objective(const Scenario& scenario,
                                                    const IdentifiedModel& model) {
  if (!method_needs_objective(scenario.method)) return {};
  Objective objective(model, scenario.x0, scenario.u, scenario.system.noise,
                      scenario.run_options(), scenario.volume);
  return [objective = std::move(objective)](const Matrix& P) { return objective(P); };
}

struct Selection {
  SelectResult result;
  OptTrace trace;
  double seconds = 0.0;
};

Selection run_selection(const Scenario& scenario, const IdentifiedModel& model) {
  Selection sel;
  const auto objective = make_objective(scenario, model);
  const auto t0 = Clock::now();
  sel.result = select(scenario.method, model.msigma, objective, scenario.select, &sel.trace);
  sel.seconds = seconds_since(t0);
  return sel;
}

std::string run_label(const Scenario& scenario) {
  return scenario.use_intersection ? scenario.method + "+intersect" : scenario.method;
}

/// Outer polygon of a constrained zonotope's (dim_x, dim_y) projection:
/// the intersection of `dirs` support half-planes, vertex k solving the
/// two adjacent support equalities.
std::vector<Eigen::Vector2d> cz_outline(const ConstrainedZonotope& cz, int dim_x,
                                        int dim_y, int dirs = 64) {
  require_param(dim_x >= 0 && dim_x < cz.dim() && dim_y >= 0 && dim_y < cz.dim() &&
                    dim_x != dim_y,
                "cz_outline: projection coordinates are out of range.");
  std::vector<double> angles(dirs), values(dirs);
  for (int k = 0; k < dirs; ++k) {
    angles[k] = 2.0 * std::numbers::pi * k / dirs;
    Vector d = Vector::Zero(cz.dim());
    d(dim_x) = std::cos(angles[k]);
    d(dim_y) = std::sin(angles[k]);
    values[k] = cz_support(cz, d);
  }
  std::vector<Eigen::Vector2d> polygon(dirs);
  for (int k = 0; k < dirs; ++k) {
    const int k1 = (k + 1) % dirs;
    Eigen::Matrix2d lines;
    lines << std::cos(angles[k]), std::sin(angles[k]),
        std::cos(angles[k1]), std::sin(angles[k1]);
    polygon[k] = lines.inverse() * Eigen::Vector2d(values[k], values[k1]);
  }
  return polygon;
}

const char* kPalette[] = {"#888888", "#17becf", "#d62728", "#1f77b4",
                          "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

void fill_volumes(ReachRun& run, const VolumeConfig& config) {
  run.volumes.clear();
  run.volumes.reserve(run.sets.size());
  for (std::size_t k = 0; k < run.sets.size(); ++k)
    run.volumes.push_back(step_volume(run.sets[k], config, Rng::derive(config.mc_seed, k)));
}

std::vector<std::string> cmd_gen_data(const Scenario& scenario,
                                      const std::string& out_dir) {
  ensure_dir(out_dir);
  const DataSet data = generate_data(scenario.system, scenario.x0, scenario.u, scenario.data);

  const std::vector<std::pair<std::string, const Matrix*>> tables = {
      {"xminus.csv", &data.Xminus},
      {"xplus.csv", &data.Xplus},
      {"uminus.csv", &data.Uminus},
      {"noise.csv", &data.noise}};
  std::vector<std::string> written;
  json files;
  for (const auto& [name, matrix] : tables) {
    const std::string path = join_path(out_dir, name);
    write_text_file(path, matrix_to_csv(*matrix));
    files[name.substr(0, name.find('.'))] = name;
    written.push_back(path);
  }

  json manifest;
  manifest["scenario"] = scenario.name;
  manifest["seed"] = scenario.seed;
  manifest["data_seed"] = scenario.data.seed;
  manifest["experiments"] = scenario.data.experiments;
  manifest["samples_per_experiment"] = scenario.data.samples_per_experiment;
  manifest["experiment_lengths"] = data.experiment_lengths;
  manifest["total_samples"] = data.total_samples();
  manifest["input_range_overridden"] = scenario.data.input_range.dim() > 0;
  manifest["files"] = files;
  const std::string manifest_path = join_path(out_dir, "manifest.json");
  write_text_file(manifest_path, manifest.dump(2) + "\n");
  written.push_back(manifest_path);

  std::cout << "gen-data: " << data.total_samples() << " samples over "
            << data.experiment_lengths.size() << " experiment(s) -> " << out_dir << "\n";
  return written;
}

std::vector<std::string> cmd_identify(const Scenario& scenario,
                                      const std::string& out_dir) {
  ensure_dir(out_dir);
  const Pipeline pipe = identify_pipeline(scenario);
  const std::string path = join_path(out_dir, "model.json");
  write_text_file(path, to_json(pipe.model) + "\n");
  std::cout << "identify: " << pipe.model.msigma.generator_count()
            << " generators, sigma ratio " << pipe.model.sigma_ratio << " -> " << path
            << "\n";
  return {path};
}

std::vector<std::string> cmd_select_p(const Scenario& scenario,
                                      const std::string& out_dir) {
  ensure_dir(out_dir);
  const Pipeline pipe = identify_pipeline(scenario);
  const Selection sel = run_selection(scenario, pipe.model);

  json doc;
  doc["method"] = scenario.method;
  doc["P"] = matrix_value(sel.result.P);
  doc["dk_bound"] = sel.result.dk_bound;
  doc["warnings"] = sel.result.warnings;
  doc["select_seconds"] = sel.seconds;

  std::vector<std::string> written;
  const std::string path = join_path(out_dir, "p_" + scenario.method + ".json");
  write_text_file(path, doc.dump(2) + "\n");
  written.push_back(path);
  if (!sel.trace.objective.empty()) {
    const std::string trace_path = join_path(out_dir, "trace_" + scenario.method + ".csv");
    write_text_file(trace_path, trace_to_csv(sel.trace));
    written.push_back(trace_path);
  }
  std::cout << "select-p: method " << scenario.method << " in " << sel.seconds
            << " s -> " << path << "\n";
  for (const auto& w : sel.result.warnings) std::cout << "  warning: " << w << "\n";
  return written;
}

std::vector<std::string> cmd_reach(const Scenario& scenario,
                                   const std::string& out_dir) {
  ensure_dir(out_dir);
  const Pipeline pipe = identify_pipeline(scenario);
  const Selection sel = run_selection(scenario, pipe.model);

  ReachRun reach = run(pipe.model, scenario.x0, scenario.u, scenario.system.noise,
                       sel.result.P, scenario.run_options());
  reach.label = run_label(scenario);
  fill_volumes(reach, scenario.volume);

  std::vector<std::string> written;
  const std::string path = join_path(out_dir, "run_" + run_label(scenario) + ".json");
  write_text_file(path, to_json(reach) + "\n");
  written.push_back(path);
  if (!sel.trace.objective.empty()) {
    const std::string trace_path = join_path(out_dir, "trace_" + scenario.method + ".csv");
    write_text_file(trace_path, trace_to_csv(sel.trace));
    written.push_back(trace_path);
  }

  std::cout << "reach: method " << reach.label << ", horizon " << scenario.horizon
            << ", select " << sel.seconds << " s, run " << reach.total_seconds << " s\n";
  for (std::size_t k = 0; k < reach.sets.size(); ++k) {
    std::cout << "  step " << k << ": " << reach.counts[k] << " generators";
    if (k >= 1) std::cout << " (raw " << reach.raw_counts[k - 1] << ")";
    std::cout << ", volume " << reach.volumes[k].value << " ["
              << reach.volumes[k].method_label() << "]\n";
  }
  if (reach.constraint_cap_hit)
    std::cout << "  note: intersection constraints exceeded the cap on some steps\n";
  for (const auto& w : sel.result.warnings) std::cout << "  warning: " << w << "\n";
  return written;
}

std::vector<std::string> cmd_compare(const Scenario& scenario,
                                     const std::vector<std::string>& methods,
                                     const std::string& out_dir) {
  require_param(!methods.empty(), "compare: at least one method is required.");
  ensure_dir(out_dir);
  const Pipeline pipe = identify_pipeline(scenario);

  ReachRun truth = model_reach(scenario.system, scenario.x0, scenario.u, scenario.horizon);
  fill_volumes(truth, scenario.volume);
  const double truth_volume = truth.volumes.back().value;
  const int n = scenario.system.state_dim();
  const double scale_exponent = n / double(std::min(n, scenario.volume.projected_dims));

  struct Row {
    std::string method;
    double select_seconds = 0.0;
    double run_seconds = 0.0;
    double volume = 0.0;
    std::string volume_method;
    std::vector<std::string> warnings;
  };

  const auto evaluate = [&scenario, &pipe](const std::string& method) {
    Scenario variant = scenario;
    variant.method = method;
    const Selection sel = run_selection(variant, pipe.model);
    ReachRun reach = run(pipe.model, variant.x0, variant.u, variant.system.noise,
                         sel.result.P, variant.run_options());
    fill_volumes(reach, variant.volume);
    Row row;
    row.method = method;
    row.select_seconds = sel.seconds;
    row.run_seconds = reach.total_seconds;
    row.volume = reach.volumes.back().value;
    row.volume_method = reach.volumes.back().method_label();
    row.warnings = sel.result.warnings;
    return row;
  };

  std::vector<std::future<Row>> futures;
  futures.reserve(methods.size());
  for (const auto& method : methods)
    futures.push_back(std::async(std::launch::async, evaluate, method));

  std::vector<Row> rows;
  rows.push_back({"model", 0.0, truth.total_seconds, truth_volume,
                  truth.volumes.back().method_label(), {}});
  for (auto& f : futures) rows.push_back(f.get());

  std::ostringstream csv;
  csv << "method,select_seconds,run_seconds,volume,volume_scaled,ratio_to_model,volume_method\n";
  json table = json::array();
  for (const Row& row : rows) {
    const double scaled = std::pow(row.volume, scale_exponent);
    const double ratio = truth_volume > 0.0 ? row.volume / truth_volume : 0.0;
    char line[512];
    std::snprintf(line, sizeof(line), "%s,%.6g,%.6g,%.17g,%.17g,%.17g,%s\n",
                  row.method.c_str(), row.select_seconds, row.run_seconds, row.volume,
                  scaled, ratio, row.volume_method.c_str());
    csv << line;
    json entry;
    entry["method"] = row.method;
    entry["select_seconds"] = row.select_seconds;
    entry["run_seconds"] = row.run_seconds;
    entry["volume"] = row.volume;
    entry["volume_scaled"] = scaled;
    entry["ratio_to_model"] = ratio;
    entry["volume_method"] = row.volume_method;
    entry["warnings"] = row.warnings;
    table.push_back(std::move(entry));
  }

  const std::string csv_path = join_path(out_dir, "compare.csv");
  const std::string json_path = join_path(out_dir, "compare.json");
  write_text_file(csv_path, csv.str());
  write_text_file(json_path, table.dump(2) + "\n");

  std::cout << "compare: " << methods.size() << " method(s) vs model truth ("
            << truth_volume << " " << truth.volumes.back().method_label() << ")\n";
  for (const Row& row : rows) {
    std::cout << "  " << row.method << ": volume " << row.volume << ", ratio "
              << (truth_volume > 0.0 ? row.volume / truth_volume : 0.0) << ", select "
              << row.select_seconds << " s, run " << row.run_seconds << " s\n";
    for (const auto& w : row.warnings) std::cout << "    warning: " << w << "\n";
  }
  return {csv_path, json_path};
}

std::vector<std::string> cmd_example1(std::uint64_t seed, const std::string& out_dir) {
  ensure_dir(out_dir);
  const Scenario scenario = fixtures::onestep_demo_scenario(seed);
  const Pipeline pipe = identify_pipeline(scenario);

  const Zonotope r1 =
      dd_step(pipe.model, scenario.x0, scenario.u, scenario.system.noise);
  const auto [plain, plain_report] = girard_reduce(r1, scenario.rho);
  const Matrix discarded = columns_at(r1.generators, plain_report.discarded);
  const Matrix P = dominant_directions(discarded);
  const auto [projected, projected_report] = projected_reduce(r1, P, scenario.rho);
  const ConstrainedZonotope refined = intersection_refine(r1, P, scenario.rho);

  const VolumeResult vol_plain = exact_volume(plain);
  const VolumeResult vol_projected = exact_volume(projected);
  const double ratio = vol_plain.value / vol_projected.value;

  Rng rng_raw(Rng::derive(scenario.volume.mc_seed, 1));
  Rng rng_refined(Rng::derive(scenario.volume.mc_seed, 2));
  const VolumeResult mc_raw = mc_volume(r1, scenario.volume.mc_samples, rng_raw);
  const VolumeResult mc_refined = mc_volume(refined, scenario.volume.mc_samples, rng_refined);

  // Conservativeness spot check: both reductions must dominate the raw
  // one-step set in every probed direction.
  Rng dir_rng(Rng::derive(seed, 0xD125));
  int bad_plain = 0, bad_projected = 0;
  for (int k = 0; k < 500; ++k) {
    Vector d(r1.dim());
    for (int i = 0; i < d.size(); ++i) d(i) = dir_rng.normal();
    if (d.norm() == 0.0) continue;
    d /= d.norm();
    const double raw = support(r1, d);
    const double tol = 1e-9 * (1.0 + std::abs(raw));
    if (support(plain, d) < raw - tol) ++bad_plain;
    if (support(projected, d) < raw - tol) ++bad_projected;
  }

  const double sigma3 = 3.0 * (mc_raw.std_error + mc_refined.std_error);
  json doc;
  doc["seed"] = seed;
  doc["generators_before"] = r1.generator_count();
  doc["generators_after"] = plain.generator_count();
  doc["volume_reduced"] = vol_plain.value;
  doc["volume_projected_reduced"] = vol_projected.value;
  doc["volume_ratio"] = ratio;
  doc["mc_volume_raw"] = mc_raw.value;
  doc["mc_volume_raw_std_error"] = mc_raw.std_error;
  doc["mc_volume_intersection"] = mc_refined.value;
  doc["mc_volume_intersection_std_error"] = mc_refined.std_error;
  doc["P"] = matrix_value(P);
  doc["ordering"] = {
      {"raw_below_intersection", mc_raw.value <= mc_refined.value + sigma3},
      {"intersection_below_projected",
       mc_refined.value <= vol_projected.value + 3.0 * mc_refined.std_error},
      {"projected_below_reduced", vol_projected.value <= vol_plain.value * (1.0 + 1e-12)}};
  doc["containment"] = {{"directions", 500},
                        {"reduced_violations", bad_plain},
                        {"projected_violations", bad_projected}};

  const std::string path = join_path(out_dir, "example1.json");
  write_text_file(path, doc.dump(2) + "\n");

  std::cout << "example1: " << r1.generator_count() << " -> " << plain.generator_count()
            << " generators; vol(reduced) " << vol_plain.value
            << ", vol(rotated reduced) " << vol_projected.value << ", ratio " << ratio
            << "\n";
  std::cout << "  mc raw " << mc_raw.value << " <= mc intersection " << mc_refined.value
            << " <= projected " << vol_projected.value << " <= reduced "
            << vol_plain.value << "\n";
  return {path};
}

std::vector<std::string> cmd_plot(const std::vector<std::string>& run_files,
                                  int dim_x, int dim_y, const std::string& out_path) {
  require_param(!run_files.empty(), "plot: at least one run file is required.");
  require_param(dim_x >= 0 && dim_y >= 0 && dim_x != dim_y,
                "plot: projection coordinates must be distinct and non-negative.");

  std::vector<SvgSeries> series;
  for (std::size_t i = 0; i < run_files.size(); ++i) {
    const ReachRun reach = reach_run_from_json(read_text_file(run_files[i]));
    require_param(!reach.sets.empty(), "plot: run has no sets: " + run_files[i]);
    const StepSet& final_set = reach.sets.back();
    require_param(dim_x < step_set_dim(final_set) && dim_y < step_set_dim(final_set),
                  "plot: projection coordinates exceed the state dimension.");
    SvgSeries s;
    s.label = reach.label.empty() ? fs::path(run_files[i]).stem().string() : reach.label;
    s.color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    s.fill = s.label == "model";
    if (std::holds_alternative<Zonotope>(final_set))
      s.polygon = polygon_2d(std::get<Zonotope>(final_set), dim_x, dim_y);
    else
      s.polygon = cz_outline(std::get<ConstrainedZonotope>(final_set), dim_x, dim_y);
    series.push_back(std::move(s));
  }

  const fs::path parent = fs::path(out_path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  write_text_file(out_path, render_svg(series));
  std::cout << "plot: " << series.size() << " run(s) -> " << out_path << "\n";
  return {out_path};
}

}  // namespace zonoreach

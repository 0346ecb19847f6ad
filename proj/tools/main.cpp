#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zonoreach/commands.hpp"

namespace {

/// Command-line overrides applied on top of the scenario document.  A
/// fresh --seed re-derives every downstream seed, exactly as if the
/// scenario had been written with that seed and no explicit sub-seeds.
struct Overrides {
  std::string method;
  double rho = 0.0;
  int horizon = 0;
  std::uint64_t seed = 0;
  bool use_intersection = false;

  bool has_method = false;
  bool has_rho = false;
  bool has_horizon = false;
  bool has_seed = false;
};

void add_override_flags(CLI::App* sub, Overrides* o, bool with_run_flags) {
  sub->add_option("--method", o->method,
                  "Basis selection method (identity, l1_svd, max_rotation, "
                  "givens, givens_sym, riemannian)");
  sub->add_option("--seed", o->seed, "Master seed; re-derives data/select/volume seeds");
  if (with_run_flags) {
    sub->add_option("--rho", o->rho, "Order budget (>= 1, or inf)");
    sub->add_option("--horizon", o->horizon, "Number of propagation steps");
    sub->add_flag("--use-intersection", o->use_intersection,
                  "Store the intersection of plain and rotated reductions");
  }
}

bool flag_given(const CLI::App* sub, const std::string& name) {
  const CLI::Option* option = sub->get_option_no_throw(name);
  return option != nullptr && option->count() > 0;
}

zonoreach::Scenario load_with_overrides(const std::string& path, const CLI::App* sub,
                                        const Overrides& o) {
  zonoreach::Scenario s = zonoreach::load_scenario(path);
  if (flag_given(sub, "--method")) s.method = o.method;
  if (flag_given(sub, "--rho")) {
    zonoreach::require_param(o.rho >= 1.0, "scenario: rho must be at least 1.");
    s.rho = o.rho;
  }
  if (flag_given(sub, "--horizon")) {
    zonoreach::require_param(o.horizon >= 0, "scenario: horizon must be non-negative.");
    s.horizon = o.horizon;
  }
  if (flag_given(sub, "--use-intersection")) s.use_intersection = true;
  if (flag_given(sub, "--seed")) {
    s.seed = o.seed;
    s.data.seed = zonoreach::Rng::derive(o.seed, 0xD47AULL);
    s.select.seed = zonoreach::Rng::derive(o.seed, 0x5E1EC7ULL);
    s.volume.mc_seed = zonoreach::Rng::derive(o.seed, 0xACC0ULL);
  }
  return s;
}

int run_guarded(const std::function<void()>& body) {
  try {
    body();
    return zonoreach::kExitOk;
  } catch (const zonoreach::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return zonoreach::kExitBudget;
  } catch (const zonoreach::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return zonoreach::kExitNumerical;
  } catch (const zonoreach::InfeasibleError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return zonoreach::kExitNumerical;
  } catch (const zonoreach::DimensionError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return zonoreach::kExitValidation;
  } catch (const zonoreach::ParameterError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return zonoreach::kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return zonoreach::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data-driven reachability with rotated zonotope order reduction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "zonoreach 0.1.0");

  std::string scenario_path;
  std::string out_dir = "out";
  Overrides overrides;

  auto* gen = app.add_subcommand("gen-data", "Simulate the data plan and write CSV files");
  gen->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  gen->add_option("--out", out_dir, "Output directory");
  add_override_flags(gen, &overrides, false);

  auto* ident = app.add_subcommand("identify", "Identify the model set from simulated data");
  ident->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  ident->add_option("--out", out_dir, "Output directory");
  add_override_flags(ident, &overrides, false);

  auto* selp = app.add_subcommand("select-p", "Select the projection basis only");
  selp->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  selp->add_option("--out", out_dir, "Output directory");
  add_override_flags(selp, &overrides, false);

  auto* reach = app.add_subcommand("reach", "Identify, select a basis and propagate");
  reach->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  reach->add_option("--out", out_dir, "Output directory");
  add_override_flags(reach, &overrides, true);

  std::vector<std::string> methods = {"identity", "l1_svd", "max_rotation"};
  auto* compare = app.add_subcommand("compare", "Run several methods against the model truth");
  compare->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  compare->add_option("--out", out_dir, "Output directory");
  compare->add_option("--methods", methods, "Comma-separated method list")
      ->delimiter(',');
  add_override_flags(compare, &overrides, true);

  std::uint64_t example_seed = 7;
  auto* example = app.add_subcommand("example1", "One-step rotated-reduction demo");
  example->add_option("--seed", example_seed, "Seed of the anisotropic initial set");
  example->add_option("--out", out_dir, "Output directory");

  std::vector<std::string> run_files;
  int dim_x = 0, dim_y = 1;
  std::string plot_path = "out/plot.svg";
  auto* plot = app.add_subcommand("plot", "Render final-set outlines of run files as SVG");
  plot->add_option("--run", run_files, "Run JSON file (repeatable)")->required();
  plot->add_option("--dim-x", dim_x, "First projection coordinate");
  plot->add_option("--dim-y", dim_y, "Second projection coordinate");
  plot->add_option("--out", plot_path, "Output SVG path");

  CLI11_PARSE(app, argc, argv);

  return run_guarded([&] {
    if (gen->parsed()) {
      zonoreach::cmd_gen_data(load_with_overrides(scenario_path, gen, overrides), out_dir);
    } else if (ident->parsed()) {
      zonoreach::cmd_identify(load_with_overrides(scenario_path, ident, overrides), out_dir);
    } else if (selp->parsed()) {
      zonoreach::cmd_select_p(load_with_overrides(scenario_path, selp, overrides), out_dir);
    } else if (reach->parsed()) {
      zonoreach::cmd_reach(load_with_overrides(scenario_path, reach, overrides), out_dir);
    } else if (compare->parsed()) {
      zonoreach::cmd_compare(load_with_overrides(scenario_path, compare, overrides),
                             methods, out_dir);
    } else if (example->parsed()) {
      zonoreach::cmd_example1(example_seed, out_dir);
    } else if (plot->parsed()) {
      zonoreach::cmd_plot(run_files, dim_x, dim_y, plot_path);
    }
  });
}

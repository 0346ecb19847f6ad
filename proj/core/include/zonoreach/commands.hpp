#pragma once

#include <string>
#include <vector>

#include "zonoreach/scenario.hpp"

namespace zonoreach {

// Each command executes one CLI verb against a scenario, writes its
// artifacts under out_dir, and returns the list of files written.  Errors
// are reported by throwing; the driver maps exception types to exit codes.

/// Simulates the data plan and writes xminus/xplus/uminus/noise CSV files
/// plus a JSON manifest with the seeds and experiment lengths.
std::vector<std::string> cmd_gen_data(const Scenario& scenario,
                                      const std::string& out_dir);

/// Generates data and writes the identified model set as JSON.
std::vector<std::string> cmd_identify(const Scenario& scenario,
                                      const std::string& out_dir);

/// Writes the selected projection basis for the scenario's method as JSON
/// (with its selection time and any warnings).
std::vector<std::string> cmd_select_p(const Scenario& scenario,
                                      const std::string& out_dir);

/// Full pipeline: identify, select the basis, propagate with reduction,
/// attach per-step volumes, and write the run (plus an optimizer trace
/// when the method produces one).
std::vector<std::string> cmd_reach(const Scenario& scenario,
                                   const std::string& out_dir);

/// Runs every listed method concurrently plus the ground-truth recursion
/// and writes a CSV/JSON table of selection time, run time, final-step
/// volume and ratio to truth.
std::vector<std::string> cmd_compare(const Scenario& scenario,
                                     const std::vector<std::string>& methods,
                                     const std::string& out_dir);

/// One-step reduction demo on the anisotropic fixture: reduces the same
/// set with and without the dominant-direction basis, intersects the two,
/// and reports exact/Monte-Carlo volumes, the volume ratio, and the
/// containment ordering.
std::vector<std::string> cmd_example1(std::uint64_t seed, const std::string& out_dir);

/// Renders the final sets of the given run files, projected onto the two
/// chosen state coordinates, into one SVG with a legend.
std::vector<std::string> cmd_plot(const std::vector<std::string>& run_files,
                                  int dim_x, int dim_y, const std::string& out_path);

/// Fills run.volumes for every stored step: exact while the subset budget
/// allows, then the exact volume of the projection onto the first
/// `projected_dims` coordinates, Monte-Carlo as the last resort and for
/// constrained sets.  Used by cmd_reach/cmd_compare and exposed for tests.
void fill_volumes(ReachRun& run, const VolumeConfig& config);

}  // namespace zonoreach

#pragma once

#include <string>

#include "zonoreach/identify.hpp"
#include "zonoreach/projsel.hpp"

namespace zonoreach {

/// Everything needed to reproduce an experiment end to end: the ground
/// truth, the sets, the data-collection plan, the reduction and method
/// configuration, and the seeds.  Loaded from a single JSON document with
/// row-major matrix arrays (schema documented in README.md).
struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 0;

  TrueSystem system;  ///< A, B and the process-noise zonotope
  Zonotope x0;
  Zonotope u;

  DataPlan data;
  int horizon = 1;
  double rho = std::numeric_limits<double>::infinity();
  std::string method = "identity";
  bool use_intersection = false;

  SelectParams select;
  VolumeConfig volume;

  RunOptions run_options() const;
};

/// Parses and validates a scenario document; dimension mismatches and
/// missing seeds are rejected up front.
Scenario scenario_from_json(const std::string& text);
std::string to_json(const Scenario& scenario);

Scenario load_scenario(const std::string& path);

}  // namespace zonoreach

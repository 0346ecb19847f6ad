#pragma once

#include "zonoreach/scenario.hpp"

namespace zonoreach::fixtures {

/// Five-dimensional benchmark system: two lightly damped rotational blocks
/// and one scalar lag, driven by a single input.
TrueSystem benchmark5d();

/// Initial set <1_5, 0.1 I> and input set <10, 0.25> of the benchmark.
Zonotope benchmark5d_x0();
Zonotope benchmark5d_u();

/// Full default scenario for the benchmark: one experiment of 100 samples,
/// seed 42, horizon 5, order budget rho = 3.
Scenario benchmark5d_scenario();

/// One-step reduction demo on the same dynamics with a strongly
/// anisotropic seeded initial set (5 x 6 generators clustered around one
/// direction) and wider noise <0, 0.06 diag(1, 2, 1.3, 1, 1.5)>.  The
/// anisotropy is what a rotated reduction exploits.
Zonotope onestep_demo_x0(std::uint64_t seed);
Zonotope onestep_demo_noise();
Scenario onestep_demo_scenario(std::uint64_t seed);

}  // namespace zonoreach::fixtures

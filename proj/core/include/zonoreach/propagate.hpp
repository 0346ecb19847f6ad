#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "zonoreach/identify.hpp"
#include "zonoreach/sets.hpp"
#include "zonoreach/volume.hpp"

namespace zonoreach {

/// A per-step reachable set: a plain zonotope, or a constrained zonotope
/// when intersection refinement is on.
using StepSet = std::variant<Zonotope, ConstrainedZonotope>;

int step_set_dim(const StepSet& s);
int step_set_generator_count(const StepSet& s);
double step_set_support(const StepSet& s, const Vector& d);
bool step_set_contains(const StepSet& s, const Vector& x, double tol = 1e-9);

/// Reachable-set sequence with bookkeeping for reporting.
struct ReachRun {
  std::vector<StepSet> sets;            ///< sets[k] = step k, k = 0..horizon
  std::vector<long long> raw_counts;    ///< generators before reduction, per step 1..horizon
  std::vector<long long> counts;        ///< generators of the stored set, per step 0..horizon
  std::vector<double> step_seconds;     ///< wall time per step 1..horizon
  double total_seconds = 0.0;
  std::vector<VolumeResult> volumes;    ///< per-step volumes, filled on demand
  std::string label;                    ///< e.g. "model", "girard", "l1_svd"
  Matrix P;                             ///< basis used (identity when none)
  bool constraint_cap_hit = false;      ///< intersection dropped due to the cap
};

/// Exact reachable sets of the ground-truth system:
/// R_{k+1} = A R_k + B U + W.
ReachRun model_reach(const TrueSystem& system, const Zonotope& X0,
                     const Zonotope& U, int horizon);

/// One data-driven step: over-approximates
/// { M (x; u) + w : M in msigma, x in Xk, u in U, w in noise }.
Zonotope dd_step(const IdentifiedModel& model, const Zonotope& Xk,
                 const Zonotope& U, const Zonotope& noise);
ConstrainedZonotope dd_step(const IdentifiedModel& model,
                            const ConstrainedZonotope& Xk, const Zonotope& U,
                            const Zonotope& noise);

/// Closed-form generator count of dd_step:
/// (1 + gamma) * (g_k + g_u) + gamma + g_w.
long long predicted_generator_count(long long g_k, long long g_u,
                                    long long gamma, long long g_w);

struct RunOptions {
  double rho = std::numeric_limits<double>::infinity();  ///< order budget; inf = no reduction
  int horizon = 1;
  bool use_intersection = false;
  int constraint_cap = 50;  ///< fall back to the plain reduction above this
};

/// Data-driven reachability with reduction in the coordinates of P.
///
/// Propagation runs in the rotated frame (the model set, noise and state
/// are conjugated by P once) and every stored set is rotated back, so the
/// reduction acts on P^T x exactly as projected_reduce does.  With
/// use_intersection the stored per-step sets are the intersections of the
/// plain and the rotated reduction; the zonotope chain that feeds the next
/// step is the plain reduction (the intersection's constraints cannot
/// survive a further reduction, so they refine reporting, not dynamics).
ReachRun run(const IdentifiedModel& model, const Zonotope& X0, const Zonotope& U,
             const Zonotope& noise, const Matrix& P, const RunOptions& options);

}  // namespace zonoreach

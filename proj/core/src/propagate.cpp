#include "zonoreach/propagate.hpp"

#include <chrono>
#include <cmath>

#include "zonoreach/reduction.hpp"

namespace zonoreach {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int step_set_dim(const StepSet& s) {
  return std::visit([](const auto& set) { return set.dim(); }, s);
}

int step_set_generator_count(const StepSet& s) {
  return std::visit([](const auto& set) { return set.generator_count(); }, s);
}

double step_set_support(const StepSet& s, const Vector& d) {
  if (const auto* z = std::get_if<Zonotope>(&s)) return support(*z, d);
  return cz_support(std::get<ConstrainedZonotope>(s), d);
}

bool step_set_contains(const StepSet& s, const Vector& x, double tol) {
  return std::visit([&](const auto& set) { return contains_point(set, x, tol); }, s);
}

ReachRun model_reach(const TrueSystem& system, const Zonotope& X0, const Zonotope& U,
                     int horizon) {
  require_param(horizon >= 0, "model_reach: horizon must be non-negative.");
  require_dims(X0.dim() == system.state_dim(), "model_reach: X0 must match the system.");
  require_dims(U.dim() == system.input_dim(), "model_reach: U must match the system.");

  ReachRun out;
  out.label = "model";
  out.P = Matrix::Identity(system.state_dim(), system.state_dim());
  out.sets.emplace_back(X0);
  out.counts.push_back(X0.generator_count());

  const Zonotope input_image = linear_map(system.B, U);
  Zonotope x = X0;
  const auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < horizon; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    x = minkowski(minkowski(linear_map(system.A, x), input_image), system.noise);
    out.step_seconds.push_back(seconds_since(t0));
    out.sets.emplace_back(x);
    out.raw_counts.push_back(x.generator_count());
    out.counts.push_back(x.generator_count());
  }
  out.total_seconds = seconds_since(start);
  return out;
}

Zonotope dd_step(const IdentifiedModel& model, const Zonotope& Xk, const Zonotope& U,
                 const Zonotope& noise) {
  require_dims(Xk.dim() == model.state_dim(), "dd_step: state set must match the model.");
  require_dims(U.dim() == model.input_dim(), "dd_step: input set must match the model.");
  require_dims(noise.dim() == model.state_dim(), "dd_step: noise set must match the model.");
  return minkowski(mz_times_set(model.msigma, cartesian(Xk, U)), noise);
}

ConstrainedZonotope dd_step(const IdentifiedModel& model, const ConstrainedZonotope& Xk,
                            const Zonotope& U, const Zonotope& noise) {
  require_dims(Xk.dim() == model.state_dim(), "dd_step: state set must match the model.");
  require_dims(U.dim() == model.input_dim(), "dd_step: input set must match the model.");
  require_dims(noise.dim() == model.state_dim(), "dd_step: noise set must match the model.");
  return minkowski(mz_times_set(model.msigma, cartesian(Xk, U)), as_constrained(noise));
}

long long predicted_generator_count(long long g_k, long long g_u, long long gamma,
                                    long long g_w) {
  require_param(g_k >= 0 && g_u >= 0 && gamma >= 0 && g_w >= 0,
                "predicted_generator_count: counts must be non-negative.");
  return (1 + gamma) * (g_k + g_u) + gamma + g_w;
}

ReachRun run(const IdentifiedModel& model, const Zonotope& X0, const Zonotope& U,
             const Zonotope& noise, const Matrix& P, const RunOptions& options) {
  const int n = model.state_dim();
  require_dims(X0.dim() == n, "run: X0 must match the model.");
  require_dims(P.rows() == n && P.cols() == n, "run: P must be n x n.");
  require_orthogonal(P);
  require_param(options.horizon >= 0, "run: horizon must be non-negative.");
  require_param(options.rho >= 1.0, "run: rho must be at least 1 (or infinite).");
  require_param(options.constraint_cap >= 0, "run: constraint cap must be non-negative.");

  // Conjugate the whole problem by P once; propagation happens there.
  const MatrixZonotope msigma_rot = mz_change_basis(model.msigma, P);
  IdentifiedModel model_rot;
  model_rot.msigma = msigma_rot;
  model_rot.H = model.H;
  model_rot.sigma_ratio = model.sigma_ratio;
  const Zonotope noise_rot = linear_map(P.transpose(), noise);

  ReachRun out;
  out.label = options.use_intersection ? "intersect" : "reduce";
  out.P = P;
  out.sets.emplace_back(X0);
  out.counts.push_back(X0.generator_count());

  Zonotope chain = X0;  // original frame
  const auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < options.horizon; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const Zonotope y_rot = dd_step(model_rot, linear_map(P.transpose(), chain), U, noise_rot);
    out.raw_counts.push_back(y_rot.generator_count());

    if (!options.use_intersection) {
      // Reduce in the rotated frame, store and continue in the original.
      chain = linear_map(P, girard_reduce(y_rot, options.rho).first);
      out.sets.emplace_back(chain);
    } else {
      const Zonotope reach = linear_map(P, y_rot);
      const Zonotope plain = girard_reduce(reach, options.rho).first;
      const Zonotope rotated = linear_map(P, girard_reduce(y_rot, options.rho).first);
      ConstrainedZonotope refined =
          intersect_R(as_constrained(plain), as_constrained(rotated),
                      Matrix::Identity(n, n));
      chain = plain;
      if (refined.constraint_count() > options.constraint_cap) {
        out.constraint_cap_hit = true;
        out.sets.emplace_back(plain);
      } else {
        out.sets.emplace_back(std::move(refined));
      }
    }
    out.step_seconds.push_back(seconds_since(t0));
    out.counts.push_back(step_set_generator_count(out.sets.back()));
  }
  out.total_seconds = seconds_since(start);
  return out;
}

}  // namespace zonoreach

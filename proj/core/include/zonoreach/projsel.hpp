#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zonoreach/propagate.hpp"
#include "zonoreach/sets.hpp"

namespace zonoreach {

/// How the reachability objective turns a final set into one number.
struct VolumeConfig {
  std::int64_t subset_cap = 200'000;  ///< exact volume allowed up to this many subsets
  int projected_dims = 3;             ///< PCA projection size past the cap
  std::int64_t mc_samples = 20'000;   ///< Monte-Carlo samples for constrained sets
  std::uint64_t mc_seed = 789;        ///< fixed seed keeps evaluations deterministic
};

/// J(P) = volume of the final reachable set of a reduced run in basis P.
///
/// The volume backend is chosen per evaluation: exact when the subset
/// budget allows it, otherwise the exact volume of the projection onto
/// the first `projected_dims` coordinates (the same frame the run reports
/// use); constrained final sets use seeded Monte-Carlo.  Callable, so it
/// plugs directly into the optimizers.
class Objective {
 public:
  Objective(IdentifiedModel model, Zonotope X0, Zonotope U, Zonotope noise,
            RunOptions options, VolumeConfig volume = {});

  double operator()(const Matrix& P) const;
  /// log of the volume, floored away from -inf for degenerate sets.
  double log_value(const Matrix& P) const;

  const std::string& last_volume_method() const { return last_method_; }
  long long evaluations() const { return evaluations_; }

 private:
  IdentifiedModel model_;
  Zonotope x0_, u_, noise_;
  RunOptions options_;
  VolumeConfig volume_;
  mutable std::string last_method_;
  mutable long long evaluations_ = 0;
};

/// Objective values and iterate health recorded by the optimizers.
/// `objective` holds the value after every accepted update (so it is
/// non-increasing); `start_offsets` marks where each multi-start run
/// begins in the shared arrays.
struct OptTrace {
  std::vector<double> objective;
  std::vector<double> radius;         ///< trust-region radius (riemannian only)
  std::vector<double> orthogonality;  ///< ||P^T P - I||_max of the accepted iterate
  std::vector<int> start_offsets;
};

/// Plane rotation by theta in coordinates (axis1, axis2) of R^n,
/// 0 <= axis1 < axis2 < n.
Matrix givens_rotation(int n, int axis1, int axis2, double theta);

struct GivensParams {
  int max_depth = 4;        ///< scales j = 0..max_depth, angle step pi * 2^-j
  double epsilon = 1e-4;    ///< relative improvement needed to accept
  int max_sweeps = 200;     ///< safety cap per scale
};

struct GivensResult {
  Matrix P;
  double J = 0.0;
  std::vector<std::string> warnings;
};

/// Coarse-to-fine coordinate descent over plane rotations: at each scale,
/// sweep all coordinate pairs, try every grid angle, and accept the best
/// rotation of a pair only if it improves the objective by more than
/// epsilon relative.  All iterates are products of rotations of P0, hence
/// exactly orthogonal.
GivensResult givens_descent(const Matrix& P0, const GivensParams& params,
                            const std::function<double(const Matrix&)>& objective,
                            OptTrace* trace = nullptr);

/// Runs the descent from P0 and from the reflected seed diag(-1,1,...,1)*P0
/// (the other connected component of the orthogonal group) and keeps the
/// better result.
GivensResult givens_descent_sym(const Matrix& P0, const GivensParams& params,
                                const std::function<double(const Matrix&)>& objective,
                                OptTrace* trace = nullptr);

/// PCA of the l1-aggregated generators: column k of the aggregate is the
/// row-wise l1 mass of generator k, and P collects the eigenvectors of the
/// aggregate's second-moment matrix in descending order.
struct L1SvdResult {
  Matrix P;
  bool degenerate = false;  ///< all generators vanished; P is the identity
};
L1SvdResult l1_svd(const MatrixZonotope& mz);

/// Worst-case first-order rotation of the dominant eigenvector: picks the
/// admissible generator signs that maximally couple the two most
/// competitive eigendirections of C C^T / d, then returns the
/// eigenvectors of the perturbed second-moment matrix.
struct MaxRotationResult {
  Matrix P;
  double dk_bound = 0.0;  ///< ||S* - S0||_2 / delta, a sin(theta) bound
  double delta = 0.0;     ///< spectral gap used by the bound
  Vector u_target;        ///< dominant eigenvector of S0
  Vector u_perturbed;     ///< dominant eigenvector of S*
};
/// Raises NumericalError when the spectral gap is below 1e-12.
MaxRotationResult max_rotation(const MatrixZonotope& mz);

struct TrustRegionParams {
  double grad_tol = 1e-3;
  int max_iterations = 30;
  double max_radius = 2.0;
  double fd_step = 1e-4;
  double min_radius = 1e-8;  ///< stop once the region collapses below this
};

struct RiemannianResult {
  Matrix P;
  double J = 0.0;
  int iterations = 0;  ///< trust-region iterations over all starts
  std::vector<std::string> warnings;
};

/// Trust-region descent of log(J) on the orthogonal-matrix manifold from
/// each start; returns the best local solution.  Gradients are central
/// finite differences along an orthonormal tangent basis, steps are Cauchy
/// points, and iterates stay orthogonal through the retraction
/// (P + xi)(I + xi^T xi)^{-1/2}.
RiemannianResult riemannian_opt(const std::vector<Matrix>& starts,
                                const TrustRegionParams& params,
                                const std::function<double(const Matrix&)>& objective,
                                OptTrace* trace = nullptr);

struct SelectParams {
  GivensParams givens;
  TrustRegionParams trust_region;
  int random_starts = 2;      ///< extra random seeds for riemannian
  std::uint64_t seed = 0;     ///< drives the random seeds
};

struct SelectResult {
  Matrix P;
  double dk_bound = 0.0;  ///< populated by max_rotation
  std::vector<std::string> warnings;
};

/// Unified dispatch over the selection methods: "identity", "l1_svd",
/// "max_rotation", "givens", "givens_sym", "riemannian".  The
/// objective-driven methods require a non-empty objective; max_rotation
/// falls back to l1_svd (with a warning) when its spectral gap vanishes.
SelectResult select(const std::string& method, const MatrixZonotope& mz,
                    const std::function<double(const Matrix&)>& objective = {},
                    const SelectParams& params = {}, OptTrace* trace = nullptr);

}  // namespace zonoreach

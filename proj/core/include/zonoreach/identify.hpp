#pragma once

#include <cstdint>

#include "zonoreach/sets.hpp"

namespace zonoreach {

/// Discrete-time ground truth x+ = A x + B u + w with w drawn from noise.
struct TrueSystem {
  Matrix A;        ///< n x n
  Matrix B;        ///< n x m
  Zonotope noise;  ///< n-dimensional process noise set

  TrueSystem() = default;
  TrueSystem(Matrix A_in, Matrix B_in, Zonotope noise_in);

  int state_dim() const { return static_cast<int>(A.rows()); }
  int input_dim() const { return static_cast<int>(B.cols()); }
};

/// Input/state samples collected from one or more experiments, aligned so
/// that column k of Xplus is the successor of column k of Xminus under
/// input column k of Uminus.  The realized noise is kept for diagnostics.
struct DataSet {
  Matrix Xminus;  ///< n x T
  Matrix Xplus;   ///< n x T
  Matrix Uminus;  ///< m x T
  Matrix noise;   ///< n x T, the w actually drawn per sample
  std::vector<int> experiment_lengths;

  int total_samples() const { return static_cast<int>(Xminus.cols()); }
  /// Concatenates another dataset's samples after this one's.
  void append(const DataSet& other);
};

/// How to collect data: `experiments` runs of `samples_per_experiment`
/// steps each, inputs drawn uniformly from `input_range` (the input set
/// itself when left empty) and initial states sampled from the initial
/// set, all driven by `seed`.  A wider excitation range than the
/// propagation input set keeps the data matrix well conditioned.
struct DataPlan {
  int experiments = 1;
  int samples_per_experiment = 100;
  std::uint64_t seed = 0;
  Zonotope input_range;  ///< dim 0 = draw from the propagation input set
};

/// Simulates one experiment of inputs.cols() steps from x0.
DataSet simulate(const TrueSystem& system, const Vector& x0,
                 const Matrix& inputs, Rng& rng);

/// Runs the full data plan against the ground truth.
DataSet generate_data(const TrueSystem& system, const Zonotope& X0,
                      const Zonotope& U, const DataPlan& plan);

/// Set of system matrices [A B] consistent with the data under the noise
/// model: center C = (Xplus - c_w 1^T) H and one rank-one generator
/// -g_i h_j^T per (noise generator i, sample j), where H is the
/// Moore-Penrose right inverse of [Xminus; Uminus].
struct IdentifiedModel {
  MatrixZonotope msigma;  ///< n x (n+m), factored rank-one generators
  Matrix H;               ///< T x (n+m) right inverse of the data matrix
  double sigma_ratio = 0.0;  ///< sigma_min/sigma_max of the data matrix

  int state_dim() const { return msigma.rows(); }
  int input_dim() const { return msigma.cols() - msigma.rows(); }
};

/// Identifies the model set from data.  Raises ParameterError when the
/// data matrix [Xminus; Uminus] is rank-deficient
/// (sigma_min <= 1e-8 sigma_max), since H would not be a right inverse.
IdentifiedModel identify(const DataSet& data, const Zonotope& noise_model);

/// Membership certificate for a candidate matrix: solves the generator
/// combination with minimum-norm coefficients and, when that solution
/// overshoots the coefficient box, refines it toward the box by
/// alternating projections.  Reports the residual and the largest
/// coefficient magnitude of the certificate actually used; `member` is
/// set only when an explicit in-box solution was found.
struct MembershipResult {
  bool member = false;
  double max_abs_coeff = 0.0;
  double residual = 0.0;
};
MembershipResult membership_diagnostic(const IdentifiedModel& model,
                                       const Matrix& candidate,
                                       double tol = 1e-6);

}  // namespace zonoreach

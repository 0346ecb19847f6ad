#pragma once

#include "zonoreach/common.hpp"
#include "zonoreach/rng.hpp"

namespace zonoreach {

/// Thin singular value decomposition M = U * sigma.asDiagonal() * V^T
/// with singular values in descending order.
struct SvdResult {
  Matrix U;
  Vector sigma;
  Matrix V;
};

/// Computes the thin SVD of M.  Throws ParameterError on non-finite input
/// and NumericalError if the decomposition does not converge.
SvdResult svd(const Matrix& M);

/// Moore-Penrose pseudoinverse.  Singular values at or below
/// tol * sigma_max are treated as zero; the zero matrix maps to the zero
/// matrix of transposed shape.
Matrix pinv(const Matrix& M, double tol = 1e-10);

/// Eigendecomposition S = V * lambda.asDiagonal() * V^T of a symmetric
/// matrix, eigenvalues in descending order.  Each eigenvector's sign is
/// fixed so its largest-magnitude entry is positive, which keeps results
/// deterministic across runs.
struct EigResult {
  Matrix V;
  Vector lambda;
};

/// Symmetric eigendecomposition.  S is symmetrized as (S + S^T)/2 first;
/// asymmetry beyond 1e-8 * ||S|| raises ParameterError.
EigResult sym_eig(const Matrix& S);

/// Haar-distributed random orthogonal n x n matrix (QR of a Gaussian
/// matrix with the sign correction of the R diagonal).
Matrix random_orthogonal(int n, Rng& rng);

/// Solution of a box-constrained linear program.
struct BoxLpResult {
  Vector x;      ///< an optimal point
  double value;  ///< the optimal objective value
};

/// Maximizes objective^T x subject to Aeq x = beq and |x_i| <= bound.
///
/// Aeq may have zero rows, in which case the maximizer is the closed-form
/// vertex x_i = bound * sign(objective_i).  Solved by a bounded-variable
/// primal simplex with a phase-1 start; infeasible constraint systems
/// raise InfeasibleError, and exceeding the internal pivot cap raises
/// NumericalError.
BoxLpResult solve_box_lp(const Vector& objective, const Matrix& Aeq,
                         const Vector& beq, double bound = 1.0);

/// True iff some x with |x_i| <= bound satisfies Aeq x = beq (within the
/// solver's feasibility tolerance).  Never throws InfeasibleError.
bool box_lp_feasible(const Matrix& Aeq, const Vector& beq, double bound = 1.0);

/// Number of n-element subsets of a p-element set, saturated at cap + 1
/// to avoid overflow when the true count is astronomically large.
std::int64_t subset_count(int p, int n, std::int64_t cap);

}  // namespace zonoreach

#include "zonoreach/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace zonoreach {

SvdResult svd(const Matrix& M) {
  require_param(is_finite(M), "svd: input has non-finite entries.");
  Eigen::JacobiSVD<Matrix> dec(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw NumericalError("svd: decomposition did not converge.");
  }
  return SvdResult{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

Matrix pinv(const Matrix& M, double tol) {
  require_param(tol >= 0.0, "pinv: tolerance must be non-negative.");
  if (M.size() == 0) return Matrix::Zero(M.cols(), M.rows());
  const SvdResult dec = svd(M);
  const double cutoff = dec.sigma.size() > 0 ? tol * dec.sigma(0) : 0.0;
  Vector inv_sigma = Vector::Zero(dec.sigma.size());
  for (Eigen::Index i = 0; i < dec.sigma.size(); ++i) {
    if (dec.sigma(i) > cutoff && dec.sigma(i) > 0.0) inv_sigma(i) = 1.0 / dec.sigma(i);
  }
  return dec.V * inv_sigma.asDiagonal() * dec.U.transpose();
}

EigResult sym_eig(const Matrix& S) {
  require_dims(S.rows() == S.cols(), "sym_eig: matrix must be square.");
  require_param(is_finite(S), "sym_eig: input has non-finite entries.");
  const double scale = S.norm();
  if (scale > 0.0) {
    require_param((S - S.transpose()).norm() <= 1e-8 * scale,
                  "sym_eig: matrix is not symmetric.");
  }
  const Matrix sym = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> dec(sym);
  if (dec.info() != Eigen::Success) {
    throw NumericalError("sym_eig: eigendecomposition did not converge.");
  }
  // Eigen returns ascending eigenvalues; reverse to descending.
  const Eigen::Index n = S.rows();
  EigResult out;
  out.V = Matrix(n, n);
  out.lambda = Vector(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.lambda(i) = dec.eigenvalues()(n - 1 - i);
    out.V.col(i) = dec.eigenvectors().col(n - 1 - i);
    // Deterministic sign: largest-magnitude entry positive.
    Eigen::Index arg = 0;
    out.V.col(i).cwiseAbs().maxCoeff(&arg);
    if (out.V(arg, i) < 0.0) out.V.col(i) = -out.V.col(i);
  }
  return out;
}

Matrix random_orthogonal(int n, Rng& rng) {
  require_param(n >= 1, "random_orthogonal: n must be positive.");
  Matrix A(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) A(i, j) = rng.normal();
  }
  const Eigen::HouseholderQR<Matrix> qr(A);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Sign correction makes the factorization unique and the law Haar.
  for (int j = 0; j < n; ++j) {
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  }
  return Q;
}

std::int64_t subset_count(int p, int n, std::int64_t cap) {
  require_param(n >= 0 && p >= 0, "subset_count: sizes must be non-negative.");
  if (n > p) return 0;
  // C(p, n) via the multiplicative formula, bailing out once past cap.
  long double c = 1.0L;
  for (int i = 1; i <= n; ++i) {
    c = c * static_cast<long double>(p - n + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::int64_t>(std::llround(static_cast<double>(c)));
}

}  // namespace zonoreach

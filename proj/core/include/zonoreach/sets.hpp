#pragma once

#include <vector>

#include "zonoreach/common.hpp"
#include "zonoreach/rng.hpp"

namespace zonoreach {

/// Zonotope {c + G xi : ||xi||_inf <= 1} with center c in R^n and
/// generator matrix G in R^{n x p}.  p = 0 (a single point) is valid.
struct Zonotope {
  Vector center;
  Matrix generators;

  Zonotope() = default;
  Zonotope(Vector c, Matrix G);

  int dim() const { return static_cast<int>(center.size()); }
  int generator_count() const { return static_cast<int>(generators.cols()); }
  /// Order p/n used by the reduction budget.
  double order() const { return double(generator_count()) / double(dim()); }
};

/// Constrained zonotope {c + G xi : ||xi||_inf <= 1, Aeq xi = beq}.
/// Aeq may have zero rows, in which case the set is a plain zonotope.
struct ConstrainedZonotope {
  Vector center;
  Matrix generators;
  Matrix Aeq;  ///< n_c x n_g
  Vector beq;  ///< n_c

  ConstrainedZonotope() = default;
  ConstrainedZonotope(Vector c, Matrix G, Matrix A, Vector b);

  int dim() const { return static_cast<int>(center.size()); }
  int generator_count() const { return static_cast<int>(generators.cols()); }
  int constraint_count() const { return static_cast<int>(Aeq.rows()); }
};

/// Matrix zonotope {C + sum_k beta_k G_k : ||beta||_inf <= 1}.
///
/// The generator family is stored either densely or, for the models
/// produced by system identification, in rank-one factored form
/// G_k = -left_i * right_j^T where k runs in i-major order
/// (k = i * |right| + j).  The factored form is never densified as a
/// whole; individual generators materialize on demand.
class MatrixZonotope {
 public:
  MatrixZonotope() = default;

  static MatrixZonotope dense(Matrix C, std::vector<Matrix> generators);
  static MatrixZonotope rank_one(Matrix C, std::vector<Vector> left,
                                 std::vector<Vector> right);

  int rows() const { return static_cast<int>(center_.rows()); }
  int cols() const { return static_cast<int>(center_.cols()); }
  int generator_count() const;
  bool factored() const { return factored_; }

  const Matrix& center() const { return center_; }
  /// Materializes generator k (i-major order in the factored case).
  Matrix generator(int k) const;

  const std::vector<Vector>& left_factors() const { return left_; }
  const std::vector<Vector>& right_factors() const { return right_; }
  const std::vector<Matrix>& dense_generators() const { return dense_; }

 private:
  Matrix center_;
  bool factored_ = false;
  std::vector<Matrix> dense_;
  std::vector<Vector> left_;
  std::vector<Vector> right_;
};

// --- constructors / conversions ---------------------------------------

/// View of a zonotope as a constrained zonotope with zero constraints.
ConstrainedZonotope as_constrained(const Zonotope& z);

/// Sound relaxation: drops the equality constraints.
Zonotope drop_constraints(const ConstrainedZonotope& cz);

// --- linear operations --------------------------------------------------

Zonotope linear_map(const Matrix& R, const Zonotope& z);
ConstrainedZonotope linear_map(const Matrix& R, const ConstrainedZonotope& cz);

Zonotope minkowski(const Zonotope& a, const Zonotope& b);
ConstrainedZonotope minkowski(const ConstrainedZonotope& a,
                              const ConstrainedZonotope& b);

/// Cartesian product a x b (block-diagonal generators).
Zonotope cartesian(const Zonotope& a, const Zonotope& b);
ConstrainedZonotope cartesian(const ConstrainedZonotope& a, const Zonotope& b);

// --- support functions and membership ------------------------------------

/// Support value max_{x in z} d^T x (closed form).
double support(const Zonotope& z, const Vector& d);

/// Support value of a constrained zonotope via a box LP.  Raises
/// InfeasibleError when the constraints make the set empty.
double cz_support(const ConstrainedZonotope& cz, const Vector& d);

/// Generalized intersection cz inter R^{-1}(y): the states x in cz whose
/// image R x lies in y.  R maps dim(cz) to dim(y).
ConstrainedZonotope intersect_R(const ConstrainedZonotope& cz,
                                const ConstrainedZonotope& y, const Matrix& R);

/// True iff x lies in the set within tolerance tol on the coefficient box.
bool contains_point(const Zonotope& z, const Vector& x, double tol = 1e-9);
bool contains_point(const ConstrainedZonotope& cz, const Vector& x,
                    double tol = 1e-9);

/// Random interior point c + G xi with xi uniform over the unit box.
Vector sample(const Zonotope& z, Rng& rng);

/// Componentwise bounds of the set.
struct IntervalHull {
  Vector lower;
  Vector upper;
};
IntervalHull interval_hull(const Zonotope& z);
/// LP-based hull of a constrained zonotope (2 n support calls).
IntervalHull interval_hull(const ConstrainedZonotope& cz);

// --- matrix-zonotope operations -------------------------------------------

/// Over-approximation of {M s : M in mz, s in S} for a zonotopic S.
/// The result's generator order is [C G_s | gens * c_s | gens * G_s].
Zonotope mz_times_set(const MatrixZonotope& mz, const Zonotope& s);

/// Constrained variant.  Every product generator inherits constraints that
/// keep the result a sound over-approximation: the block pairing generator
/// k with the constrained coefficients carries the rows
/// [A_s on its block | -b_s on the scalar column of k].
ConstrainedZonotope mz_times_set(const MatrixZonotope& mz,
                                 const ConstrainedZonotope& s);

/// Similarity transform of a (n x (n+m)) matrix zonotope under an
/// orthogonal P: center P^T C blkdiag(P, I_m), generators transformed the
/// same way (factored form stays factored).
MatrixZonotope mz_change_basis(const MatrixZonotope& mz, const Matrix& P);

/// Verifies P^T P = I within tol; throws ParameterError otherwise.
void require_orthogonal(const Matrix& P, double tol = 1e-8);

}  // namespace zonoreach

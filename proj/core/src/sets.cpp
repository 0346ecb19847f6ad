#include "zonoreach/sets.hpp"

#include <cmath>

#include "zonoreach/numerics.hpp"

namespace zonoreach {

namespace {

// Normalizes an empty generator/constraint matrix to the right row count so
// that p = 0 and n_c = 0 stay first-class citizens of every operation.
Matrix with_rows(Matrix M, Eigen::Index rows) {
  if (M.size() == 0 && M.rows() != rows) return Matrix(rows, 0);
  return M;
}

Matrix with_cols(Matrix M, Eigen::Index cols) {
  if (M.size() == 0 && M.cols() != cols) return Matrix(0, cols);
  return M;
}

}  // namespace

Zonotope::Zonotope(Vector c, Matrix G)
    : center(std::move(c)), generators(with_rows(std::move(G), center.size())) {
  require_dims(generators.rows() == center.size(),
               "Zonotope: generator rows must match the center dimension.");
  require_param(is_finite(center) && is_finite(generators),
                "Zonotope: entries must be finite.");
}

ConstrainedZonotope::ConstrainedZonotope(Vector c, Matrix G, Matrix A, Vector b)
    : center(std::move(c)),
      generators(with_rows(std::move(G), center.size())),
      Aeq(with_cols(std::move(A), generators.cols())),
      beq(std::move(b)) {
  require_dims(generators.rows() == center.size(),
               "ConstrainedZonotope: generator rows must match the center dimension.");
  require_dims(Aeq.cols() == generators.cols(),
               "ConstrainedZonotope: constraint columns must match the generator count.");
  require_dims(Aeq.rows() == beq.size(),
               "ConstrainedZonotope: constraint rows must match the right-hand side.");
  require_param(is_finite(center) && is_finite(generators) && is_finite(Aeq) && is_finite(beq),
                "ConstrainedZonotope: entries must be finite.");
}

MatrixZonotope MatrixZonotope::dense(Matrix C, std::vector<Matrix> generators) {
  require_param(is_finite(C), "MatrixZonotope: center must be finite.");
  for (const Matrix& G : generators) {
    require_dims(G.rows() == C.rows() && G.cols() == C.cols(),
                 "MatrixZonotope: every generator must match the center shape.");
    require_param(is_finite(G), "MatrixZonotope: generators must be finite.");
  }
  MatrixZonotope mz;
  mz.center_ = std::move(C);
  mz.dense_ = std::move(generators);
  mz.factored_ = false;
  return mz;
}

MatrixZonotope MatrixZonotope::rank_one(Matrix C, std::vector<Vector> left,
                                        std::vector<Vector> right) {
  require_param(is_finite(C), "MatrixZonotope: center must be finite.");
  for (const Vector& l : left) {
    require_dims(l.size() == C.rows(), "MatrixZonotope: left factor length must equal row count.");
    require_param(is_finite(l), "MatrixZonotope: factors must be finite.");
  }
  for (const Vector& r : right) {
    require_dims(r.size() == C.cols(), "MatrixZonotope: right factor length must equal column count.");
    require_param(is_finite(r), "MatrixZonotope: factors must be finite.");
  }
  MatrixZonotope mz;
  mz.center_ = std::move(C);
  mz.left_ = std::move(left);
  mz.right_ = std::move(right);
  mz.factored_ = true;
  return mz;
}

int MatrixZonotope::generator_count() const {
  if (factored_) return static_cast<int>(left_.size() * right_.size());
  return static_cast<int>(dense_.size());
}

Matrix MatrixZonotope::generator(int k) const {
  require_param(k >= 0 && k < generator_count(), "MatrixZonotope: generator index out of range.");
  if (!factored_) return dense_[static_cast<std::size_t>(k)];
  const int t = static_cast<int>(right_.size());
  const Vector& l = left_[static_cast<std::size_t>(k / t)];
  const Vector& r = right_[static_cast<std::size_t>(k % t)];
  return -l * r.transpose();
}

ConstrainedZonotope as_constrained(const Zonotope& z) {
  return ConstrainedZonotope(z.center, z.generators, Matrix(0, z.generator_count()), Vector(0));
}

Zonotope drop_constraints(const ConstrainedZonotope& cz) {
  return Zonotope(cz.center, cz.generators);
}

Zonotope linear_map(const Matrix& R, const Zonotope& z) {
  require_dims(R.cols() == z.dim(), "linear_map: matrix columns must match the set dimension.");
  require_param(is_finite(R), "linear_map: matrix must be finite.");
  return Zonotope(R * z.center, R * z.generators);
}

ConstrainedZonotope linear_map(const Matrix& R, const ConstrainedZonotope& cz) {
  require_dims(R.cols() == cz.dim(), "linear_map: matrix columns must match the set dimension.");
  require_param(is_finite(R), "linear_map: matrix must be finite.");
  return ConstrainedZonotope(R * cz.center, R * cz.generators, cz.Aeq, cz.beq);
}

Zonotope minkowski(const Zonotope& a, const Zonotope& b) {
  require_dims(a.dim() == b.dim(), "minkowski: dimensions must match.");
  Matrix G(a.dim(), a.generator_count() + b.generator_count());
  G << a.generators, b.generators;
  return Zonotope(a.center + b.center, std::move(G));
}

ConstrainedZonotope minkowski(const ConstrainedZonotope& a, const ConstrainedZonotope& b) {
  require_dims(a.dim() == b.dim(), "minkowski: dimensions must match.");
  const int pa = a.generator_count(), pb = b.generator_count();
  Matrix G(a.dim(), pa + pb);
  G << a.generators, b.generators;
  Matrix A = Matrix::Zero(a.constraint_count() + b.constraint_count(), pa + pb);
  A.topLeftCorner(a.constraint_count(), pa) = a.Aeq;
  A.bottomRightCorner(b.constraint_count(), pb) = b.Aeq;
  Vector bvec(a.constraint_count() + b.constraint_count());
  bvec << a.beq, b.beq;
  return ConstrainedZonotope(a.center + b.center, std::move(G), std::move(A), std::move(bvec));
}

Zonotope cartesian(const Zonotope& a, const Zonotope& b) {
  Vector c(a.dim() + b.dim());
  c << a.center, b.center;
  Matrix G = Matrix::Zero(a.dim() + b.dim(), a.generator_count() + b.generator_count());
  G.topLeftCorner(a.dim(), a.generator_count()) = a.generators;
  G.bottomRightCorner(b.dim(), b.generator_count()) = b.generators;
  return Zonotope(std::move(c), std::move(G));
}

ConstrainedZonotope cartesian(const ConstrainedZonotope& a, const Zonotope& b) {
  Vector c(a.dim() + b.dim());
  c << a.center, b.center;
  Matrix G = Matrix::Zero(a.dim() + b.dim(), a.generator_count() + b.generator_count());
  G.topLeftCorner(a.dim(), a.generator_count()) = a.generators;
  G.bottomRightCorner(b.dim(), b.generator_count()) = b.generators;
  Matrix A = Matrix::Zero(a.constraint_count(), a.generator_count() + b.generator_count());
  A.leftCols(a.generator_count()) = a.Aeq;
  return ConstrainedZonotope(std::move(c), std::move(G), std::move(A), a.beq);
}

double support(const Zonotope& z, const Vector& d) {
  require_dims(d.size() == z.dim(), "support: direction dimension must match the set.");
  require_param(is_finite(d), "support: direction must be finite.");
  return d.dot(z.center) + (z.generators.transpose() * d).cwiseAbs().sum();
}

double cz_support(const ConstrainedZonotope& cz, const Vector& d) {
  require_dims(d.size() == cz.dim(), "cz_support: direction dimension must match the set.");
  require_param(is_finite(d), "cz_support: direction must be finite.");
  const Vector obj = cz.generators.transpose() * d;
  if (cz.constraint_count() == 0) {
    return d.dot(cz.center) + obj.cwiseAbs().sum();
  }
  BoxLpResult lp;
  try {
    lp = solve_box_lp(obj, cz.Aeq, cz.beq);
  } catch (const InfeasibleError&) {
    throw InfeasibleError("cz_support: the constrained zonotope is empty.");
  }
  return d.dot(cz.center) + lp.value;
}

ConstrainedZonotope intersect_R(const ConstrainedZonotope& cz,
                                const ConstrainedZonotope& y, const Matrix& R) {
  require_dims(R.cols() == cz.dim() && R.rows() == y.dim(),
               "intersect_R: R must map the first set's space into the second's.");
  require_param(is_finite(R), "intersect_R: R must be finite.");
  const int pz = cz.generator_count(), py = y.generator_count();
  const int cz_rows = cz.constraint_count(), y_rows = y.constraint_count();

  Matrix G = Matrix::Zero(cz.dim(), pz + py);
  G.leftCols(pz) = cz.generators;

  Matrix A = Matrix::Zero(cz_rows + y_rows + y.dim(), pz + py);
  A.topLeftCorner(cz_rows, pz) = cz.Aeq;
  A.block(cz_rows, pz, y_rows, py) = y.Aeq;
  A.bottomLeftCorner(y.dim(), pz) = R * cz.generators;
  A.bottomRightCorner(y.dim(), py) = -y.generators;

  Vector b(cz_rows + y_rows + y.dim());
  b << cz.beq, y.beq, y.center - R * cz.center;
  return ConstrainedZonotope(cz.center, std::move(G), std::move(A), std::move(b));
}

bool contains_point(const Zonotope& z, const Vector& x, double tol) {
  require_dims(x.size() == z.dim(), "contains_point: point dimension must match the set.");
  require_param(tol >= 0.0, "contains_point: tolerance must be non-negative.");
  if (z.generator_count() == 0) {
    return (x - z.center).cwiseAbs().maxCoeff() <= tol;
  }
  return box_lp_feasible(z.generators, x - z.center, 1.0 + tol);
}

bool contains_point(const ConstrainedZonotope& cz, const Vector& x, double tol) {
  require_dims(x.size() == cz.dim(), "contains_point: point dimension must match the set.");
  require_param(tol >= 0.0, "contains_point: tolerance must be non-negative.");
  if (cz.generator_count() == 0) {
    return (x - cz.center).cwiseAbs().maxCoeff() <= tol &&
           (cz.beq.size() == 0 || cz.beq.cwiseAbs().maxCoeff() <= tol);
  }
  Matrix A(cz.dim() + cz.constraint_count(), cz.generator_count());
  A << cz.generators, cz.Aeq;
  Vector b(cz.dim() + cz.constraint_count());
  b << x - cz.center, cz.beq;
  return box_lp_feasible(A, b, 1.0 + tol);
}

Vector sample(const Zonotope& z, Rng& rng) {
  Vector xi(z.generator_count());
  for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = rng.uniform(-1.0, 1.0);
  return z.center + z.generators * xi;
}

IntervalHull interval_hull(const Zonotope& z) {
  const Vector radius = z.generators.cwiseAbs().rowwise().sum();
  return IntervalHull{z.center - radius, z.center + radius};
}

IntervalHull interval_hull(const ConstrainedZonotope& cz) {
  if (cz.constraint_count() == 0) return interval_hull(drop_constraints(cz));
  IntervalHull hull{Vector(cz.dim()), Vector(cz.dim())};
  for (int i = 0; i < cz.dim(); ++i) {
    const Vector e = Vector::Unit(cz.dim(), i);
    hull.upper(i) = cz_support(cz, e);
    hull.lower(i) = -cz_support(cz, -e);
  }
  return hull;
}

Zonotope mz_times_set(const MatrixZonotope& mz, const Zonotope& s) {
  require_dims(mz.cols() == s.dim(),
               "mz_times_set: matrix columns must match the set dimension.");
  const int n = mz.rows();
  const int gamma = mz.generator_count();
  const int ps = s.generator_count();
  Matrix G(n, ps + gamma + gamma * ps);
  G.leftCols(ps) = mz.center() * s.generators;
  if (mz.factored()) {
    const auto& left = mz.left_factors();
    const auto& right = mz.right_factors();
    const int t = static_cast<int>(right.size());
    // Precompute the scalar and row products shared across left factors.
    Vector rc(t);
    Matrix rG(t, ps);
    for (int j = 0; j < t; ++j) {
      rc(j) = right[static_cast<std::size_t>(j)].dot(s.center);
      rG.row(j) = right[static_cast<std::size_t>(j)].transpose() * s.generators;
    }
    for (int k = 0; k < gamma; ++k) {
      const Vector& l = left[static_cast<std::size_t>(k / t)];
      const int j = k % t;
      G.col(ps + k) = -l * rc(j);
      G.middleCols(ps + gamma + k * ps, ps) = -l * rG.row(j);
    }
  } else {
    for (int k = 0; k < gamma; ++k) {
      const Matrix Gk = mz.generator(k);
      G.col(ps + k) = Gk * s.center;
      G.middleCols(ps + gamma + k * ps, ps) = Gk * s.generators;
    }
  }
  return Zonotope(mz.center() * s.center, std::move(G));
}

ConstrainedZonotope mz_times_set(const MatrixZonotope& mz, const ConstrainedZonotope& s) {
  const Zonotope relaxed = mz_times_set(mz, drop_constraints(s));
  const int gamma = mz.generator_count();
  const int ps = s.generator_count();
  const int nc = s.constraint_count();
  // One copy of the source constraints per coefficient block.  The block
  // holding eta_k = beta_k * xi satisfies A_s eta_k = beta_k b_s, expressed
  // below with -b_s on the scalar beta_k column so the rows stay linear.
  Matrix A = Matrix::Zero(nc * (1 + gamma), ps + gamma + gamma * ps);
  Vector b = Vector::Zero(nc * (1 + gamma));
  if (nc > 0) {
    A.topLeftCorner(nc, ps) = s.Aeq;
    b.head(nc) = s.beq;
    for (int k = 0; k < gamma; ++k) {
      A.block(nc * (1 + k), ps + gamma + k * ps, nc, ps) = s.Aeq;
      A.block(nc * (1 + k), ps + k, nc, 1) = -s.beq;
    }
  }
  return ConstrainedZonotope(relaxed.center, relaxed.generators, std::move(A), std::move(b));
}

void require_orthogonal(const Matrix& P, double tol) {
  require_dims(P.rows() == P.cols(), "require_orthogonal: P must be square.");
  require_param(is_finite(P), "require_orthogonal: P must be finite.");
  const Matrix gram = P.transpose() * P;
  const double err = (gram - Matrix::Identity(P.rows(), P.cols())).cwiseAbs().maxCoeff();
  require_param(err <= tol, "require_orthogonal: P is not orthogonal within tolerance.");
}

MatrixZonotope mz_change_basis(const MatrixZonotope& mz, const Matrix& P) {
  require_dims(P.rows() == mz.rows(), "mz_change_basis: P must match the row dimension.");
  require_dims(mz.cols() >= mz.rows(),
               "mz_change_basis: matrix zonotope must have at least as many columns as rows.");
  require_orthogonal(P);
  const int n = mz.rows();
  const int m = mz.cols() - n;
  Matrix blk = Matrix::Identity(n + m, n + m);
  blk.topLeftCorner(n, n) = P;

  if (mz.factored()) {
    std::vector<Vector> left, right;
    left.reserve(mz.left_factors().size());
    right.reserve(mz.right_factors().size());
    for (const Vector& l : mz.left_factors()) left.push_back(P.transpose() * l);
    for (const Vector& r : mz.right_factors()) right.push_back(blk.transpose() * r);
    return MatrixZonotope::rank_one(P.transpose() * mz.center() * blk, std::move(left),
                                    std::move(right));
  }
  std::vector<Matrix> gens;
  gens.reserve(mz.dense_generators().size());
  for (const Matrix& G : mz.dense_generators()) gens.push_back(P.transpose() * G * blk);
  return MatrixZonotope::dense(P.transpose() * mz.center() * blk, std::move(gens));
}

}  // namespace zonoreach

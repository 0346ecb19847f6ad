#include "zonoreach/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zonoreach/numerics.hpp"

namespace zonoreach {

std::pair<Zonotope, ReductionReport> girard_reduce(const Zonotope& z, double rho) {
  require_param(rho >= 1.0, "girard_reduce: rho must be at least 1.");
  const int n = z.dim();
  const int p = z.generator_count();
  require_param(n >= 1, "girard_reduce: the set must have positive dimension.");

  ReductionReport report;
  const double raw_budget = std::floor(rho * n);
  const bool unlimited = std::isinf(rho) || raw_budget >= static_cast<double>(p);
  if (unlimited) {
    report.kept.resize(static_cast<std::size_t>(p));
    std::iota(report.kept.begin(), report.kept.end(), 0);
    return {z, report};
  }
  const int budget = static_cast<int>(raw_budget);
  const int keep_count = budget - n;

  // Stable sort by descending norm: exact ties keep the lower column index.
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  const Vector norms = z.generators.colwise().norm();
  std::stable_sort(order.begin(), order.end(),
                   [&norms](int a, int b) { return norms(a) > norms(b); });

  std::vector<bool> keep(static_cast<std::size_t>(p), false);
  int taken = 0;
  for (const int idx : order) {
    if (taken >= keep_count) break;
    if (norms(idx) <= 0.0) break;  // zero-norm generators are never kept
    keep[static_cast<std::size_t>(idx)] = true;
    ++taken;
  }
  for (int j = 0; j < p; ++j) {
    (keep[static_cast<std::size_t>(j)] ? report.kept : report.discarded).push_back(j);
  }

  Matrix G_keep(n, taken);
  Matrix G_disc(n, p - taken);
  int ik = 0, id = 0;
  for (int j = 0; j < p; ++j) {
    if (keep[static_cast<std::size_t>(j)]) {
      G_keep.col(ik++) = z.generators.col(j);
    } else {
      G_disc.col(id++) = z.generators.col(j);
    }
  }

  report.box_halfwidths = G_disc.cwiseAbs().rowwise().sum();
  const BoxBound bb = box_bound(G_disc, Matrix::Identity(n, n));
  report.box_volume = bb.vol_box;
  report.hadamard_bound = bb.bound;

  Matrix G_out(n, taken + n);
  G_out.leftCols(taken) = G_keep;
  G_out.rightCols(n) = report.box_halfwidths.asDiagonal();
  return {Zonotope(z.center, std::move(G_out)), std::move(report)};
}

std::pair<Zonotope, ReductionReport> projected_reduce(const Zonotope& z,
                                                      const Matrix& P, double rho) {
  require_dims(P.rows() == z.dim(), "projected_reduce: P must match the set dimension.");
  require_orthogonal(P);
  auto [reduced, report] = girard_reduce(linear_map(P.transpose(), z), rho);
  return {linear_map(P, reduced), std::move(report)};
}

ConstrainedZonotope intersection_refine(const Zonotope& z, const Matrix& P, double rho) {
  const Zonotope plain = girard_reduce(z, rho).first;
  const Zonotope rotated = projected_reduce(z, P, rho).first;
  return intersect_R(as_constrained(plain), as_constrained(rotated),
                     Matrix::Identity(z.dim(), z.dim()));
}

Matrix dominant_directions(const Matrix& G_disc) {
  require_param(G_disc.rows() >= 1, "dominant_directions: empty state dimension.");
  const Matrix S = G_disc * G_disc.transpose();
  return sym_eig(S).V;
}

BoxBound box_bound(const Matrix& G_disc, const Matrix& P) {
  require_dims(P.rows() == G_disc.rows(), "box_bound: P must match the generator rows.");
  require_orthogonal(P);
  const int n = static_cast<int>(G_disc.rows());
  const int m = static_cast<int>(G_disc.cols());
  const Matrix rotated = P.transpose() * G_disc;
  const Vector d = rotated.cwiseAbs().rowwise().sum();

  BoxBound out;
  out.vol_box = std::pow(2.0, n);
  for (int i = 0; i < n; ++i) out.vol_box *= d(i);

  const Vector diag_s = rotated.rowwise().squaredNorm();  // diag(P^T G G^T P)
  out.bound = std::pow(2.0 * std::sqrt(static_cast<double>(m)), n);
  out.bound *= std::sqrt(diag_s.prod());
  return out;
}

}  // namespace zonoreach

#pragma once

#include <utility>
#include <vector>

#include "zonoreach/sets.hpp"

namespace zonoreach {

/// What a reduction kept, what it boxed, and how tight the box is.
/// For projected_reduce the indices and half-widths refer to the rotated
/// frame in which the reduction ran (column indices are shared by both
/// frames since rotation preserves column order).
struct ReductionReport {
  std::vector<int> kept;       ///< original column indices, ascending
  std::vector<int> discarded;  ///< original column indices, ascending
  Vector box_halfwidths;       ///< d: per-axis half-width of the box; empty if untouched
  double box_volume = 0.0;     ///< 2^n * prod(d)
  double hadamard_bound = 0.0; ///< (2 sqrt(m))^n sqrt(prod diag(G_d G_d^T)) over the discarded block
};

/// Order reduction: keeps the floor(rho*n) - n largest-norm generators and
/// over-approximates the rest by their interval hull (a diagonal box).
///
/// Ties in the generator norms keep the lower column index; zero-norm
/// generators are never kept.  If the input order is already within rho
/// (including rho = infinity) the set is returned unchanged.  rho < 1
/// raises ParameterError.
std::pair<Zonotope, ReductionReport> girard_reduce(const Zonotope& z, double rho);

/// Same reduction carried out in the coordinates P^T x and rotated back:
/// P * reduce(P^T z).  P must be orthogonal.
std::pair<Zonotope, ReductionReport> projected_reduce(const Zonotope& z,
                                                      const Matrix& P, double rho);

/// Intersection of the plain and the projected reduction of the same set;
/// contains z whenever both operands do.
ConstrainedZonotope intersection_refine(const Zonotope& z, const Matrix& P,
                                        double rho);

/// PCA basis of a discarded-generator block: eigenvectors of G G^T in
/// descending eigenvalue order.  This basis minimizes the Hadamard bound
/// on the box volume over all orthogonal bases.
Matrix dominant_directions(const Matrix& G_disc);

/// Box volume of the discarded block in the coordinates of P, together
/// with its Hadamard upper bound.
struct BoxBound {
  double vol_box;  ///< 2^n prod_i ||e_i^T P^T G||_1
  double bound;    ///< (2 sqrt(m))^n sqrt(prod_i (P^T G G^T P)_{ii})
};
BoxBound box_bound(const Matrix& G_disc, const Matrix& P);

}  // namespace zonoreach

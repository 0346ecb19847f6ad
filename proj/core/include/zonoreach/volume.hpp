#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zonoreach/sets.hpp"

namespace zonoreach {

/// A volume value together with how it was obtained.
struct VolumeResult {
  enum class Method { exact, projected3d, montecarlo };

  double value = 0.0;
  Method method = Method::exact;
  std::int64_t subsets = 0;      ///< exact: number of determinants summed
  std::int64_t sample_count = 0; ///< montecarlo: samples drawn
  double std_error = 0.0;        ///< montecarlo: one-sigma error of value
  Matrix basis;                  ///< projected: the projection basis used

  std::string method_label() const;
};

/// Exact zonotope volume 2^n * sum over n-column subsets of |det|.
/// The determinant magnitudes are accumulated in ascending order for
/// reproducible rounding.  If the subset count exceeds subset_cap the call
/// raises BudgetError instead of silently taking hours.
VolumeResult exact_volume(const Zonotope& z,
                          std::int64_t subset_cap = 2'000'000);

/// Exact volume of the orthogonal projection basis^T z, where basis is an
/// n x k matrix with orthonormal columns.
VolumeResult projected_volume(const Zonotope& z, const Matrix& basis,
                              std::int64_t subset_cap = 2'000'000);

/// Monte-Carlo volume: uniform samples over the interval hull scored by
/// exact membership tests.  Requires samples >= 1000.  A degenerate hull
/// (zero width on any axis) gives volume 0.
VolumeResult mc_volume(const Zonotope& z, std::int64_t samples, Rng& rng);
VolumeResult mc_volume(const ConstrainedZonotope& cz, std::int64_t samples,
                       Rng& rng);

/// Boundary polygon of the projection of z onto coordinates (dim_x, dim_y),
/// in counter-clockwise order with at most 2p vertices.  A point (p = 0 in
/// the projection) gives a single vertex.
std::vector<Eigen::Vector2d> polygon_2d(const Zonotope& z, int dim_x = 0,
                                        int dim_y = 1);

/// Shoelace area of a simple polygon given in counter-clockwise order.
double polygon_area(const std::vector<Eigen::Vector2d>& polygon);

}  // namespace zonoreach

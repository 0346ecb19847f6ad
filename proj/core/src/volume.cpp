#include "zonoreach/volume.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zonoreach/numerics.hpp"

namespace zonoreach {

std::string VolumeResult::method_label() const {
  switch (method) {
    case Method::exact: return "exact";
    case Method::projected3d: return "projected3d";
    case Method::montecarlo: return "montecarlo";
  }
  return "unknown";
}

VolumeResult exact_volume(const Zonotope& z, std::int64_t subset_cap) {
  require_param(subset_cap >= 1, "exact_volume: subset cap must be positive.");
  const int n = z.dim();
  const int p = z.generator_count();
  require_param(n >= 1, "exact_volume: the set must have positive dimension.");

  VolumeResult out;
  out.method = VolumeResult::Method::exact;
  if (p < n) return out;  // flat set, zero volume

  const std::int64_t count = subset_count(p, n, subset_cap);
  if (count > subset_cap) {
    throw BudgetError("exact_volume: subset count exceeds the configured cap.");
  }

  // Lexicographic enumeration of all n-column subsets.
  std::vector<double> dets;
  dets.reserve(static_cast<std::size_t>(count));
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  Matrix sub(n, n);
  while (true) {
    for (int i = 0; i < n; ++i) sub.col(i) = z.generators.col(idx[static_cast<std::size_t>(i)]);
    dets.push_back(std::abs(sub.determinant()));
    int pos = n - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == p - n + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < n; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }

  // Ascending accumulation keeps the rounding error independent of the
  // enumeration order.
  std::sort(dets.begin(), dets.end());
  double sum = 0.0;
  for (const double d : dets) sum += d;
  out.value = std::pow(2.0, n) * sum;
  out.subsets = static_cast<std::int64_t>(dets.size());
  return out;
}

VolumeResult projected_volume(const Zonotope& z, const Matrix& basis,
                              std::int64_t subset_cap) {
  require_dims(basis.rows() == z.dim(), "projected_volume: basis rows must match the set.");
  require_param(basis.cols() >= 1 && basis.cols() <= basis.rows(),
                "projected_volume: basis must have between 1 and n columns.");
  const Matrix gram = basis.transpose() * basis;
  require_param(
      (gram - Matrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff() <= 1e-8,
      "projected_volume: basis columns must be orthonormal.");
  VolumeResult out =
      exact_volume(Zonotope(basis.transpose() * z.center, basis.transpose() * z.generators),
                   subset_cap);
  out.method = VolumeResult::Method::projected3d;
  out.basis = basis;
  return out;
}

namespace {

template <typename Member>
VolumeResult mc_volume_box(const IntervalHull& hull, std::int64_t samples, Rng& rng,
                           const Member& member) {
  require_param(samples >= 1000, "mc_volume: at least 1000 samples are required.");
  const Vector width = hull.upper - hull.lower;

  VolumeResult out;
  out.method = VolumeResult::Method::montecarlo;
  if ((width.array() <= 0.0).any()) return out;  // flat hull, zero volume

  const double hull_vol = width.prod();
  const int n = static_cast<int>(width.size());
  Vector x(n);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) x(i) = rng.uniform(hull.lower(i), hull.upper(i));
    if (member(x)) ++hits;
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(samples);
  out.value = hull_vol * frac;
  out.sample_count = samples;
  out.std_error = hull_vol * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
  return out;
}

}  // namespace

VolumeResult mc_volume(const Zonotope& z, std::int64_t samples, Rng& rng) {
  // Membership LPs dominate the cost on high-order sets, so screen each
  // sample first: reject through support-function outer bounds along a
  // fixed probe family, accept through the minimum-norm coefficient
  // solution (sufficient since any ||xi||_inf <= 1 preimage certifies
  // membership).  Only the samples both screens leave undecided reach the
  // LP, whose verdict is unchanged by the screens.
  const int n = z.dim();
  const int p = z.generator_count();
  std::vector<Vector> probes;
  for (int i = 0; i < n; ++i) probes.push_back(Vector::Unit(n, i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Vector d = Vector::Zero(n);
      d(i) = d(j) = 1.0 / std::numbers::sqrt2;
      probes.push_back(d);
      d(j) = -d(j);
      probes.push_back(d);
    }
  }
  for (int i = 0; i < n && n >= 3; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        for (int signs = 0; signs < 4; ++signs) {
          Vector d = Vector::Zero(n);
          d(i) = 1.0;
          d(j) = (signs & 1) ? -1.0 : 1.0;
          d(k) = (signs & 2) ? -1.0 : 1.0;
          probes.push_back(d / std::numbers::sqrt3);
        }
      }
    }
  }
  if (n >= 4 && n <= 8) {  // all full-support sign patterns, first entry +
    const double scale = 1.0 / std::sqrt(double(n));
    for (int signs = 0; signs < (1 << (n - 1)); ++signs) {
      Vector d = Vector::Constant(n, scale);
      for (int i = 1; i < n; ++i)
        if (signs & (1 << (i - 1))) d(i) = -scale;
      probes.push_back(d);
    }
  }
  Vector radius(probes.size());
  for (std::size_t k = 0; k < probes.size(); ++k)
    radius(static_cast<Eigen::Index>(k)) = (z.generators.transpose() * probes[k]).lpNorm<1>();

  Matrix gen_pinv;
  if (p >= n) gen_pinv = pinv(z.generators);

  const auto member = [&](const Vector& x) {
    const Vector d = x - z.center;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      const double r = radius(static_cast<Eigen::Index>(k));
      if (std::abs(probes[k].dot(d)) > r + 1e-9 * (1.0 + r)) return false;
    }
    if (p >= n) {
      const Vector xi = gen_pinv * d;
      if (xi.lpNorm<Eigen::Infinity>() <= 1.0 &&
          (z.generators * xi - d).lpNorm<Eigen::Infinity>() <= 1e-9 * (1.0 + d.norm()))
        return true;
    }
    return contains_point(z, x);
  };
  return mc_volume_box(interval_hull(z), samples, rng, member);
}

VolumeResult mc_volume(const ConstrainedZonotope& cz, std::int64_t samples, Rng& rng) {
  return mc_volume_box(interval_hull(cz), samples, rng,
                       [&cz](const Vector& x) { return contains_point(cz, x); });
}

std::vector<Eigen::Vector2d> polygon_2d(const Zonotope& z, int dim_x, int dim_y) {
  require_param(dim_x >= 0 && dim_x < z.dim() && dim_y >= 0 && dim_y < z.dim() && dim_x != dim_y,
                "polygon_2d: projection axes must be distinct and in range.");
  const Eigen::Vector2d c(z.center(dim_x), z.center(dim_y));

  // Collect the projected generators, flipped into the upper half-plane.
  std::vector<Eigen::Vector2d> gens;
  gens.reserve(static_cast<std::size_t>(z.generator_count()));
  for (int j = 0; j < z.generator_count(); ++j) {
    Eigen::Vector2d g(z.generators(dim_x, j), z.generators(dim_y, j));
    if (g.norm() <= 0.0) continue;
    if (g.y() < 0.0 || (g.y() == 0.0 && g.x() < 0.0)) g = -g;
    gens.push_back(g);
  }
  if (gens.empty()) return {c};

  std::stable_sort(gens.begin(), gens.end(),
                   [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                     return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
                   });

  // Walk the right boundary bottom-to-top, then mirror through the center.
  const std::size_t p = gens.size();
  std::vector<Eigen::Vector2d> poly(2 * p);
  Eigen::Vector2d v = c;
  for (const Eigen::Vector2d& g : gens) v -= g;
  poly[0] = v;
  for (std::size_t k = 0; k + 1 < p; ++k) poly[k + 1] = poly[k] + 2.0 * gens[k];
  for (std::size_t k = 0; k < p; ++k) poly[p + k] = 2.0 * c - poly[k];
  return poly;
}

double polygon_area(const std::vector<Eigen::Vector2d>& polygon) {
  if (polygon.size() < 3) return 0.0;
  double twice_area = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Eigen::Vector2d& a = polygon[i];
    const Eigen::Vector2d& b = polygon[(i + 1) % polygon.size()];
    twice_area += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * twice_area;
}

}  // namespace zonoreach

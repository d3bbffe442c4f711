#pragma once

// Uniform one-dimensional grids.  A grid lives either in the physical
// coordinate x or in the deformed coordinate u = ln(1+gamma*x)/gamma, and
// carries the deformation parameters it was built with.

#include <cmath>
#include <cstddef>
#include <vector>

#include "qbohm/errors.hpp"
#include "qbohm/qcalc.hpp"

namespace qbohm {

enum class CoordinateKind { physical_x, deformed_u };

struct SpatialGrid {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n_points = 2;
  CoordinateKind kind = CoordinateKind::physical_x;
  DeformationParams params;

  SpatialGrid() = default;

  SpatialGrid(double lo, double hi, std::size_t n, DeformationParams p,
              CoordinateKind k = CoordinateKind::physical_x)
      : x_min(lo), x_max(hi), n_points(n), kind(k), params(p) {
    if (!(n >= 3)) throw resolution_error("SpatialGrid: need at least 3 points");
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
      throw domain_error("SpatialGrid: require finite x_min < x_max");
    params.validate();
    if (kind == CoordinateKind::physical_x && params.deformed()) {
      // The factor is affine in x, so checking the ends covers every node.
      if (deformation_factor(params.gamma, lo) <= 0.0) throw singularity_error(params.gamma, lo);
      if (deformation_factor(params.gamma, hi) <= 0.0) throw singularity_error(params.gamma, hi);
    }
  }

  double spacing() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }

  double node(std::size_t i) const {
    return x_min + (x_max - x_min) * (static_cast<double>(i) / static_cast<double>(n_points - 1));
  }

  std::vector<double> nodes() const {
    std::vector<double> xs(n_points);
    for (std::size_t i = 0; i < n_points; ++i) xs[i] = node(i);
    return xs;
  }

  // Grid in u covering the same physical span with the same point count.
  SpatialGrid to_deformed() const {
    if (kind == CoordinateKind::deformed_u) return *this;
    return SpatialGrid(deformed_coordinate(x_min, params), deformed_coordinate(x_max, params),
                       n_points, params, CoordinateKind::deformed_u);
  }

  friend bool operator==(const SpatialGrid& a, const SpatialGrid& b) {
    return a.x_min == b.x_min && a.x_max == b.x_max && a.n_points == b.n_points &&
           a.kind == b.kind && a.params.gamma == b.params.gamma;
  }
};

}  // namespace qbohm

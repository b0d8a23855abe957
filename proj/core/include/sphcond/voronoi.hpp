#pragma once

#include <cstddef>
#include <vector>

#include "sphcond/geometry.hpp"

namespace sphcond {

struct VoronoiCell {
  int site_index = 0;
  double area = 0.0;     // steradians
  double density = 0.0;  // 1/area
};

/// Spherical Voronoi diagram by convex-hull duality. Requires Q >= 4,
/// no duplicate points, and points not all on one great circle
/// (throws std::invalid_argument otherwise). Cell areas sum to 4*pi.
std::vector<VoronoiCell> spherical_voronoi(const PointSet& points);

struct DMeasureReport {
  double nu = 0.0;
  double d_measure = 0.0;
  double mean_density = 0.0;  // Q / 4*pi
};

/// Uniformity of a point set from the dispersion of Voronoi densities:
///   nu = sum_k (a_k/4pi) (d_k - dhat)^2 / dhat,   D = nu * sqrt(2*pi) / dhat.
/// Zero for equal-area (orbit-transitive) designs.
DMeasureReport d_measure(const PointSet& points);

}  // namespace sphcond

#pragma once

#include <string>
#include <vector>

#include "sphcond/geometry.hpp"

namespace sphcond {

/// Fibonacci lattice: phi_i = (2*pi*c1*i) mod 2*pi, theta_i = asin(2i/Q - 1),
/// i = 1..Q, c1 = (sqrt(5)-1)/2, in the above-xy convention.
///
/// With folded = true the arcsine latitude is interpreted directly as a
/// colatitude (points reflected into the northern hemisphere). That variant
/// reproduces the published SHM conditioning figures, e.g. kappa ~ 1670 at
/// Q = 32, N = 3; the unfolded lattice is nearly uniform and well conditioned.
PointSet gen_fibonacci(int q, bool folded = false);

/// (N+1) Gauss-Legendre colatitudes x 2(N+1) uniform azimuths, Q = 2(N+1)^2.
PointSet gen_gaussian(int order);

/// Quadrature weights matching gen_gaussian's point order; sums to 4*pi and
/// integrates spherical polynomials up to degree 2N+1 exactly.
std::vector<double> gaussian_weights(int order);

/// 2(N+1) equal steps in both theta (0..pi inclusive, poles present) and phi.
PointSet gen_equiangular(int order);

struct TDesignInfo {
  std::string name;
  int strength = 0;         // exact quadrature up to this polynomial degree
  int q = 0;
  int supported_order = 0;  // strength / 2; kappa(SHM) = 1 up to this order
  bool orbit_transitive = false;  // congruent Voronoi cells, D-measure = 0
};

/// Catalog: T2Q4, T3Q6, T3Q8, T5Q12, T7Q24, T8Q36, T10Q60.
std::vector<TDesignInfo> tdesign_catalog();

/// Throws std::invalid_argument for names not in the catalog.
PointSet load_tdesign(const std::string& name);
TDesignInfo tdesign_info(const std::string& name);

/// Interaural grid: circular hoops of constant lateral angle (angle from the
/// median plane towards the interaural axis), sampled in the hoop elevation
/// angle starting at elevation_min. Points are labeled with their hoop index.
PointSet gen_interaural_grid(const std::vector<double>& lateral_angles_rad,
                             double elevation_step_rad,
                             double elevation_min_rad,
                             double elevation_max_rad);

/// The 25 standard CIPIC lateral angles, radians.
std::vector<double> cipic_lateral_angles();

/// CIPIC preset: 25 hoops x 50 elevations at 5.625 deg spacing, Q = 1250.
PointSet gen_cipic();

/// Equi-sampled CIPIC configuration: 11.25 deg spacing, 25 per hoop, Q = 625.
PointSet gen_ecc();

/// Modified CIPIC configuration, Q = 625: dense 5.625 deg sampling overhead
/// (elevations 45..135 deg), sparse near-horizontal bands with per-lateral
/// spacing 33.75/28.125/22.5/16.875/11.25 deg for |lateral| = 80..55 / 45..30 /
/// 25..15 / 10..5 / 0 deg.
PointSet gen_mcc();

}  // namespace sphcond

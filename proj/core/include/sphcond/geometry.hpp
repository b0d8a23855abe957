#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace sphcond {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kFourPi = 4.0 * kPi;

/// How the first angle of a Direction is measured.
///   FromZAxis:    theta in [0, pi], colatitude measured down from +z.
///   AboveXyPlane: theta in [-pi/2, pi/2], latitude measured up from the xy plane.
/// Conversion is exact: theta_z = pi/2 - theta_xy.
enum class Convention { FromZAxis, AboveXyPlane };

struct Direction {
  double theta = 0.0;
  double phi = 0.0;  // azimuth, [0, 2*pi)
};

double wrap_azimuth(double phi);

/// Convert a single direction to the canonical FromZAxis convention.
Direction to_from_z(const Direction& d, Convention c);

struct PointSet {
  std::vector<Direction> directions;
  Convention convention = Convention::FromZAxis;
  std::vector<int> labels;  // optional per-point metadata (e.g. hoop index); empty or size Q

  std::size_t size() const { return directions.size(); }
  bool has_labels() const { return !labels.empty(); }

  /// Same geometry expressed in the target convention.
  PointSet converted(Convention target) const;

  /// Unit vector of point i in the canonical frame.
  std::array<double, 3> unit(std::size_t i) const;
};

/// Throws std::invalid_argument if angles fall outside the convention's range,
/// the set is empty, or labels are present with the wrong length.
void validate(const PointSet& ps);

/// Rotate every point by the given 3x3 rotation matrix (row-major).
PointSet rotated(const PointSet& ps, const std::array<double, 9>& rot);

}  // namespace sphcond

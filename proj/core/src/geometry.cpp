#include "sphcond/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace sphcond {

double wrap_azimuth(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;  // fmod can land exactly on 2*pi after the add
  return w;
}

Direction to_from_z(const Direction& d, Convention c) {
  if (c == Convention::FromZAxis) return d;
  return {kPi / 2.0 - d.theta, d.phi};
}

PointSet PointSet::converted(Convention target) const {
  if (target == convention) return *this;
  PointSet out;
  out.convention = target;
  out.labels = labels;
  out.directions.reserve(directions.size());
  for (const auto& d : directions) {
    // both conversions are theta' = pi/2 - theta
    out.directions.push_back({kPi / 2.0 - d.theta, d.phi});
  }
  return out;
}

std::array<double, 3> PointSet::unit(std::size_t i) const {
  Direction d = to_from_z(directions[i], convention);
  const double st = std::sin(d.theta);
  return {st * std::cos(d.phi), st * std::sin(d.phi), std::cos(d.theta)};
}

void validate(const PointSet& ps) {
  if (ps.directions.empty()) throw std::invalid_argument("PointSet: empty");
  if (!ps.labels.empty() && ps.labels.size() != ps.directions.size())
    throw std::invalid_argument("PointSet: labels length mismatch");
  constexpr double tol = 1e-12;
  for (const auto& d : ps.directions) {
    if (!std::isfinite(d.theta) || !std::isfinite(d.phi))
      throw std::invalid_argument("PointSet: non-finite angle");
    if (ps.convention == Convention::FromZAxis) {
      if (d.theta < -tol || d.theta > kPi + tol)
        throw std::invalid_argument("PointSet: theta outside [0, pi] for from_z convention");
    } else {
      if (d.theta < -kPi / 2.0 - tol || d.theta > kPi / 2.0 + tol)
        throw std::invalid_argument("PointSet: theta outside [-pi/2, pi/2] for above_xy convention");
    }
    if (d.phi < -tol || d.phi >= kTwoPi + tol)
      throw std::invalid_argument("PointSet: phi outside [0, 2*pi)");
  }
}

PointSet rotated(const PointSet& ps, const std::array<double, 9>& r) {
  PointSet out;
  out.convention = Convention::FromZAxis;
  out.labels = ps.labels;
  out.directions.reserve(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto v = ps.unit(i);
    const double x = r[0] * v[0] + r[1] * v[1] + r[2] * v[2];
    const double y = r[3] * v[0] + r[4] * v[1] + r[5] * v[2];
    const double z = r[6] * v[0] + r[7] * v[1] + r[8] * v[2];
    double theta = std::acos(std::clamp(z, -1.0, 1.0));
    double phi = wrap_azimuth(std::atan2(y, x));
    out.directions.push_back({theta, phi});
  }
  return out;
}

}  // namespace sphcond

#include "sphcond/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "tdesign_data.hpp"

namespace sphcond {

namespace {

Direction from_unit(double x, double y, double z) {
  return {std::acos(std::clamp(z, -1.0, 1.0)), wrap_azimuth(std::atan2(y, x))};
}

template <std::size_t Q>
PointSet from_xyz(const std::array<std::array<double, 3>, Q>& pts) {
  PointSet ps;
  ps.convention = Convention::FromZAxis;
  ps.directions.reserve(Q);
  for (const auto& p : pts) {
    const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    ps.directions.push_back(from_unit(p[0] / r, p[1] / r, p[2] / r));
  }
  return ps;
}

PointSet tetrahedron() {
  const double s = 1.0 / std::sqrt(3.0);
  return from_xyz<4>({{{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}}});
}

PointSet octahedron() {
  return from_xyz<6>({{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}});
}

PointSet cube() {
  const double s = 1.0 / std::sqrt(3.0);
  return from_xyz<8>({{{s, s, s},
                       {s, s, -s},
                       {s, -s, s},
                       {s, -s, -s},
                       {-s, s, s},
                       {-s, s, -s},
                       {-s, -s, s},
                       {-s, -s, -s}}});
}

PointSet icosahedron() {
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;
  const double r = std::sqrt(1.0 + g * g);
  const double a = 1.0 / r, b = g / r;
  return from_xyz<12>({{{0, a, b},
                        {0, -a, b},
                        {0, a, -b},
                        {0, -a, -b},
                        {a, b, 0},
                        {-a, b, 0},
                        {a, -b, 0},
                        {-a, -b, 0},
                        {b, 0, a},
                        {b, 0, -a},
                        {-b, 0, a},
                        {-b, 0, -a}}});
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      const double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    x[n - 1 - i] = xi;  // ascending in x
    w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
}

constexpr double kDeg = kPi / 180.0;

}  // namespace

PointSet gen_fibonacci(int q, bool folded) {
  if (q < 1) throw std::invalid_argument("gen_fibonacci: Q must be >= 1");
  const double c1 = (std::sqrt(5.0) - 1.0) / 2.0;
  PointSet ps;
  ps.convention = folded ? Convention::FromZAxis : Convention::AboveXyPlane;
  ps.directions.reserve(q);
  for (int i = 1; i <= q; ++i) {
    const double phi = wrap_azimuth(kTwoPi * c1 * i);
    const double lat = std::asin(2.0 * i / q - 1.0);
    ps.directions.push_back({folded ? std::abs(lat) : lat, phi});
  }
  return ps;
}

PointSet gen_gaussian(int order) {
  if (order < 0) throw std::invalid_argument("gen_gaussian: order must be >= 0");
  std::vector<double> x, w;
  gauss_legendre(order + 1, x, w);
  const int na = 2 * (order + 1);
  PointSet ps;
  ps.convention = Convention::FromZAxis;
  ps.directions.reserve((order + 1) * na);
  for (int i = 0; i <= order; ++i) {
    const double theta = std::acos(x[i]);
    for (int j = 0; j < na; ++j) {
      ps.directions.push_back({theta, kTwoPi * j / na});
    }
  }
  return ps;
}

std::vector<double> gaussian_weights(int order) {
  std::vector<double> x, w;
  gauss_legendre(order + 1, x, w);
  const int na = 2 * (order + 1);
  std::vector<double> out;
  out.reserve((order + 1) * na);
  for (int i = 0; i <= order; ++i)
    for (int j = 0; j < na; ++j) out.push_back(w[i] * kPi / (order + 1));
  return out;
}

PointSet gen_equiangular(int order) {
  if (order < 0) throw std::invalid_argument("gen_equiangular: order must be >= 0");
  const int n = 2 * (order + 1);
  PointSet ps;
  ps.convention = Convention::FromZAxis;
  ps.directions.reserve(n * n);
  for (int i = 0; i < n; ++i) {
    const double theta = kPi * i / (n - 1);  // includes both poles
    for (int j = 0; j < n; ++j) ps.directions.push_back({theta, kTwoPi * j / n});
  }
  return ps;
}

std::vector<TDesignInfo> tdesign_catalog() {
  return {
      {"T2Q4", 2, 4, 1, true},    {"T3Q6", 3, 6, 1, true},   {"T3Q8", 3, 8, 1, true},
      {"T5Q12", 5, 12, 2, true},  {"T7Q24", 7, 24, 3, true}, {"T8Q36", 8, 36, 4, false},
      {"T10Q60", 10, 60, 5, false},
  };
}

TDesignInfo tdesign_info(const std::string& name) {
  for (const auto& e : tdesign_catalog())
    if (e.name == name) return e;
  throw std::invalid_argument("tdesign_info: unknown design '" + name + "'");
}

PointSet load_tdesign(const std::string& name) {
  if (name == "T2Q4") return tetrahedron();
  if (name == "T3Q6") return octahedron();
  if (name == "T3Q8") return cube();
  if (name == "T5Q12") return icosahedron();
  if (name == "T7Q24") return from_xyz<24>(detail::k_t7q24);
  if (name == "T8Q36") return from_xyz<36>(detail::k_t8q36);
  if (name == "T10Q60") return from_xyz<60>(detail::k_t10q60);
  throw std::invalid_argument("load_tdesign: unknown design '" + name + "'");
}

PointSet gen_interaural_grid(const std::vector<double>& lateral_angles_rad,
                             double elevation_step_rad,
                             double elevation_min_rad,
                             double elevation_max_rad) {
  if (lateral_angles_rad.empty())
    throw std::invalid_argument("gen_interaural_grid: empty lateral angle list");
  if (!(elevation_step_rad > 0.0) || elevation_max_rad < elevation_min_rad)
    throw std::invalid_argument("gen_interaural_grid: bad elevation range/step");
  PointSet ps;
  ps.convention = Convention::FromZAxis;
  for (std::size_t h = 0; h < lateral_angles_rad.size(); ++h) {
    const double l = lateral_angles_rad[h];
    for (int k = 0;; ++k) {
      const double e = elevation_min_rad + k * elevation_step_rad;
      if (e > elevation_max_rad + 1e-9) break;
      // x forward, y along the interaural axis, z up
      ps.directions.push_back(
          from_unit(std::cos(l) * std::cos(e), std::sin(l), std::cos(l) * std::sin(e)));
      ps.labels.push_back(static_cast<int>(h));
    }
  }
  return ps;
}

std::vector<double> cipic_lateral_angles() {
  std::vector<double> lat = {-80, -65, -55};
  for (int a = -45; a <= 45; a += 5) lat.push_back(a);
  lat.insert(lat.end(), {55, 65, 80});
  for (auto& a : lat) a *= kDeg;
  return lat;
}

PointSet gen_cipic() {
  return gen_interaural_grid(cipic_lateral_angles(), 5.625 * kDeg, -45.0 * kDeg, 230.625 * kDeg);
}

PointSet gen_ecc() {
  return gen_interaural_grid(cipic_lateral_angles(), 11.25 * kDeg, -45.0 * kDeg, 230.625 * kDeg);
}

PointSet gen_mcc() {
  const auto laterals = cipic_lateral_angles();
  PointSet ps;
  ps.convention = Convention::FromZAxis;
  for (std::size_t h = 0; h < laterals.size(); ++h) {
    const double l = laterals[h];
    const int adeg = static_cast<int>(std::lround(std::abs(l) / kDeg));
    // Table spacing as a multiple of the original 5.625 deg grid step
    int m;
    if (adeg >= 55) m = 6;        // 33.75 deg
    else if (adeg >= 30) m = 5;   // 28.125 deg
    else if (adeg >= 15) m = 4;   // 22.5 deg
    else if (adeg >= 5) m = 3;    // 16.875 deg
    else m = 2;                   // 11.25 deg
    std::set<int> ks;
    for (int k = 17; k <= 31; ++k) ks.insert(k);  // dense overhead band
    for (int k = 0; k <= 16; k += m) ks.insert(k);
    for (int k = 48; k >= 32; k -= m) ks.insert(k);
    // boundary fills keep the published total of 625
    if (m == 4) ks.insert(49);
    else if (m != 2) ks.insert(16);
    for (int k : ks) {
      const double e = (-45.0 + 5.625 * k) * kDeg;
      ps.directions.push_back(
          from_unit(std::cos(l) * std::cos(e), std::sin(l), std::cos(l) * std::sin(e)));
      ps.labels.push_back(static_cast<int>(h));
    }
  }
  return ps;
}

}  // namespace sphcond

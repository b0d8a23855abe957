#include "sphcond/sh.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sphcond {

namespace {

// Fully normalized associated Legendre P̄_n^m(cos theta) including the
// Condon-Shortley phase, by stable upward recurrence in n with the
// normalization folded in. Finite for orders well beyond N = 20.
double norm_assoc_legendre(int n, int m, double x) {
  // seed: P̄_m^m
  double pmm = 1.0;
  if (m > 0) {
    const double omx2 = (1.0 - x) * (1.0 + x);
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= omx2 * fact / (fact + 1.0);
      fact += 2.0;
    }
  }
  pmm = std::sqrt((2.0 * m + 1.0) * pmm / kFourPi);
  if (m & 1) pmm = -pmm;
  if (n == m) return pmm;

  double pmmp1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
  if (n == m + 1) return pmmp1;

  double oldfact = std::sqrt(2.0 * m + 3.0);
  double pnn = 0.0;
  for (int nn = m + 2; nn <= n; ++nn) {
    const double fact = std::sqrt((4.0 * nn * nn - 1.0) / (double(nn) * nn - double(m) * m));
    pnn = (x * pmmp1 - pmm / oldfact) * fact;
    oldfact = fact;
    pmm = pmmp1;
    pmmp1 = pnn;
  }
  return pnn;
}

}  // namespace

std::complex<double> eval_sh(int n, int m, double theta_z, double phi) {
  if (n < 0 || std::abs(m) > n) throw std::domain_error("eval_sh: require 0 <= |m| <= n");
  const int am = std::abs(m);
  const double p = norm_assoc_legendre(n, am, std::cos(theta_z));
  std::complex<double> y = p * std::polar(1.0, am * phi);
  if (m < 0) {
    y = std::conj(y);
    if (am & 1) y = -y;
  }
  return y;
}

std::complex<double> eval_sh(int n, int m, const Direction& d, Convention c) {
  Direction z = to_from_z(d, c);
  return eval_sh(n, m, z.theta, z.phi);
}

double eval_sh_real(int n, int m, double theta_z, double phi) {
  static const double sqrt2 = std::sqrt(2.0);
  if (m == 0) return eval_sh(n, 0, theta_z, phi).real();
  const int am = std::abs(m);
  const std::complex<double> y = eval_sh(n, am, theta_z, phi);
  const double sign = (am & 1) ? -1.0 : 1.0;
  return (m > 0) ? sqrt2 * sign * y.real() : sqrt2 * sign * y.imag();
}

ShMatrix build_shm(const PointSet& points, int order, Basis basis) {
  if (order < 0) throw std::invalid_argument("build_shm: order must be >= 0");
  validate(points);
  PointSet pz = points.converted(Convention::FromZAxis);

  const int p = (order + 1) * (order + 1);
  const int q = static_cast<int>(pz.size());
  ShMatrix shm;
  shm.order = order;
  shm.basis = basis;
  shm.source = points;
  shm.entries.resize(p, q);
  for (int j = 0; j < q; ++j) {
    const Direction& d = pz.directions[j];
    for (int n = 0; n <= order; ++n) {
      for (int m = -n; m <= n; ++m) {
        if (basis == Basis::ComplexOrthonormal) {
          shm.entries(sh_index(n, m), j) = eval_sh(n, m, d.theta, d.phi);
        } else {
          shm.entries(sh_index(n, m), j) = eval_sh_real(n, m, d.theta, d.phi);
        }
      }
    }
  }
  return shm;
}

Eigen::MatrixXcd gram(const ShMatrix& shm, const std::vector<std::uint8_t>& mask) {
  const int q = shm.cols();
  if (mask.empty()) {
    return shm.entries * shm.entries.adjoint();
  }
  if (static_cast<int>(mask.size()) != q)
    throw std::invalid_argument("gram: mask length must equal column count");
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(shm.rows(), shm.rows());
  for (int j = 0; j < q; ++j) {
    if (mask[j]) g.noalias() += shm.entries.col(j) * shm.entries.col(j).adjoint();
  }
  return g;
}

EigenSummary eigen_summary(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eigen_summary: matrix not square");
  const double scale = h.cwiseAbs().maxCoeff();
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (scale > 0.0 && asym > 1e-10 * scale)
    throw std::invalid_argument("eigen_summary: matrix not Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  EigenSummary s;
  s.lambda_min = es.eigenvalues().minCoeff();
  s.lambda_max = es.eigenvalues().maxCoeff();
  if (s.lambda_min < 0.0 && s.lambda_min >= -kRankFloor * std::max(s.lambda_max, 0.0))
    s.lambda_min = 0.0;  // round-off
  if (s.lambda_min > kRankFloor * s.lambda_max && s.lambda_min > 0.0)
    s.kappa = std::sqrt(s.lambda_max / s.lambda_min);
  else
    s.kappa = std::numeric_limits<double>::infinity();
  return s;
}

double condition_number(const ShMatrix& shm) {
  return eigen_summary(gram(shm)).kappa;
}

}  // namespace sphcond

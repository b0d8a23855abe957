#pragma once

#include <Eigen/Dense>
#include <complex>

#include "sphcond/geometry.hpp"

namespace sphcond {

enum class Basis { ComplexOrthonormal, RealOrthonormal };

/// Orthonormal spherical harmonic Y_n^m with Condon-Shortley phase,
/// theta measured from the z-axis. Throws std::domain_error for |m| > n.
std::complex<double> eval_sh(int n, int m, double theta_z, double phi);

/// Convenience overload taking a direction in an explicit convention.
std::complex<double> eval_sh(int n, int m, const Direction& d,
                             Convention c = Convention::FromZAxis);

/// Real orthonormal basis value (zero imaginary part by construction).
double eval_sh_real(int n, int m, double theta_z, double phi);

/// Row index of (n, m) in the stacked basis: n^2 + n + m.
inline int sh_index(int n, int m) { return n * n + n + m; }

struct ShMatrix {
  Eigen::MatrixXcd entries;  // (N+1)^2 rows x Q columns
  int order = 0;
  Basis basis = Basis::ComplexOrthonormal;
  PointSet source;

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
};

/// Assemble the (N+1)^2 x Q matrix; rows ordered (0,0),(1,-1),(1,0),(1,1),...
/// The point set is converted to the from-z convention before evaluation.
ShMatrix build_shm(const PointSet& points, int order,
                   Basis basis = Basis::ComplexOrthonormal);

struct EigenSummary {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double kappa = 0.0;  // sqrt(lambda_max/lambda_min), +inf when rank deficient
};

/// A * diag(mask) * A^H. Pass an empty mask for the full gram A*A^H.
/// mask entries are 0/1; length must equal Q when non-empty.
Eigen::MatrixXcd gram(const ShMatrix& shm, const std::vector<std::uint8_t>& mask = {});

/// Extreme eigenvalues of a Hermitian matrix (asymmetry above 1e-10 relative
/// is rejected). lambda_min within -1e-12*lambda_max of zero is clamped to 0.
EigenSummary eigen_summary(const Eigen::MatrixXcd& hermitian);

/// Relative floor below which lambda_min is treated as zero (rank deficiency).
inline constexpr double kRankFloor = 1e-12;

/// kappa(A) = sqrt(lambda_max/lambda_min) of A*A^H; +inf if rank deficient.
double condition_number(const ShMatrix& shm);

}  // namespace sphcond

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sphcond/sh.hpp"

namespace sphcond {

/// Complex directional transfer data sampled at Q directions x K wavenumbers.
/// Wavenumbers k = 2*pi*f/c with c = 340 m/s.
struct DirectionalSpectrum {
  PointSet directions;
  std::vector<double> wavenumbers;
  Eigen::MatrixXcd values;  // Q x K

  void check() const;  // throws on dimension mismatch
};

inline constexpr double kSpeedOfSound = 340.0;  // m/s

struct ShSpectrumCoefficients {
  int order = 0;
  Eigen::MatrixXcd coeffs;  // (N+1)^2 x K
  std::vector<double> wavenumbers;
  std::vector<double> residuals;  // per-wavenumber relative LS residual
};

/// Per-wavenumber least-squares fit of H(k) = Y^T H_nm(k).
/// Throws std::invalid_argument when Q < (N+1)^2 or the SHM is rank
/// deficient (the message carries the condition number).
ShSpectrumCoefficients fit_sh(const DirectionalSpectrum& data, int order,
                              Basis basis = Basis::ComplexOrthonormal);

/// H~(k, theta, phi) = sum_nm H_nm(k) Y_n^m(theta, phi).
std::complex<double> interpolate(const ShSpectrumCoefficients& coeffs,
                                 const Direction& target_from_z, std::size_t k_index,
                                 Basis basis = Basis::ComplexOrthonormal);

/// Per-direction RMS over wavenumbers of 20*log10(|H_ref| / |H_test|),
/// magnitudes floored at 1e-12.
Eigen::VectorXd lsd(const DirectionalSpectrum& reference, const DirectionalSpectrum& test);

/// Band-limited random field: H_nm(k) complex Gaussian with 1/(1+n) decay,
/// deterministic per seed.
struct SynthField {
  int order = 0;
  Eigen::MatrixXcd coeffs;  // (N+1)^2 x K
  std::vector<double> wavenumbers;
};

SynthField synth_field(int order, std::uint64_t seed, const std::vector<double>& wavenumbers);

/// Evaluate a synthetic field on a point set (exact band-limited evaluation).
DirectionalSpectrum evaluate_field(const SynthField& field, const PointSet& points,
                                   Basis basis = Basis::ComplexOrthonormal);

struct EccMccReport {
  double kappa_ecc = 0.0;
  double kappa_mcc = 0.0;
  double median_lsd_ecc = 0.0;
  double median_lsd_mcc = 0.0;
  // medians restricted to hoop elevations 50..130 deg, the overhead band the
  // MCC densifies
  double band_median_lsd_ecc = 0.0;
  double band_median_lsd_mcc = 0.0;
  Eigen::VectorXd lsd_ecc;  // per CIPIC-grid direction
  Eigen::VectorXd lsd_mcc;
  std::vector<std::uint8_t> mcc_wins;  // per direction, lsd_mcc < lsd_ecc
  double mcc_win_fraction = 0.0;
  double band_mcc_win_fraction = 0.0;
  int order = 0;
  double noise = 0.0;
};

/// Fit the same synthetic ground-truth field on the ECC and MCC grids
/// (optionally with measurement noise), interpolate both onto the full
/// CIPIC grid and compare log-spectral distortion.
EccMccReport run_ecc_mcc_protocol(int order, std::uint64_t seed, double noise,
                                  std::size_t n_wavenumbers = 16);

}  // namespace sphcond

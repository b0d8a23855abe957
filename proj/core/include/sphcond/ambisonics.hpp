#pragma once

#include <Eigen/Dense>

#include "sphcond/sh.hpp"

namespace sphcond {

struct ShCoefficients {
  Eigen::VectorXcd values;  // length (N+1)^2
  int order = 0;
};

enum class DecoderKind { Sampling, ModeMatching };

struct DecoderMatrix {
  Eigen::MatrixXcd entries;  // Q x (N+1)^2
  DecoderKind kind = DecoderKind::Sampling;
};

/// b = Y~ * s for plane-wave sources with the given gains.
ShCoefficients encode_plane_waves(const PointSet& sources, const Eigen::VectorXd& gains,
                                  int order, Basis basis = Basis::ComplexOrthonormal);

/// Sampling decoder D = (4pi/Q) Y^H; mode-matching D = Y^H (Y Y^H)^-1.
/// The adjoint realizes the paper's transpose for the real basis and the
/// conjugate transpose for the complex one. Mode-matching throws
/// std::invalid_argument when Y Y^H is numerically singular.
DecoderMatrix build_decoder(const ShMatrix& shm, DecoderKind kind);

/// Normalized reproduction error xi = ||b - b~||/||b~|| where b~ encodes the
/// source at order_eval and b re-encodes the decoded loudspeaker gains at
/// order_eval (decoder built at order_encode).
double reproduction_error(const Direction& source_from_z, const PointSet& speakers,
                          int order_encode, int order_eval,
                          DecoderKind kind = DecoderKind::ModeMatching,
                          Basis basis = Basis::ComplexOrthonormal);

struct WinFractions {
  double a_percent = 0.0;
  double b_percent = 0.0;
  long directions = 0;
  long ties = 0;  // split evenly into both percentages
};

/// Compare two speaker layouts over an az x el source grid (default 36 x 18).
WinFractions direction_sweep(const PointSet& speakers_a, const PointSet& speakers_b,
                             int order_encode, int order_eval,
                             DecoderKind kind = DecoderKind::ModeMatching,
                             int n_azimuth = 36, int n_elevation = 18);

}  // namespace sphcond

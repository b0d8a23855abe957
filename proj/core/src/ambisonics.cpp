#include "sphcond/ambisonics.hpp"

#include <cmath>
#include <stdexcept>

namespace sphcond {

ShCoefficients encode_plane_waves(const PointSet& sources, const Eigen::VectorXd& gains,
                                  int order, Basis basis) {
  if (gains.size() != static_cast<Eigen::Index>(sources.size()))
    throw std::invalid_argument("encode_plane_waves: gains length mismatch");
  ShMatrix y = build_shm(sources, order, basis);
  ShCoefficients b;
  b.order = order;
  b.values = y.entries * gains.cast<std::complex<double>>();
  return b;
}

DecoderMatrix build_decoder(const ShMatrix& shm, DecoderKind kind) {
  DecoderMatrix d;
  d.kind = kind;
  if (kind == DecoderKind::Sampling) {
    d.entries = (kFourPi / shm.cols()) * shm.entries.adjoint();
    return d;
  }
  const Eigen::MatrixXcd g = gram(shm);
  const EigenSummary s = eigen_summary(g);
  if (!std::isfinite(s.kappa))
    throw std::invalid_argument("build_decoder: Y*Y^H is singular, mode-matching undefined");
  d.entries = shm.entries.adjoint() * g.ldlt().solve(
                                          Eigen::MatrixXcd::Identity(shm.rows(), shm.rows()));
  return d;
}

double reproduction_error(const Direction& source_from_z, const PointSet& speakers,
                          int order_encode, int order_eval, DecoderKind kind, Basis basis) {
  if (order_encode < 0 || order_eval < 0)
    throw std::invalid_argument("reproduction_error: orders must be >= 0");
  PointSet src;
  src.convention = Convention::FromZAxis;
  src.directions = {source_from_z};

  ShMatrix y_enc = build_shm(speakers, order_encode, basis);
  DecoderMatrix dec = build_decoder(y_enc, kind);

  Eigen::VectorXd unit_gain = Eigen::VectorXd::Ones(1);
  const ShCoefficients b_target = encode_plane_waves(src, unit_gain, order_encode, basis);
  const Eigen::VectorXcd g = dec.entries * b_target.values;

  ShMatrix y_eval = build_shm(speakers, order_eval, basis);
  const Eigen::VectorXcd b = y_eval.entries * g;
  const ShCoefficients b_ref = encode_plane_waves(src, unit_gain, order_eval, basis);

  const double denom = b_ref.values.norm();
  if (denom == 0.0) throw std::invalid_argument("reproduction_error: zero-norm reference field");
  return (b - b_ref.values).norm() / denom;
}

WinFractions direction_sweep(const PointSet& speakers_a, const PointSet& speakers_b,
                             int order_encode, int order_eval, DecoderKind kind,
                             int n_azimuth, int n_elevation) {
  WinFractions wf;
  long wins_a = 0, wins_b = 0, ties = 0;
  for (int j = 0; j < n_elevation; ++j) {
    const double theta = kPi * (j + 0.5) / n_elevation;
    for (int i = 0; i < n_azimuth; ++i) {
      const double phi = kTwoPi * i / n_azimuth;
      const double xa = reproduction_error({theta, phi}, speakers_a, order_encode, order_eval, kind);
      const double xb = reproduction_error({theta, phi}, speakers_b, order_encode, order_eval, kind);
      if (std::abs(xa - xb) <= 1e-12 * std::max({1.0, xa, xb}))
        ++ties;
      else if (xa < xb)
        ++wins_a;
      else
        ++wins_b;
    }
  }
  wf.directions = static_cast<long>(n_azimuth) * n_elevation;
  wf.ties = ties;
  wf.a_percent = 100.0 * (wins_a + 0.5 * ties) / wf.directions;
  wf.b_percent = 100.0 * (wins_b + 0.5 * ties) / wf.directions;
  return wf;
}

}  // namespace sphcond

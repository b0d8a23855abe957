#include "sphcond/hrtf.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sphcond/sampling.hpp"

namespace sphcond {

void DirectionalSpectrum::check() const {
  if (values.rows() != static_cast<Eigen::Index>(directions.size()) ||
      values.cols() != static_cast<Eigen::Index>(wavenumbers.size()))
    throw std::invalid_argument("DirectionalSpectrum: value matrix dimensions mismatch");
}

ShSpectrumCoefficients fit_sh(const DirectionalSpectrum& data, int order, Basis basis) {
  data.check();
  const int p = (order + 1) * (order + 1);
  const int q = static_cast<int>(data.directions.size());
  if (q < p) throw std::invalid_argument("fit_sh: need Q >= (N+1)^2 directions");

  ShMatrix shm = build_shm(data.directions, order, basis);
  const double kappa = condition_number(shm);
  if (!std::isfinite(kappa)) {
    std::ostringstream os;
    os << "fit_sh: SHM rank deficient (kappa = " << kappa << ")";
    throw std::invalid_argument(os.str());
  }

  // model H_j(k) = sum_nm H_nm(k) Y_n^m(dir_j)  ==>  A = Y^T (plain transpose)
  const Eigen::MatrixXcd a = shm.entries.transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);

  ShSpectrumCoefficients out;
  out.order = order;
  out.wavenumbers = data.wavenumbers;
  out.coeffs.resize(p, data.values.cols());
  out.residuals.resize(data.wavenumbers.size());
  for (Eigen::Index k = 0; k < data.values.cols(); ++k) {
    out.coeffs.col(k) = qr.solve(data.values.col(k));
    const double denom = std::max(data.values.col(k).norm(), 1e-300);
    out.residuals[k] = (a * out.coeffs.col(k) - data.values.col(k)).norm() / denom;
  }
  return out;
}

std::complex<double> interpolate(const ShSpectrumCoefficients& coeffs,
                                 const Direction& target_from_z, std::size_t k_index,
                                 Basis basis) {
  if (k_index >= coeffs.wavenumbers.size())
    throw std::invalid_argument("interpolate: wavenumber index out of range");
  std::complex<double> acc = 0.0;
  for (int n = 0; n <= coeffs.order; ++n) {
    for (int m = -n; m <= n; ++m) {
      const std::complex<double> y =
          basis == Basis::ComplexOrthonormal
              ? eval_sh(n, m, target_from_z.theta, target_from_z.phi)
              : std::complex<double>(eval_sh_real(n, m, target_from_z.theta, target_from_z.phi));
      acc += coeffs.coeffs(sh_index(n, m), static_cast<Eigen::Index>(k_index)) * y;
    }
  }
  return acc;
}

Eigen::VectorXd lsd(const DirectionalSpectrum& reference, const DirectionalSpectrum& test) {
  reference.check();
  test.check();
  if (reference.values.rows() != test.values.rows() ||
      reference.values.cols() != test.values.cols())
    throw std::invalid_argument("lsd: dimension mismatch");
  constexpr double floor = 1e-12;
  const Eigen::Index q = reference.values.rows(), k = reference.values.cols();
  Eigen::VectorXd out(q);
  for (Eigen::Index j = 0; j < q; ++j) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      const double r = std::max(std::abs(reference.values(j, i)), floor);
      const double t = std::max(std::abs(test.values(j, i)), floor);
      const double db = 20.0 * std::log10(r / t);
      acc += db * db;
    }
    out[j] = std::sqrt(acc / static_cast<double>(k));
  }
  return out;
}

SynthField synth_field(int order, std::uint64_t seed, const std::vector<double>& wavenumbers) {
  if (order < 0) throw std::invalid_argument("synth_field: order must be >= 0");
  if (wavenumbers.empty()) throw std::invalid_argument("synth_field: need wavenumbers");
  SynthField f;
  f.order = order;
  f.wavenumbers = wavenumbers;
  const int p = (order + 1) * (order + 1);
  f.coeffs.resize(p, static_cast<Eigen::Index>(wavenumbers.size()));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index k = 0; k < f.coeffs.cols(); ++k) {
    for (int n = 0; n <= order; ++n) {
      const double decay = 1.0 / (1.0 + n);
      for (int m = -n; m <= n; ++m) {
        const double re = gauss(rng), im = gauss(rng);
        f.coeffs(sh_index(n, m), k) = decay * std::complex<double>(re, im);
      }
    }
  }
  return f;
}

DirectionalSpectrum evaluate_field(const SynthField& field, const PointSet& points, Basis basis) {
  ShMatrix y = build_shm(points, field.order, basis);
  DirectionalSpectrum d;
  d.directions = points;
  d.wavenumbers = field.wavenumbers;
  d.values = y.entries.transpose() * field.coeffs;
  return d;
}

EccMccReport run_ecc_mcc_protocol(int order, std::uint64_t seed, double noise,
                                  std::size_t n_wavenumbers) {
  std::vector<double> ks(n_wavenumbers);
  for (std::size_t i = 0; i < n_wavenumbers; ++i) {
    const double f = 500.0 + (19000.0 * i) / std::max<std::size_t>(1, n_wavenumbers - 1);
    ks[i] = kTwoPi * f / kSpeedOfSound;
  }
  const SynthField field = synth_field(order, seed, ks);

  const PointSet ecc = gen_ecc();
  const PointSet mcc = gen_mcc();
  const PointSet cipic = gen_cipic();

  EccMccReport rep;
  rep.order = order;
  rep.noise = noise;
  rep.kappa_ecc = condition_number(build_shm(ecc, order));
  rep.kappa_mcc = condition_number(build_shm(mcc, order));

  const DirectionalSpectrum truth = evaluate_field(field, cipic);

  auto run_one = [&](const PointSet& grid, std::uint64_t noise_seed) {
    DirectionalSpectrum meas = evaluate_field(field, grid);
    if (noise > 0.0) {
      std::mt19937_64 rng(noise_seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (Eigen::Index j = 0; j < meas.values.rows(); ++j)
        for (Eigen::Index k = 0; k < meas.values.cols(); ++k)
          meas.values(j, k) += noise * std::complex<double>(gauss(rng), gauss(rng));
    }
    const ShSpectrumCoefficients fit = fit_sh(meas, order);
    DirectionalSpectrum interp;
    interp.directions = cipic;
    interp.wavenumbers = ks;
    interp.values.resize(truth.values.rows(), truth.values.cols());
    const PointSet cz = cipic.converted(Convention::FromZAxis);
    for (Eigen::Index j = 0; j < interp.values.rows(); ++j)
      for (std::size_t k = 0; k < ks.size(); ++k)
        interp.values(j, static_cast<Eigen::Index>(k)) =
            interpolate(fit, cz.directions[j], k);
    return lsd(truth, interp);
  };

  rep.lsd_ecc = run_one(ecc, seed ^ 0xeccULL);
  rep.lsd_mcc = run_one(mcc, seed ^ 0x3ccULL);

  auto median = [](std::vector<double> s) {
    std::nth_element(s.begin(), s.begin() + s.size() / 2, s.end());
    return s[s.size() / 2];
  };
  rep.median_lsd_ecc = median({rep.lsd_ecc.data(), rep.lsd_ecc.data() + rep.lsd_ecc.size()});
  rep.median_lsd_mcc = median({rep.lsd_mcc.data(), rep.lsd_mcc.data() + rep.lsd_mcc.size()});

  // hoop elevation of CIPIC point j (hoop-major layout, 50 per hoop)
  auto elev_deg = [](Eigen::Index j) { return -45.0 + 5.625 * static_cast<double>(j % 50); };
  std::vector<double> band_ecc, band_mcc;
  rep.mcc_wins.resize(rep.lsd_ecc.size());
  long wins = 0, band_wins = 0, band_count = 0;
  for (Eigen::Index j = 0; j < rep.lsd_ecc.size(); ++j) {
    rep.mcc_wins[j] = rep.lsd_mcc[j] < rep.lsd_ecc[j] ? 1 : 0;
    wins += rep.mcc_wins[j];
    if (elev_deg(j) >= 50.0 && elev_deg(j) <= 130.0) {
      band_ecc.push_back(rep.lsd_ecc[j]);
      band_mcc.push_back(rep.lsd_mcc[j]);
      band_wins += rep.mcc_wins[j];
      ++band_count;
    }
  }
  rep.mcc_win_fraction = static_cast<double>(wins) / static_cast<double>(rep.lsd_ecc.size());
  rep.band_mcc_win_fraction = static_cast<double>(band_wins) / static_cast<double>(band_count);
  rep.band_median_lsd_ecc = median(band_ecc);
  rep.band_median_lsd_mcc = median(band_mcc);
  return rep;
}

}  // namespace sphcond

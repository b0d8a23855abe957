#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sphcond/hrtf.hpp"
#include "sphcond/sampling.hpp"

using namespace sphcond;

namespace {
std::vector<double> some_wavenumbers(int n) {
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = kTwoPi * (500.0 + 1500.0 * i) / kSpeedOfSound;
  return k;
}
}  // namespace

TEST_CASE("synth field is deterministic per seed") {
  const auto ks = some_wavenumbers(4);
  const SynthField a = synth_field(5, 99, ks);
  const SynthField b = synth_field(5, 99, ks);
  const SynthField c = synth_field(5, 100, ks);
  CHECK((a.coeffs - b.coeffs).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.coeffs - c.coeffs).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("fit on a T-design recovers the generating coefficients") {
  const auto ks = some_wavenumbers(3);
  const SynthField field = synth_field(3, 7, ks);
  const PointSet t = load_tdesign("T7Q24");
  const DirectionalSpectrum data = evaluate_field(field, t);
  const ShSpectrumCoefficients fit = fit_sh(data, 3);
  CHECK((fit.coeffs - field.coeffs).cwiseAbs().maxCoeff() < 1e-9);
  for (double r : fit.residuals) CHECK(r < 1e-9);
}

TEST_CASE("fit preconditions") {
  const auto ks = some_wavenumbers(2);
  const SynthField field = synth_field(2, 1, ks);
  std::mt19937_64 rng(5);
  const PointSet few = oracle::random_points(6, rng);  // Q=6 < (2+1)^2
  const DirectionalSpectrum data = evaluate_field(field, few);
  CHECK_THROWS_AS(fit_sh(data, 2), std::invalid_argument);

  DirectionalSpectrum bad = data;
  bad.values.resize(3, 2);
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
}

TEST_CASE("interpolation reproduces fitted directions and closed forms") {
  const auto ks = some_wavenumbers(3);
  const SynthField field = synth_field(4, 11, ks);
  const PointSet t = load_tdesign("T8Q36");
  const DirectionalSpectrum data = evaluate_field(field, t);
  const ShSpectrumCoefficients fit = fit_sh(data, 4);

  const PointSet tz = t.converted(Convention::FromZAxis);
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t k = 0; k < ks.size(); ++k)
      CHECK(std::abs(interpolate(fit, tz.directions[j], k) -
                     data.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k))) <
            1e-9);

  // unseen direction matches the generating band-limited series
  const Direction probe{1.234, 5.678};
  for (std::size_t k = 0; k < ks.size(); ++k) {
    std::complex<double> direct = 0.0;
    for (int n = 0; n <= 4; ++n)
      for (int m = -n; m <= n; ++m)
        direct += field.coeffs(sh_index(n, m), static_cast<Eigen::Index>(k)) *
                  eval_sh(n, m, probe.theta, probe.phi);
    CHECK(std::abs(interpolate(fit, probe, k) - direct) < 1e-9);
  }
}

TEST_CASE("order-0 coefficients interpolate to a constant") {
  const auto ks = some_wavenumbers(1);
  ShSpectrumCoefficients c;
  c.order = 0;
  c.wavenumbers = ks;
  c.coeffs = Eigen::MatrixXcd::Constant(1, 1, std::complex<double>(2.0, -1.0));
  const std::complex<double> v1 = interpolate(c, {0.3, 0.4}, 0);
  const std::complex<double> v2 = interpolate(c, {2.1, 5.0}, 0);
  CHECK(std::abs(v1 - v2) < 1e-15);
}

TEST_CASE("lsd closed forms and symmetry") {
  const auto ks = some_wavenumbers(4);
  const SynthField field = synth_field(2, 3, ks);
  const PointSet t = load_tdesign("T5Q12");
  const DirectionalSpectrum a = evaluate_field(field, t);

  CHECK(lsd(a, a).cwiseAbs().maxCoeff() == 0.0);

  DirectionalSpectrum twice = a;
  twice.values *= 2.0;
  const Eigen::VectorXd l2 = lsd(a, twice);
  for (Eigen::Index i = 0; i < l2.size(); ++i)
    CHECK(l2[i] == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));

  const Eigen::VectorXd fw = lsd(a, twice);
  const Eigen::VectorXd bw = lsd(twice, a);
  CHECK((fw - bw).cwiseAbs().maxCoeff() < 1e-12);

  DirectionalSpectrum mismatched = a;
  mismatched.values.resize(a.values.rows(), 2);
  CHECK_THROWS_AS(lsd(a, mismatched), std::invalid_argument);
}

TEST_CASE("truncated fit carries exactly the high-degree energy") {
  // on a t-design (equal weights) the discarded degrees stay l2-orthogonal to
  // the kept ones as long as strength >= n_low + n_high, so the LS residual
  // equals the tail energy evaluated by the direct series
  const auto ks = some_wavenumbers(2);
  const SynthField field = synth_field(4, 21, ks);
  const PointSet grid = load_tdesign("T10Q60");  // strength 10 >= 2 + 4
  const DirectionalSpectrum data = evaluate_field(field, grid);
  const ShSpectrumCoefficients low = fit_sh(data, 2);

  const ShMatrix y_high = build_shm(grid, 4);
  for (std::size_t k = 0; k < ks.size(); ++k) {
    Eigen::VectorXcd tail = Eigen::VectorXcd::Zero(grid.size());
    for (int n = 3; n <= 4; ++n)
      for (int m = -n; m <= n; ++m)
        tail += field.coeffs(sh_index(n, m), static_cast<Eigen::Index>(k)) *
                y_high.entries.row(sh_index(n, m)).transpose();
    const double rel = tail.norm() / data.values.col(static_cast<Eigen::Index>(k)).norm();
    CHECK(low.residuals[k] > 0.0);
    CHECK(low.residuals[k] == doctest::Approx(rel).epsilon(1e-6));
  }
}

TEST_CASE("perturbation sensitivity is bounded by kappa") {
  std::mt19937_64 rng(37);
  const auto ks = some_wavenumbers(1);
  const PointSet grid = gen_fibonacci(40);
  const SynthField field = synth_field(3, 5, ks);
  const DirectionalSpectrum clean = evaluate_field(field, grid);
  const ShSpectrumCoefficients base = fit_sh(clean, 3);
  const double kappa = condition_number(build_shm(grid, 3));
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    DirectionalSpectrum noisy = clean;
    Eigen::VectorXcd delta(noisy.values.rows());
    for (Eigen::Index i = 0; i < delta.size(); ++i)
      delta[i] = 1e-6 * std::complex<double>(g(rng), g(rng));
    noisy.values.col(0) += delta;
    const ShSpectrumCoefficients pert = fit_sh(noisy, 3);
    const double rel_coeff = (pert.coeffs - base.coeffs).norm() / base.coeffs.norm();
    const double rel_data = delta.norm() / clean.values.col(0).norm();
    CHECK(rel_coeff <= kappa * rel_data * (1.0 + 1e-9));
  }
}

TEST_CASE("ecc/mcc protocol: noiseless fits are exact, mcc wins overhead") {
  const EccMccReport clean = run_ecc_mcc_protocol(10, 4242, 0.0, 6);
  CHECK(clean.median_lsd_ecc < 1e-8);
  CHECK(clean.median_lsd_mcc < 1e-8);
  CHECK(clean.kappa_mcc < clean.kappa_ecc);

  // under noise the MCC's dense overhead band (elevations 50..130 deg) wins;
  // the full-grid median goes the other way because the evaluation grid is
  // dominated by near-horizontal directions where the MCC is sparse
  const EccMccReport noisy = run_ecc_mcc_protocol(10, 4242, 1e-4, 6);
  CHECK(noisy.band_median_lsd_mcc < noisy.band_median_lsd_ecc);
  CHECK(noisy.band_mcc_win_fraction > 0.5);
  CHECK(noisy.mcc_win_fraction > 0.0);
  CHECK(noisy.mcc_win_fraction < 1.0);
}

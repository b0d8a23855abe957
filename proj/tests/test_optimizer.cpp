#include <doctest.h>

#include <chrono>
#include <random>

#include "oracles.hpp"
#include "sphcond/optimizer.hpp"
#include "sphcond/sampling.hpp"

using namespace sphcond;

namespace {

ShMatrix shm_from_matrix(const Eigen::MatrixXcd& a) {
  ShMatrix shm;
  shm.entries = a;
  shm.order = 0;
  std::mt19937_64 rng(0);
  shm.source = oracle::random_points(static_cast<int>(a.cols()), rng);
  return shm;
}

SolverConfig exact_cfg(double epsilon = 1e-12) {
  SolverConfig cfg;
  cfg.mode = SolverMode::ExactBnb;
  cfg.epsilon = epsilon;
  cfg.max_iters = 0;  // unlimited nodes
  return cfg;
}

// the Appendix-style toy oracle over a tabulated (lambda_max, lambda_min) grid
InnerSolver tabulated_oracle(const double (&lmaxs)[3][9], const double (&lmins)[9]) {
  return [&lmaxs, &lmins](double eta) {
    InnerSolution sol;
    for (int c = 0; c < 9; ++c) {
      if (lmins[c] < eta + 1e-12) continue;
      for (int r = 0; r < 3; ++r) {
        if (sol.status == InnerStatus::Infeasible || lmaxs[r][c] < sol.lambda_max) {
          sol.status = InnerStatus::Solved;
          sol.lambda_max = lmaxs[r][c];
          sol.lambda_min = lmins[c];
          sol.mask = mask_from_indices(27, {c * 3 + r});
        }
      }
    }
    return sol;
  };
}

const double kToyLmins[9] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
const double kToyLmaxs[3][9] = {{2, 4, 3, 1, 3, 11, 4, 2, 7},
                                {11, 6, 6, 5, 4, 9, 10, 4, 6},
                                {8, 9, 8, 11, 6, 2, 6, 3, 2}};

}  // namespace

TEST_CASE("mask utilities") {
  SelectionMask m = mask_from_indices(6, {0, 2, 5});
  CHECK(m.q_prime() == 3);
  CHECK(m.indices() == std::vector<int>{0, 2, 5});
  CHECK(full_mask(4).q_prime() == 4);
  CHECK_THROWS_AS(mask_from_indices(3, {7}), std::invalid_argument);
}

TEST_CASE("cipic caps formula") {
  const auto v = make_cipic_caps();
  REQUIRE(v.size() == 25);
  CHECK(v[0] == 14);
  CHECK(v[12] == 50);
  CHECK(v[24] == 14);
  CHECK(v[13] == 47);
  long total = 0;
  for (int c : v) total += c;
  CHECK(total == 782);
}

TEST_CASE("eta upper bound") {
  ShMatrix id = shm_from_matrix(Eigen::MatrixXcd::Identity(5, 5));
  CHECK(eta_upper_bound(id) == doctest::Approx(1.0));

  std::mt19937_64 rng(31);
  const Eigen::MatrixXcd a = oracle::random_matrix(3, 10, rng);
  CHECK(eta_upper_bound(shm_from_matrix(a)) ==
        doctest::Approx((a * a.adjoint()).trace().real() / 3.0).epsilon(1e-12));

  // addition theorem: column norms of a complex orthonormal SHM are P/(4pi),
  // so the bound is Q/(4pi)
  const PointSet ps = oracle::random_points(40, rng);
  const ShMatrix y = build_shm(ps, 3);
  CHECK(eta_upper_bound(y) == doctest::Approx(40.0 / kFourPi).epsilon(1e-12));
}

TEST_CASE("bound validity over random masks") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> qd(6, 14);
  for (int t = 0; t < 20; ++t) {
    const PointSet ps = oracle::random_points(qd(rng), rng);
    const ShMatrix y = build_shm(ps, 1);
    const double ub = eta_upper_bound(y);
    for (int s = 0; s < 50; ++s) {
      std::vector<std::uint8_t> mask(ps.size());
      for (auto& b : mask) b = rng() & 1;
      if (std::count(mask.begin(), mask.end(), 1) == 0) continue;
      const auto es = eigen_summary(gram(y, mask));
      CHECK(es.lambda_min <= ub + 1e-12);
    }
  }
}

TEST_CASE("interlacing: adding a column never lowers the extremes") {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 25; ++t) {
    const PointSet ps = oracle::random_points(12, rng);
    const ShMatrix y = build_shm(ps, 1);
    std::vector<std::uint8_t> mask(12, 0);
    for (int j = 0; j < 12; ++j) mask[j] = rng() & 1;
    const int add = static_cast<int>(rng() % 12);
    if (mask[add]) continue;
    const auto before = eigen_summary(gram(y, mask));
    mask[add] = 1;
    const auto after = eigen_summary(gram(y, mask));
    CHECK(after.lambda_max >= before.lambda_max - 1e-12);
    CHECK(after.lambda_min >= before.lambda_min - 1e-12);
  }
}

TEST_CASE("appendix fixture: sweep over the tabulated grid") {
  const auto t0 = std::chrono::steady_clock::now();
  const TransitionTrace trace = sweep_core(1.0, tabulated_oracle(kToyLmaxs, kToyLmins));
  const auto us =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  REQUIRE(trace.transition_count() == 4);
  const double expect[4][2] = {{1, 0.4}, {2, 0.6}, {2, 0.8}, {2, 0.9}};
  for (int i = 0; i < 4; ++i) {
    CHECK(trace.records[i].lambda_max == expect[i][0]);
    CHECK(trace.records[i].lambda_min == expect[i][1]);
  }
  CHECK(trace.records[0].eta == 0.0);
  CHECK(trace.records[1].eta == 0.4);
  CHECK(trace.termination == "infeasible");
  // the toy table's kappa is the plain eigenvalue ratio; best record is (2, 0.9)
  const auto& best = trace.records[3];
  CHECK(best.gram_kappa() == 2.0 / 0.9);
  CHECK(trace.kappa_star == doctest::Approx(std::sqrt(2.0 / 0.9)));
  CHECK(us < 1000);
}

TEST_CASE("inner solve: Q == Q' returns the full mask") {
  std::mt19937_64 rng(77);
  const PointSet ps = oracle::random_points(8, rng);
  const ShMatrix y = build_shm(ps, 1);
  const auto sol = inner_solve(y, 8, 0.0, std::nullopt, exact_cfg());
  REQUIRE(sol.status == InnerStatus::Solved);
  CHECK(sol.mask.q_prime() == 8);
  const auto es = eigen_summary(gram(y));
  CHECK(sol.lambda_max == doctest::Approx(es.lambda_max).epsilon(1e-12));
}

TEST_CASE("exact inner solve matches exhaustive enumeration of lambda_max") {
  std::mt19937_64 rng(123);
  const PointSet ps = oracle::random_points(10, rng);
  const ShMatrix y = build_shm(ps, 1);  // P = 4
  const auto sol = inner_solve(y, 6, 0.0, std::nullopt, exact_cfg());
  REQUIRE(sol.status == InnerStatus::Solved);

  // brute force over all C(10,6) = 210 subsets
  double best_lmax = 1e300;
  std::vector<int> comb = {0, 1, 2, 3, 4, 5};
  while (true) {
    auto m = mask_from_indices(10, comb);
    const auto es = eigen_summary(gram(y, m.bits));
    if (es.lambda_min >= 1e-12 && es.lambda_max < best_lmax) best_lmax = es.lambda_max;
    int i = 5;
    while (i >= 0 && comb[i] == 4 + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < 6; ++j) comb[j] = comb[j - 1] + 1;
  }
  CHECK(sol.lambda_max == doctest::Approx(best_lmax).epsilon(1e-10));
}

TEST_CASE("sweep equivalence with the exhaustive kappa oracle (appendix A)") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 8; ++t) {
    const int q = 8 + static_cast<int>(rng() % 4);  // 8..11
    const PointSet ps = oracle::random_points(q, rng);
    const ShMatrix y = build_shm(ps, 1);
    const double oracle_kappa = oracle::exhaustive_min_kappa(y.entries, 6);
    const TransitionTrace tr = sweep_transitions(y, 6, std::nullopt, exact_cfg());
    REQUIRE(!tr.records.empty());
    CHECK(tr.kappa_star == doctest::Approx(oracle_kappa).epsilon(1e-9));
  }
}

TEST_CASE("sweep soundness: identical kappa anywhere inside an eta interval") {
  std::mt19937_64 rng(321);
  const PointSet ps = oracle::random_points(10, rng);
  const ShMatrix y = build_shm(ps, 1);
  const auto cfg = exact_cfg();
  const TransitionTrace tr = sweep_transitions(y, 7, std::nullopt, cfg);
  REQUIRE(tr.records.size() >= 2);
  for (std::size_t i = 0; i + 1 < tr.records.size() && i < 3; ++i) {
    const double mid = 0.5 * (tr.records[i].eta + tr.records[i].lambda_min);
    const auto sol = inner_solve(y, 7, mid, std::nullopt, cfg);
    REQUIRE(sol.status == InnerStatus::Solved);
    CHECK(std::sqrt(sol.lambda_max / sol.lambda_min) ==
          doctest::Approx(tr.records[i].kappa).epsilon(1e-10));
  }
}

TEST_CASE("feasible region shrinks as eta rises") {
  std::mt19937_64 rng(11);
  const PointSet ps = oracle::random_points(9, rng);
  const ShMatrix y = build_shm(ps, 1);
  auto count_feasible = [&](double eta) {
    int count = 0;
    std::vector<int> comb = {0, 1, 2, 3, 4};
    while (true) {
      const auto es = eigen_summary(gram(y, mask_from_indices(9, comb).bits));
      if (es.lambda_min > eta) ++count;
      int i = 4;
      while (i >= 0 && comb[i] == 4 + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < 5; ++j) comb[j] = comb[j - 1] + 1;
    }
    return count;
  };
  int prev = count_feasible(0.0);
  for (double eta : {0.01, 0.05, 0.1, 0.2, 0.4}) {
    const int now = count_feasible(eta);
    CHECK(now <= prev);
    prev = now;
  }
}

TEST_CASE("degenerate sweep with Q' = Q has a single transition") {
  std::mt19937_64 rng(13);
  const PointSet ps = oracle::random_points(7, rng);
  const ShMatrix y = build_shm(ps, 1);
  const TransitionTrace tr = sweep_transitions(y, 7, std::nullopt, exact_cfg());
  REQUIRE(tr.transition_count() == 1);
  const auto es = eigen_summary(gram(y));
  CHECK(tr.kappa_star == doctest::Approx(es.kappa).epsilon(1e-12));
  CHECK(tr.termination == "infeasible");
}

TEST_CASE("infeasible first solve yields an empty trace with a report") {
  std::mt19937_64 rng(19);
  const PointSet ps = oracle::random_points(10, rng);
  const ShMatrix y = build_shm(ps, 1);  // P = 4
  const TransitionTrace tr = sweep_transitions(y, 2, std::nullopt, exact_cfg());
  CHECK(tr.records.empty());
  CHECK(tr.infeasible_at_start);
  CHECK(tr.termination == "infeasible");
}

TEST_CASE("hoop caps are honored and reduce to unconstrained when slack") {
  std::mt19937_64 rng(29);
  PointSet ps = oracle::random_points(12, rng);
  ps.labels = {0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2};
  const ShMatrix y = build_shm(ps, 1);

  // caps equal to hoop sizes: same optimum as the unconstrained solve
  HoopConstraintSet slack = hoops_from_labels(ps, {4, 4, 4});
  const auto sol_free = inner_solve(y, 6, 0.0, std::nullopt, exact_cfg());
  const auto sol_slack = inner_solve(y, 6, 0.0, slack, exact_cfg());
  REQUIRE(sol_free.status == InnerStatus::Solved);
  REQUIRE(sol_slack.status == InnerStatus::Solved);
  CHECK(sol_free.lambda_max == doctest::Approx(sol_slack.lambda_max).epsilon(1e-12));

  // binding caps: every hoop exactly at its cap when totals match
  HoopConstraintSet tight = hoops_from_labels(ps, {2, 2, 2});
  const auto sol_tight = inner_solve(y, 6, 0.0, tight, exact_cfg());
  REQUIRE(sol_tight.status == InnerStatus::Solved);
  std::vector<int> per_hoop(3, 0);
  for (int idx : sol_tight.mask.indices()) per_hoop[ps.labels[idx]]++;
  CHECK(per_hoop == std::vector<int>{2, 2, 2});
  CHECK(tight.satisfied(sol_tight.mask));
}

TEST_CASE("local search returns feasible caps-respecting masks") {
  std::mt19937_64 rng(43);
  PointSet ps = oracle::random_points(40, rng);
  ps.labels.resize(40);
  for (int i = 0; i < 40; ++i) ps.labels[i] = i / 10;
  const ShMatrix y = build_shm(ps, 1);
  HoopConstraintSet hoops = hoops_from_labels(ps, {5, 5, 5, 5});
  SolverConfig cfg;
  cfg.mode = SolverMode::LocalSearch;
  cfg.seed = 9;
  cfg.restarts = 2;
  cfg.max_iters = 4000;
  const TransitionTrace tr = sweep_transitions(y, 16, hoops, cfg);
  REQUIRE(!tr.records.empty());
  for (const auto& rec : tr.records) {
    CHECK(rec.mask.q_prime() == 16);
    CHECK(hoops.satisfied(rec.mask));
    CHECK(rec.lambda_min > rec.eta);
  }
  for (std::size_t i = 1; i < tr.records.size(); ++i)
    CHECK(tr.records[i].eta > tr.records[i - 1].eta);
}

TEST_CASE("local search is deterministic for a fixed seed") {
  const PointSet fib = gen_fibonacci(60, true);
  const ShMatrix y = build_shm(fib, 2);
  SolverConfig cfg;
  cfg.mode = SolverMode::LocalSearch;
  cfg.seed = 1234;
  cfg.restarts = 3;
  cfg.max_iters = 2000;
  cfg.threads = 4;
  const auto a = inner_solve(y, 20, 0.0, std::nullopt, cfg);
  const auto b = inner_solve(y, 20, 0.0, std::nullopt, cfg);
  REQUIRE(a.status == InnerStatus::Solved);
  CHECK(a.mask.bits == b.mask.bits);
  CHECK(a.lambda_max == b.lambda_max);
}

TEST_CASE("dedup groups duplicate and symmetric columns") {
  std::mt19937_64 rng(71);
  PointSet ps = oracle::random_points(10, rng);
  const ShMatrix clean = build_shm(ps, 2);
  const DedupResult none = dedup_columns(clean);
  CHECK(none.duplicate_count == 0);
  CHECK(none.reduced.cols() == 10);
  for (int j = 0; j < 10; ++j) CHECK(none.group_of[j] == j);

  // an appended duplicate point collapses, kappa unchanged
  PointSet dup = ps;
  dup.directions.push_back(ps.directions[2]);
  const ShMatrix with_dup = build_shm(dup, 2);
  const DedupResult d = dedup_columns(with_dup);
  CHECK(d.duplicate_count == 1);
  CHECK(d.reduced.cols() == 10);
  CHECK(d.group_of[10] == d.group_of[2]);
  // dropping the duplicate restores the original matrix exactly
  CHECK((d.reduced.entries - clean.entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK(condition_number(d.reduced) == doctest::Approx(condition_number(clean)).epsilon(1e-10));

  // folded +/- latitudes land on identical physical columns; two groups here
  PointSet folded;
  folded.convention = Convention::AboveXyPlane;
  folded.directions = {{0.7, 1.1}, {-0.7, 1.1}, {1.2, 0.3}, {-1.2, 0.3}, {0.4, 2.0}};
  for (auto& d : folded.directions) d.theta = std::abs(d.theta);  // the fold
  const DedupResult f = dedup_columns(build_shm(folded, 3));
  CHECK(f.duplicate_count == 2);
  CHECK(f.reduced.source.size() == 3);
}

TEST_CASE("optimize_hrtf_grid validates caps totals") {
  PointSet ps = gen_interaural_grid({0.0, 0.5}, 0.5, -0.7, 0.8);
  SolverConfig cfg = exact_cfg();
  CHECK_THROWS_AS(optimize_hrtf_grid(ps, 1, static_cast<int>(ps.size()), {1, 1}, cfg),
                  std::invalid_argument);
}

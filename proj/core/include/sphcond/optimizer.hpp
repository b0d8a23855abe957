#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sphcond/sh.hpp"

namespace sphcond {

/// Binary diagonal of the selection matrix Delta (one bit per SHM column).
struct SelectionMask {
  std::vector<std::uint8_t> bits;

  std::size_t q_prime() const;
  std::vector<int> indices() const;
  bool operator==(const SelectionMask&) const = default;
};

SelectionMask full_mask(std::size_t q);
SelectionMask mask_from_indices(std::size_t q, const std::vector<int>& idx);

/// Per-hoop cap U*delta <= v, stored as a hoop index per column plus caps.
struct HoopConstraintSet {
  std::vector<int> hoop_of;  // size Q, values in [0, J)
  std::vector<int> caps;     // size J

  std::size_t hoop_count() const { return caps.size(); }
  bool satisfied(const SelectionMask& mask) const;
  long cap_total() const;
};

/// Caps of the interaural-grid run: v_i = 14+3(i-1) for i=1..13,
/// v_i = 50-3(i-13) for i=14..25.
std::vector<int> make_cipic_caps();

/// Hoop constraints from a labeled point set (labels are hoop indices).
HoopConstraintSet hoops_from_labels(const PointSet& points, const std::vector<int>& caps);

enum class SolverMode { ExactBnb, LocalSearch };

struct SolverConfig {
  SolverMode mode = SolverMode::LocalSearch;
  double epsilon = 1e-7;     // strict-inequality relaxation
  std::uint64_t seed = 0;
  int restarts = 3;          // local search restarts
  long max_iters = 60000;    // swap samples per restart / BnB node budget
  int threads = 0;           // 0 = hardware concurrency
};

enum class InnerStatus { Solved, Infeasible };

struct InnerSolution {
  InnerStatus status = InnerStatus::Infeasible;
  SelectionMask mask;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Minimize lambda_max(A Delta A^H) subject to popcount(Delta) = q_prime,
/// lambda_min(A Delta A^H) >= eta + epsilon, and optional hoop caps.
/// ExactBnb returns the global optimum (ties: larger lambda_min, then
/// lexicographically smallest mask); LocalSearch a locally optimal mask.
InnerSolution inner_solve(const ShMatrix& shm, int q_prime, double eta,
                          const std::optional<HoopConstraintSet>& hoops,
                          const SolverConfig& cfg);

struct TransitionRecord {
  int index = 0;
  double eta = 0.0;
  SelectionMask mask;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double kappa = 0.0;  // sqrt(lambda_max/lambda_min) of the selected sub-matrix

  double gram_kappa() const { return lambda_max / lambda_min; }
};

struct TransitionTrace {
  std::vector<TransitionRecord> records;
  double eta_star = 0.0;
  SelectionMask best_mask;
  double kappa_star = 0.0;
  bool infeasible_at_start = false;
  std::string termination;  // "upper_bound" | "infeasible" | "stalled"

  std::size_t transition_count() const { return records.size(); }
};

using InnerSolver = std::function<InnerSolution(double eta)>;

/// Upper bound Tr(A A^H)/P on lambda_min(A Delta A^H) over all masks.
double eta_upper_bound(const ShMatrix& shm);

/// The finite transition sweep: start at eta = 0, solve the inner problem,
/// record (eta, Delta, lambda_min, lambda_max, kappa), step eta to the
/// record's lambda_min; stop at eta >= eta_ub or on infeasibility. The best
/// record (minimum kappa) yields eta_star / kappa_star.
TransitionTrace sweep_core(double eta_ub, const InnerSolver& inner);

TransitionTrace sweep_transitions(const ShMatrix& shm, int q_prime,
                                  const std::optional<HoopConstraintSet>& hoops,
                                  const SolverConfig& cfg);

struct DedupResult {
  ShMatrix reduced;
  std::vector<int> group_of;         // original column -> reduced column
  std::vector<int> representative;   // reduced column -> original column
  int duplicate_count = 0;           // columns equal to an earlier one
};

/// Group columns equal within tol; duplicates arise from the formula
/// symmetries Y(-theta,phi) = Y(theta,phi) and Y(pi/2+theta) = Y(3pi/2-theta)
/// and from repeated points.
DedupResult dedup_columns(const ShMatrix& shm, double tol = 1e-10);

/// Hoop-capped sweep on a labeled point set (interaural grids).
/// Throws std::invalid_argument if the caps cannot accommodate q_prime.
TransitionTrace optimize_hrtf_grid(const PointSet& points, int order, int q_prime,
                                   const std::vector<int>& caps, const SolverConfig& cfg);

}  // namespace sphcond

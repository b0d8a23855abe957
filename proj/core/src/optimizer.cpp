#include "sphcond/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace sphcond {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Extremes {
  double lmin = 0.0;
  double lmax = 0.0;
};

Extremes extremes(const Eigen::MatrixXcd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

double cmp_tol(double scale) { return 1e-12 * std::max(1.0, std::abs(scale)); }

// total order on candidate solutions: smaller lambda_max, then larger
// lambda_min, then lexicographically smallest mask
bool better(double lmax_a, double lmin_a, const std::vector<std::uint8_t>& a,
            double lmax_b, double lmin_b, const std::vector<std::uint8_t>& b) {
  const double t = cmp_tol(std::max(lmax_a, lmax_b));
  if (lmax_a < lmax_b - t) return true;
  if (lmax_a > lmax_b + t) return false;
  if (lmin_a > lmin_b + t) return true;
  if (lmin_a < lmin_b - t) return false;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

int hardware_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// ---------------------------------------------------------------- exact BnB

class BnbSolver {
 public:
  BnbSolver(const Eigen::MatrixXcd& a, int q_prime, double eta_eff,
            const std::optional<HoopConstraintSet>& hoops, long node_budget)
      : a_(a),
        p_(static_cast<int>(a.rows())),
        q_(static_cast<int>(a.cols())),
        qp_(q_prime),
        eta_eff_(eta_eff),
        hoops_(hoops),
        node_budget_(node_budget <= 0 ? std::numeric_limits<long>::max() : node_budget) {
    // suffix grams for the feasibility bound: lambda_min of any completion of
    // a partial mask is at most lambda_min(partial + everything remaining)
    suffix_.assign(q_ + 1, Eigen::MatrixXcd::Zero(p_, p_));
    for (int j = q_ - 1; j >= 0; --j)
      suffix_[j] = suffix_[j + 1] + a_.col(j) * a_.col(j).adjoint();
  }

  InnerSolution run(int threads) {
    std::vector<std::uint8_t> cur(q_, 0);
    std::vector<int> hoop_count(hoops_ ? hoops_->hoop_count() : 0, 0);
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(p_, p_);
    if (threads > 1 && q_ >= 4) {
      // explore the four depth-2 subtrees concurrently; the shared incumbent
      // only ever tightens, so stale reads just weaken pruning
      std::vector<std::future<void>> futs;
      for (int first = 1; first >= 0; --first) {
        for (int second = 1; second >= 0; --second) {
          futs.push_back(std::async(std::launch::async, [this, first, second]() {
            std::vector<std::uint8_t> c(q_, 0);
            std::vector<int> hc(hoops_ ? hoops_->hoop_count() : 0, 0);
            Eigen::MatrixXcd gg = Eigen::MatrixXcd::Zero(p_, p_);
            int chosen = 0;
            for (int d = 0; d < 2; ++d) {
              const int bit = d == 0 ? first : second;
              if (bit) {
                if (hoops_) {
                  const int h = hoops_->hoop_of[d];
                  if (hc[h] + 1 > hoops_->caps[h]) return;
                  hc[h]++;
                }
                c[d] = 1;
                gg += a_.col(d) * a_.col(d).adjoint();
                ++chosen;
              }
            }
            dfs(2, chosen, c, hc, gg);
          }));
        }
      }
      for (auto& f : futs) f.get();
    } else {
      dfs(0, 0, cur, hoop_count, g);
    }

    InnerSolution sol;
    if (found_) {
      sol.status = InnerStatus::Solved;
      sol.mask.bits = best_mask_;
      sol.lambda_min = best_lmin_;
      sol.lambda_max = best_lmax_;
    }
    return sol;
  }

 private:
  void dfs(int idx, int chosen, std::vector<std::uint8_t>& cur, std::vector<int>& hoop_count,
           const Eigen::MatrixXcd& g) {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) > node_budget_) return;
    if (chosen == qp_) {
      const Extremes e = extremes(g);
      if (e.lmin >= eta_eff_) {
        std::lock_guard<std::mutex> lk(mu_);
        if (!found_ || better(e.lmax, e.lmin, cur, best_lmax_, best_lmin_, best_mask_)) {
          found_ = true;
          best_lmax_ = e.lmax;
          best_lmin_ = e.lmin;
          best_mask_ = cur;
        }
      }
      return;
    }
    if (idx >= q_ || chosen + (q_ - idx) < qp_) return;

    const Extremes e = extremes(g);
    {
      std::lock_guard<std::mutex> lk(mu_);
      // adding columns never lowers lambda_max (rank-1 PSD updates)
      if (found_ && e.lmax > best_lmax_ + cmp_tol(best_lmax_)) return;
    }
    // best achievable lambda_min from here
    if (extremes(g + suffix_[idx]).lmin < eta_eff_) return;

    // include idx
    bool cap_ok = true;
    if (hoops_) {
      const int h = hoops_->hoop_of[idx];
      cap_ok = hoop_count[h] + 1 <= hoops_->caps[h];
      if (cap_ok) hoop_count[h]++;
    }
    if (cap_ok) {
      cur[idx] = 1;
      Eigen::MatrixXcd g2 = g + a_.col(idx) * a_.col(idx).adjoint();
      dfs(idx + 1, chosen + 1, cur, hoop_count, g2);
      cur[idx] = 0;
      if (hoops_) hoop_count[hoops_->hoop_of[idx]]--;
    }
    // exclude idx
    dfs(idx + 1, chosen, cur, hoop_count, g);
  }

  const Eigen::MatrixXcd& a_;
  int p_, q_, qp_;
  double eta_eff_;
  const std::optional<HoopConstraintSet>& hoops_;
  long node_budget_;
  std::vector<Eigen::MatrixXcd> suffix_;

  std::mutex mu_;
  std::atomic<long> nodes_{0};
  bool found_ = false;
  double best_lmax_ = kInf;
  double best_lmin_ = 0.0;
  std::vector<std::uint8_t> best_mask_;
};

// ------------------------------------------------------------ local search

struct LocalCandidate {
  bool feasible = false;
  double lmax = kInf;
  double lmin = 0.0;
  std::vector<std::uint8_t> mask;
};

class LocalSearch {
 public:
  LocalSearch(const Eigen::MatrixXcd& a, int q_prime, double eta_eff,
              const std::optional<HoopConstraintSet>& hoops, const SolverConfig& cfg)
      : a_(a),
        p_(static_cast<int>(a.rows())),
        q_(static_cast<int>(a.cols())),
        qp_(q_prime),
        eta_eff_(eta_eff),
        hoops_(hoops),
        cfg_(cfg) {}

  InnerSolution run() {
    const int restarts = std::max(1, cfg_.restarts);
    const int threads = std::min(hardware_threads(cfg_.threads), restarts);
    std::vector<LocalCandidate> results(restarts);
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1))
        results[r] = restart(r);
    };
    if (threads > 1) {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    } else {
      worker();
    }

    InnerSolution sol;
    for (const auto& c : results) {
      if (!c.feasible) continue;
      if (sol.status == InnerStatus::Infeasible ||
          better(c.lmax, c.lmin, c.mask, sol.lambda_max, sol.lambda_min, sol.mask.bits)) {
        sol.status = InnerStatus::Solved;
        sol.mask.bits = c.mask;
        sol.lambda_min = c.lmin;
        sol.lambda_max = c.lmax;
      }
    }
    return sol;
  }

 private:
  std::vector<int> initial_selection(int r, std::mt19937_64& rng) const {
    std::vector<int> sel;
    if (r == 0) {
      if (hoops_) {
        // per-hoop allocation proportional to the caps, spread evenly in-hoop
        const auto& h = *hoops_;
        const std::size_t j = h.hoop_count();
        std::vector<std::vector<int>> members(j);
        for (int c = 0; c < q_; ++c) members[h.hoop_of[c]].push_back(c);
        const double total = static_cast<double>(h.cap_total());
        std::vector<int> alloc(j);
        long sum = 0;
        for (std::size_t i = 0; i < j; ++i) {
          alloc[i] = std::min<int>(
              {h.caps[i], static_cast<int>(members[i].size()),
               static_cast<int>(std::lround(h.caps[i] * qp_ / total))});
          sum += alloc[i];
        }
        // settle rounding so the allocation sums to exactly q_prime
        while (sum < qp_) {
          std::size_t bi = 0;
          int slack = -1;
          for (std::size_t i = 0; i < j; ++i) {
            const int s = std::min<int>(h.caps[i], static_cast<int>(members[i].size())) - alloc[i];
            if (s > slack) {
              slack = s;
              bi = i;
            }
          }
          if (slack <= 0) break;
          alloc[bi]++;
          sum++;
        }
        while (sum > qp_) {
          std::size_t bi =
              std::distance(alloc.begin(), std::max_element(alloc.begin(), alloc.end()));
          alloc[bi]--;
          sum--;
        }
        for (std::size_t i = 0; i < j; ++i) {
          const int n = static_cast<int>(members[i].size());
          for (int k = 0; k < alloc[i]; ++k)
            sel.push_back(members[i][alloc[i] == 1 ? n / 2 : (k * (n - 1)) / (alloc[i] - 1)]);
        }
        std::sort(sel.begin(), sel.end());
        sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
        // duplicates from rounding: fill from unused columns
        std::vector<std::uint8_t> in(q_, 0);
        for (int c : sel) in[c] = 1;
        std::vector<int> cnt(j, 0);
        for (int c : sel) cnt[h.hoop_of[c]]++;
        for (int c = 0; c < q_ && static_cast<int>(sel.size()) < qp_; ++c) {
          if (!in[c] && cnt[h.hoop_of[c]] < h.caps[h.hoop_of[c]]) {
            sel.push_back(c);
            cnt[h.hoop_of[c]]++;
          }
        }
      } else {
        for (int k = 0; k < qp_; ++k)
          sel.push_back(static_cast<int>((static_cast<long>(k) * q_) / qp_));
        std::sort(sel.begin(), sel.end());
        sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
        for (int c = 0; static_cast<int>(sel.size()) < qp_ && c < q_; ++c)
          if (!std::binary_search(sel.begin(), sel.end(), c)) sel.push_back(c);
      }
    } else {
      std::vector<int> perm(q_);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<int> cnt(hoops_ ? hoops_->hoop_count() : 0, 0);
      for (int c : perm) {
        if (static_cast<int>(sel.size()) == qp_) break;
        if (hoops_) {
          const int h = hoops_->hoop_of[c];
          if (cnt[h] + 1 > hoops_->caps[h]) continue;
          cnt[h]++;
        }
        sel.push_back(c);
      }
    }
    std::sort(sel.begin(), sel.end());
    return sel;
  }

  LocalCandidate restart(int r) const {
    std::mt19937_64 rng(cfg_.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL * (r + 1));
    LocalCandidate cand;
    std::vector<int> sel = initial_selection(r, rng);
    if (static_cast<int>(sel.size()) != qp_) return cand;  // caps cannot host q_prime

    std::vector<std::uint8_t> in(q_, 0);
    for (int c : sel) in[c] = 1;
    std::vector<int> cnt(hoops_ ? hoops_->hoop_count() : 0, 0);
    if (hoops_)
      for (int c : sel) cnt[hoops_->hoop_of[c]]++;

    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(p_, p_);
    for (int c : sel) g += a_.col(c) * a_.col(c).adjoint();
    Extremes e = extremes(g);

    std::uniform_int_distribution<int> pick_sel(0, qp_ - 1);
    std::uniform_int_distribution<int> pick_col(0, q_ - 1);

    auto try_swap = [&](bool repair) -> bool {
      const int si = pick_sel(rng);
      const int out = sel[si];
      const int col = pick_col(rng);
      if (in[col]) return false;
      if (hoops_) {
        const int ho = hoops_->hoop_of[out], hi = hoops_->hoop_of[col];
        if (ho != hi && cnt[hi] + 1 > hoops_->caps[hi]) return false;
      }
      Eigen::MatrixXcd g2 = g;
      g2.noalias() -= a_.col(out) * a_.col(out).adjoint();
      g2.noalias() += a_.col(col) * a_.col(col).adjoint();
      const Extremes e2 = extremes(g2);
      bool accept;
      if (repair) {
        accept = e2.lmin > e.lmin + cmp_tol(e.lmin);
      } else {
        const double t = cmp_tol(e.lmax);
        accept = e2.lmin >= eta_eff_ &&
                 (e2.lmax < e.lmax - t || (e2.lmax <= e.lmax + t && e2.lmin > e.lmin + t));
      }
      if (!accept) return false;
      sel[si] = col;
      in[out] = 0;
      in[col] = 1;
      if (hoops_) {
        cnt[hoops_->hoop_of[out]]--;
        cnt[hoops_->hoop_of[col]]++;
      }
      g.swap(g2);
      e = e2;
      return true;
    };

    // feasibility repair: raise lambda_min until the eta bound holds
    long budget = std::max<long>(1000, cfg_.max_iters / 4);
    for (long it = 0; it < budget && e.lmin < eta_eff_; ++it) try_swap(true);
    if (e.lmin < eta_eff_) return cand;

    // pairwise swap descent on lambda_max with lambda_min tie-breaking
    long stall = 0;
    const long stall_limit = std::max<long>(2000, cfg_.max_iters / 5);
    for (long it = 0; it < cfg_.max_iters && stall < stall_limit; ++it) {
      if (try_swap(false))
        stall = 0;
      else
        ++stall;
    }

    cand.feasible = true;
    cand.lmax = e.lmax;
    cand.lmin = e.lmin;
    cand.mask = in;
    return cand;
  }

  const Eigen::MatrixXcd& a_;
  int p_, q_, qp_;
  double eta_eff_;
  const std::optional<HoopConstraintSet>& hoops_;
  SolverConfig cfg_;
};

}  // namespace

std::size_t SelectionMask::q_prime() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1));
}

std::vector<int> SelectionMask::indices() const {
  std::vector<int> idx;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) idx.push_back(static_cast<int>(i));
  return idx;
}

SelectionMask full_mask(std::size_t q) {
  SelectionMask m;
  m.bits.assign(q, 1);
  return m;
}

SelectionMask mask_from_indices(std::size_t q, const std::vector<int>& idx) {
  SelectionMask m;
  m.bits.assign(q, 0);
  for (int i : idx) {
    if (i < 0 || static_cast<std::size_t>(i) >= q)
      throw std::invalid_argument("mask_from_indices: index out of range");
    m.bits[i] = 1;
  }
  return m;
}

bool HoopConstraintSet::satisfied(const SelectionMask& mask) const {
  std::vector<int> cnt(caps.size(), 0);
  for (std::size_t i = 0; i < mask.bits.size(); ++i)
    if (mask.bits[i]) cnt[hoop_of[i]]++;
  for (std::size_t j = 0; j < caps.size(); ++j)
    if (cnt[j] > caps[j]) return false;
  return true;
}

long HoopConstraintSet::cap_total() const {
  return std::accumulate(caps.begin(), caps.end(), 0L);
}

std::vector<int> make_cipic_caps() {
  std::vector<int> v(25);
  for (int i = 1; i <= 13; ++i) v[i - 1] = 14 + 3 * (i - 1);
  for (int i = 14; i <= 25; ++i) v[i - 1] = 50 - 3 * (i - 13);
  return v;
}

HoopConstraintSet hoops_from_labels(const PointSet& points, const std::vector<int>& caps) {
  if (!points.has_labels())
    throw std::invalid_argument("hoops_from_labels: point set has no hoop labels");
  HoopConstraintSet h;
  h.caps = caps;
  h.hoop_of = points.labels;
  for (int l : h.hoop_of)
    if (l < 0 || static_cast<std::size_t>(l) >= caps.size())
      throw std::invalid_argument("hoops_from_labels: label outside cap range");
  return h;
}

InnerSolution inner_solve(const ShMatrix& shm, int q_prime, double eta,
                          const std::optional<HoopConstraintSet>& hoops,
                          const SolverConfig& cfg) {
  const int q = shm.cols();
  if (q_prime < 1 || q_prime > q)
    throw std::invalid_argument("inner_solve: require 1 <= q_prime <= Q");
  if (hoops && static_cast<int>(hoops->hoop_of.size()) != q)
    throw std::invalid_argument("inner_solve: hoop membership length mismatch");
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("inner_solve: epsilon must be > 0");
  const double eta_eff = eta + cfg.epsilon;
  if (cfg.mode == SolverMode::ExactBnb) {
    BnbSolver bnb(shm.entries, q_prime, eta_eff, hoops, cfg.max_iters);
    return bnb.run(hardware_threads(cfg.threads));
  }
  LocalSearch ls(shm.entries, q_prime, eta_eff, hoops, cfg);
  return ls.run();
}

double eta_upper_bound(const ShMatrix& shm) {
  return shm.entries.squaredNorm() / static_cast<double>(shm.rows());
}

TransitionTrace sweep_core(double eta_ub, const InnerSolver& inner) {
  TransitionTrace trace;
  double eta = 0.0;
  int i = 0;
  constexpr int kMaxTransitions = 100000;
  while (eta < eta_ub) {
    InnerSolution sol = inner(eta);
    if (sol.status == InnerStatus::Infeasible) {
      if (trace.records.empty()) trace.infeasible_at_start = true;
      trace.termination = "infeasible";
      break;
    }
    TransitionRecord rec;
    rec.index = i++;
    rec.eta = eta;
    rec.mask = sol.mask;
    rec.lambda_min = sol.lambda_min;
    rec.lambda_max = sol.lambda_max;
    rec.kappa = std::sqrt(sol.lambda_max / sol.lambda_min);
    trace.records.push_back(std::move(rec));
    if (sol.lambda_min <= eta) {
      trace.termination = "stalled";
      break;
    }
    eta = sol.lambda_min;
    if (i >= kMaxTransitions) {
      trace.termination = "stalled";
      break;
    }
  }
  if (trace.termination.empty()) trace.termination = "upper_bound";

  if (!trace.records.empty()) {
    const auto it = std::min_element(
        trace.records.begin(), trace.records.end(),
        [](const TransitionRecord& a, const TransitionRecord& b) { return a.kappa < b.kappa; });
    trace.eta_star = it->eta;
    trace.best_mask = it->mask;
    trace.kappa_star = it->kappa;
  }
  return trace;
}

TransitionTrace sweep_transitions(const ShMatrix& shm, int q_prime,
                                  const std::optional<HoopConstraintSet>& hoops,
                                  const SolverConfig& cfg) {
  const double ub = eta_upper_bound(shm);
  return sweep_core(ub, [&](double eta) { return inner_solve(shm, q_prime, eta, hoops, cfg); });
}

DedupResult dedup_columns(const ShMatrix& shm, double tol) {
  const int q = shm.cols();
  DedupResult res;
  res.group_of.assign(q, -1);
  for (int j = 0; j < q; ++j) {
    if (res.group_of[j] >= 0) continue;
    const int rid = static_cast<int>(res.representative.size());
    res.group_of[j] = rid;
    res.representative.push_back(j);
    for (int k = j + 1; k < q; ++k) {
      if (res.group_of[k] >= 0) continue;
      if ((shm.entries.col(j) - shm.entries.col(k)).cwiseAbs().maxCoeff() <= tol) {
        res.group_of[k] = rid;
        res.duplicate_count++;
      }
    }
  }
  const int r = static_cast<int>(res.representative.size());
  res.reduced.order = shm.order;
  res.reduced.basis = shm.basis;
  res.reduced.entries.resize(shm.rows(), r);
  res.reduced.source.convention = shm.source.convention;
  const PointSet src = shm.source;
  for (int i = 0; i < r; ++i) {
    res.reduced.entries.col(i) = shm.entries.col(res.representative[i]);
    res.reduced.source.directions.push_back(src.directions[res.representative[i]]);
    if (src.has_labels()) res.reduced.source.labels.push_back(src.labels[res.representative[i]]);
  }
  return res;
}

TransitionTrace optimize_hrtf_grid(const PointSet& points, int order, int q_prime,
                                   const std::vector<int>& caps, const SolverConfig& cfg) {
  HoopConstraintSet hoops = hoops_from_labels(points, caps);
  if (hoops.cap_total() < q_prime)
    throw std::invalid_argument("optimize_hrtf_grid: caps cannot accommodate q_prime");
  ShMatrix shm = build_shm(points, order);
  return sweep_transitions(shm, q_prime, hoops, cfg);
}

}  // namespace sphcond

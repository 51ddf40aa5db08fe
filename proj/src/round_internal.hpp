#pragma once

// Internal helpers shared by the synchronous-round controllers. Not installed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "dsrc/channel.hpp"
#include "dsrc/rate_control.hpp"
#include "dsrc/run_record.hpp"

namespace dsrc::internal {

/// Compressed out-neighbor lists for a fixed power vector.
struct Csr {
  std::vector<int> off;  // size n+1
  std::vector<int> idx;

  std::span<const int> row(int i) const {
    return {idx.data() + off[i], static_cast<std::size_t>(off[i + 1] - off[i])};
  }
};

enum class Edge { Sense, Receive };

inline Csr build_out_sets(const LinkGraph& g, std::span<const double> p, Edge kind) {
  Csr csr;
  csr.off.assign(g.n + 1, 0);
  const std::vector<double>& thr = (kind == Edge::Sense) ? g.beta : g.alpha;
  for (int i = 0; i < g.n; ++i) {
    const double* row = thr.data() + static_cast<std::size_t>(i) * g.n;
    int deg = 0;
    for (int j = 0; j < g.n; ++j) {
      if (p[i] >= row[j]) ++deg;
    }
    csr.off[i + 1] = csr.off[i] + deg;
  }
  csr.idx.resize(csr.off[g.n]);
  for (int i = 0; i < g.n; ++i) {
    const double* row = thr.data() + static_cast<std::size_t>(i) * g.n;
    int k = csr.off[i];
    for (int j = 0; j < g.n; ++j) {
      if (p[i] >= row[j]) csr.idx[k++] = j;
    }
  }
  return csr;
}

inline void scatter_loads(const Csr& out, std::span<const double> mu, std::vector<double>& loads) {
  std::fill(loads.begin(), loads.end(), 0.0);
  const int n = static_cast<int>(loads.size());
  for (int i = 0; i < n; ++i) {
    const double mi = mu[i];
    for (int j : out.row(i)) loads[j] += mi;
  }
}

/// Per-round record keeping: snapshots, rho/max-load series, load means,
/// trailing averaging window and early-exit detection.
class Bookkeeper {
 public:
  Bookkeeper(RunRecord* rec, int n, int planned_rounds, const RunOptions& opts)
      : rec_(rec), n_(n), opts_(opts), load_sum_(n, 0.0) {
    if (opts_.avg_window_frac > 0.0) {
      ring_cap_ = std::max(1, static_cast<int>(std::ceil(opts_.avg_window_frac * planned_rounds)));
      ring_mu_.resize(ring_cap_);
      ring_p_.resize(ring_cap_);
    }
  }

  /// Returns true when the run should stop early. round_index is 1-based.
  bool after_round(int round_index, const ControllerState& st, std::span<const double> loads,
                   double rho, double max_change, const std::vector<int>* gprime) {
    rec_->rho.push_back(rho);
    double max_load = 0.0;
    for (int j = 0; j < n_; ++j) {
      load_sum_[j] += loads[j];
      max_load = std::max(max_load, loads[j]);
    }
    rec_->max_load_frac.push_back(max_load * rec_->t_air_s);

    if (opts_.trace_stride > 0 && (round_index - 1) % opts_.trace_stride == 0) {
      Snapshot snap;
      snap.t = round_index - 1;
      snap.mu = st.mu;
      snap.p_dbm = st.p_dbm;
      snap.lambda = st.lambda;
      snap.load.assign(loads.begin(), loads.end());
      if (gprime) snap.gprime = *gprime;
      rec_->snapshots.push_back(std::move(snap));
    }

    if (ring_cap_ > 0) {
      ring_mu_[ring_pos_] = st.mu;
      ring_p_[ring_pos_] = st.p_dbm;
      ring_pos_ = (ring_pos_ + 1) % ring_cap_;
      ring_filled_ = std::min(ring_filled_ + 1, ring_cap_);
    }

    if (opts_.observer) opts_.observer(round_index, st, loads);

    executed_ = round_index;
    if (opts_.early_exit_eps > 0.0) {
      quiet_ = (max_change < opts_.early_exit_eps) ? quiet_ + 1 : 0;
      if (quiet_ >= opts_.early_exit_window) return true;
    }
    return false;
  }

  void finalize(const ControllerState& st, std::span<const double> loads) {
    rec_->rounds_executed = executed_;
    rec_->final_mu = st.mu;
    rec_->final_p = st.p_dbm;
    rec_->final_lambda = st.lambda;
    rec_->final_load.assign(loads.begin(), loads.end());
    rec_->mean_load_msgs.assign(n_, 0.0);
    if (executed_ > 0) {
      for (int j = 0; j < n_; ++j) rec_->mean_load_msgs[j] = load_sum_[j] / executed_;
    }
    if (ring_cap_ > 0 && ring_filled_ > 0) {
      const int want =
          std::max(1, static_cast<int>(std::ceil(opts_.avg_window_frac * executed_)));
      const int take = std::min(want, ring_filled_);
      rec_->window_rounds = take;
      rec_->window_mean_mu.assign(n_, 0.0);
      rec_->window_mean_p.assign(n_, 0.0);
      const double feasible_cap =
          rec_->gamma_msgs * rec_->t_air_s * (1.0 + 1e-12) + 1e-12;
      int best_round = -1;
      double best_rho = 0.0;
      for (int k = 0; k < take; ++k) {
        const int pos = (ring_pos_ - 1 - k + 2 * ring_cap_) % ring_cap_;
        for (int v = 0; v < n_; ++v) {
          rec_->window_mean_mu[v] += ring_mu_[pos][v];
          rec_->window_mean_p[v] += ring_p_[pos][v];
        }
        const int round = executed_ - 1 - k;
        if (rec_->max_load_frac[round] <= feasible_cap &&
            (best_round < 0 || rec_->rho[round] > best_rho)) {
          best_round = round;
          best_rho = rec_->rho[round];
          rec_->window_best_p = ring_p_[pos];
        }
      }
      for (int v = 0; v < n_; ++v) {
        rec_->window_mean_mu[v] /= take;
        rec_->window_mean_p[v] /= take;
      }
    }
  }

 private:
  RunRecord* rec_;
  int n_;
  RunOptions opts_;
  std::vector<double> load_sum_;
  std::vector<std::vector<double>> ring_mu_, ring_p_;
  int ring_cap_ = 0, ring_pos_ = 0, ring_filled_ = 0;
  int quiet_ = 0;
  int executed_ = 0;
};

}  // namespace dsrc::internal

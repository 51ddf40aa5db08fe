#include "dsrc/joint.hpp"

#include <algorithm>
#include <cmath>

#include "dsrc/errors.hpp"
#include "dsrc/power_control.hpp"

namespace dsrc {

std::vector<double> project_rates_feasible(const LinkGraph& g, std::span<const double> mu,
                                           std::span<const double> p, double gamma,
                                           double mu_floor, double mu_max) {
  std::vector<double> out(mu.begin(), mu.end());
  const std::vector<double> loads = all_channel_loads(g, out, p);
  double worst = 0.0;
  for (double l : loads) worst = std::max(worst, l);
  // Loads are linear in a uniform rate scaling.
  const double theta = worst > gamma ? gamma / worst : 1.0;
  for (double& m : out) m = std::clamp(m * theta, mu_floor, mu_max);
  return out;
}

std::vector<double> project_powers_feasible(const LinkGraph& g, std::span<const double> mu,
                                            std::span<const double> p, double gamma) {
  std::vector<double> out(p.begin(), p.end());
  const int n = g.n;
  for (int guard = 0; guard < n * n + 1; ++guard) {
    const std::vector<double> loads = all_channel_loads(g, mu, out);
    int worst_j = -1;
    double worst = gamma + 1e-9;
    for (int j = 0; j < n; ++j) {
      if (loads[j] > worst) {
        worst = loads[j];
        worst_j = j;
      }
    }
    if (worst_j < 0) break;
    // Drop the contributor that needs the most power to reach worst_j; its
    // pairs are the cheapest coverage to give up.
    int pick = -1;
    double pick_beta = -1.0;
    for (int i = 0; i < n; ++i) {
      if (i == worst_j) continue;
      const double b = g.b(i, worst_j);
      if (out[i] >= b && b > g.power_floor_dbm && b > pick_beta) {
        pick_beta = b;
        pick = i;
      }
    }
    if (pick < 0) break;  // only irremovable load remains
    out[pick] = std::max(g.power_floor_dbm, pick_beta - 1e-9);
  }
  return out;
}

RunRecord run_joint(ControllerState state, const LinkGraph& g, const Utility& u,
                    const JointConfig& cfg, const RunOptions& opts) {
  if (cfg.eps_stop <= 0.0) throw ConfigError("joint: eps_stop must be > 0");
  if (cfg.inner_rounds_rate < 1 || cfg.inner_rounds_power < 1 || cfg.max_outer < 1) {
    throw ConfigError("joint: inner round and outer iteration budgets must be >= 1");
  }
  const int n = g.n;

  RunRecord rec;
  rec.algo = "joint";
  rec.gamma_msgs = state.gamma;
  rec.t_air_s = opts.t_air_s;
  rec.trace_stride = opts.trace_stride;
  rec.converged = false;

  RunOptions inner = opts;
  inner.avg_window_frac = cfg.avg_window_frac;
  inner.early_exit_eps = cfg.inner_early_exit_eps;
  inner.early_exit_window = cfg.inner_early_exit_window;
  inner.observer = {};

  std::vector<double> load_sum(n, 0.0);
  auto absorb = [&rec, &load_sum, n](RunRecord&& r, int t_base) {
    for (Snapshot& s : r.snapshots) {
      s.t += t_base;
      rec.snapshots.push_back(std::move(s));
    }
    rec.rho.insert(rec.rho.end(), r.rho.begin(), r.rho.end());
    rec.max_load_frac.insert(rec.max_load_frac.end(), r.max_load_frac.begin(),
                             r.max_load_frac.end());
    for (int j = 0; j < n; ++j) load_sum[j] += r.mean_load_msgs[j] * r.rounds_executed;
    return t_base + r.rounds_executed;
  };

  double rho_prev = total_objective(g, u, state.mu, state.p_dbm);
  rec.outer.push_back({0.0, rho_prev});

  int t_base = 0;
  for (int k = 1; k <= cfg.max_outer; ++k) {
    // Rate phase. The representative point is the windowed average scaled
    // back into the feasible region; the incumbent stays if it scores better
    // (an exact subproblem solver may always return the previous point).
    RunRecord rate_rec =
        run_rate_control(state, g, u, cfg.inner_rounds_rate, cfg.price_set, inner);
    state.lambda = rate_rec.final_lambda;
    const std::vector<double> mu_cand = project_rates_feasible(
        g, rate_rec.window_mean_mu, state.p_dbm, state.gamma, state.mu_floor, state.mu_max);
    if (total_objective(g, u, mu_cand, state.p_dbm) >=
        total_objective(g, u, state.mu, state.p_dbm)) {
      state.mu = mu_cand;
    }
    t_base = absorb(std::move(rate_rec), t_base);
    rec.outer.push_back({k - 0.5, total_objective(g, u, state.mu, state.p_dbm)});

    // Power phase. Averaged powers are poor representatives of an indicator
    // objective, so prefer the best feasible round from the window and fall
    // back to the projected average.
    RunRecord power_rec = run_power_control(state, g, u, cfg.inner_rounds_power, inner);
    state.lambda = power_rec.final_lambda;
    std::vector<double> p_cand = power_rec.window_best_p;
    if (p_cand.empty()) {
      p_cand = project_powers_feasible(g, state.mu, power_rec.window_mean_p, state.gamma);
    }
    if (total_objective(g, u, state.mu, p_cand) >=
        total_objective(g, u, state.mu, state.p_dbm)) {
      state.p_dbm = p_cand;
    }
    t_base = absorb(std::move(power_rec), t_base);

    const double rho_k = total_objective(g, u, state.mu, state.p_dbm);
    rec.outer.push_back({static_cast<double>(k), rho_k});
    if (rho_k - rho_prev <= cfg.eps_stop) {
      rec.converged = true;
      break;
    }
    rho_prev = rho_k;
  }

  rec.rounds_executed = t_base;
  rec.final_mu = state.mu;
  rec.final_p = state.p_dbm;
  rec.final_lambda = state.lambda;
  rec.final_load = all_channel_loads(g, state.mu, state.p_dbm);
  rec.mean_load_msgs.assign(n, 0.0);
  if (t_base > 0) {
    for (int j = 0; j < n; ++j) rec.mean_load_msgs[j] = load_sum[j] / t_base;
  }
  rec.window_mean_mu = state.mu;
  rec.window_mean_p = state.p_dbm;
  return rec;
}

}  // namespace dsrc

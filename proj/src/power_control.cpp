#include "dsrc/power_control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsrc/errors.hpp"
#include "round_internal.hpp"

namespace dsrc {

GroupStructure build_groups(const LinkGraph& g, int i, std::optional<double> level_cap) {
  const double cap = std::min(g.power_ceiling_dbm, level_cap.value_or(g.power_ceiling_dbm));
  GroupStructure gs;
  gs.tx = i;
  gs.power_floor_dbm = g.power_floor_dbm;
  gs.g_of.assign(g.n, 0);
  gs.h_of.assign(g.n, 0);

  std::vector<std::pair<double, int>> receivers;  // (alpha, j)
  for (int j = 0; j < g.n; ++j) {
    if (j != i && g.a(i, j) <= cap) receivers.emplace_back(g.a(i, j), j);
  }
  std::sort(receivers.begin(), receivers.end());
  for (const auto& [alpha, j] : receivers) {
    if (gs.levels.empty() || alpha > gs.levels.back()) {
      gs.levels.push_back(alpha);
      gs.G.emplace_back();
    }
    gs.G.back().push_back(j);
    gs.g_of[j] = static_cast<int>(gs.levels.size());
  }

  gs.H.assign(gs.levels.size(), {});
  for (int m = 0; m < g.n; ++m) {
    const double beta = g.b(i, m);
    if (beta <= g.power_floor_dbm) gs.base_sense.push_back(m);
    // First level at or above beta; vehicles beyond the last level are never
    // sensed at an admissible power.
    const auto it = std::lower_bound(gs.levels.begin(), gs.levels.end(), beta);
    if (it != gs.levels.end()) {
      const int h = static_cast<int>(it - gs.levels.begin()) + 1;
      gs.H[h - 1].push_back(m);
      gs.h_of[m] = h;
    }
  }
  return gs;
}

CutScores build_cut_scores(const GroupStructure& groups, const Utility& u,
                           std::span<const double> lambda, double mu_i, double eps) {
  CutScores scores;
  scores.f.resize(groups.g_max());
  const double phi = u.phi(mu_i);
  for (int g = 0; g < groups.g_max(); ++g) {
    double gain = 0.0;
    for (int j : groups.G[g]) gain += u.coef(groups.tx, j);
    double price = 0.0;
    for (int m : groups.H[g]) price += lambda[m];
    scores.f[g] = gain * phi - eps * mu_i * price;
  }
  return scores;
}

int optimal_cut(const CutScores& scores) {
  // Single pass over prefix sums; keeping only strict improvements yields the
  // smallest index attaining the maximum, and best > 0 is implied by the
  // P(0) = 0 baseline.
  int best_g = 0;
  double best = 0.0;
  double prefix = 0.0;
  for (std::size_t g = 0; g < scores.f.size(); ++g) {
    prefix += scores.f[g];
    if (prefix > best) {
      best = prefix;
      best_g = static_cast<int>(g) + 1;
    }
  }
  return best_g;
}

PowerDecision power_decision(const GroupStructure& groups, const Utility& u,
                             std::span<const double> lambda, double mu_i, double eps) {
  const CutScores scores = build_cut_scores(groups, u, lambda, mu_i, eps);
  const int gp = optimal_cut(scores);
  return {gp, gp >= 1 ? groups.levels[gp - 1] : groups.power_floor_dbm};
}

double power_update(int i, const GroupStructure& groups, std::span<const double> lambda,
                    double mu_i, double eps, const Utility& u) {
  if (groups.tx != i) throw std::invalid_argument("power_update: group structure is for another vehicle");
  return power_decision(groups, u, lambda, mu_i, eps).p_dbm;
}

namespace {

// Flattened per-transmitter cache for the round loop: group gains, rho prefix
// sums, and concatenated H groups for load scattering.
struct TxCache {
  std::vector<double> levels;
  std::vector<double> gain;      // f utility part per group
  std::vector<double> cum_gain;  // rho contribution when cutting at g (index g, 0-based size g_max+1)
  std::vector<int> h_flat;
  std::vector<int> h_off;  // size g_max+1
  std::vector<int> base;
  double rho_floor = 0.0;  // receivers decodable at the floor itself
};

}  // namespace

RunRecord run_power_control(ControllerState state, const LinkGraph& g, const Utility& u,
                            int rounds, const RunOptions& opts) {
  if (rounds <= 0) throw ConfigError("power control: rounds must be positive");
  const int n = g.n;
  if (static_cast<int>(state.mu.size()) != n || static_cast<int>(state.p_dbm.size()) != n) {
    throw ConfigError("power control: state size does not match the link graph");
  }

  RunRecord rec;
  rec.algo = "power";
  rec.gamma_msgs = state.gamma;
  rec.t_air_s = opts.t_air_s;
  rec.trace_stride = opts.trace_stride;
  internal::Bookkeeper book(&rec, n, rounds, opts);

  // Rates are frozen, so the per-group utility sums are constants.
  std::vector<TxCache> cache(n);
  for (int i = 0; i < n; ++i) {
    const GroupStructure gs = build_groups(g, i);
    TxCache& c = cache[i];
    c.levels = gs.levels;
    const double phi = u.phi(state.mu[i]);
    c.gain.resize(gs.g_max());
    c.cum_gain.assign(gs.g_max() + 1, 0.0);
    for (int q = 0; q < gs.g_max(); ++q) {
      double sum = 0.0;
      for (int j : gs.G[q]) sum += u.coef(i, j);
      c.gain[q] = sum * phi;
      c.cum_gain[q + 1] = c.cum_gain[q] + c.gain[q];
    }
    c.h_off.assign(gs.g_max() + 1, 0);
    for (int q = 0; q < gs.g_max(); ++q) {
      c.h_off[q + 1] = c.h_off[q] + static_cast<int>(gs.H[q].size());
      c.h_flat.insert(c.h_flat.end(), gs.H[q].begin(), gs.H[q].end());
    }
    c.base = gs.base_sense;
    // If clamping collapsed the first level onto the floor, those receivers
    // decode even a floor-power transmitter.
    c.rho_floor = (!c.levels.empty() && c.levels[0] == g.power_floor_dbm) ? c.cum_gain[1] : 0.0;
  }

  auto scatter = [&](std::span<const int> gprime, std::vector<double>& loads) {
    std::fill(loads.begin(), loads.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      const TxCache& c = cache[i];
      const double mi = state.mu[i];
      if (gprime[i] >= 1) {
        const int end = c.h_off[gprime[i]];
        for (int k = 0; k < end; ++k) loads[c.h_flat[k]] += mi;
      } else {
        for (int m : c.base) loads[m] += mi;
      }
    }
  };

  // Initial loads come from the incoming powers directly.
  std::vector<double> loads_prev = all_channel_loads(g, state.mu, state.p_dbm);
  std::vector<double> loads(n, 0.0);
  std::vector<int> gprime(n, 0);
  std::vector<double> lambda_next(n, 0.0), p_next(n, 0.0);
  std::vector<double> f;

  for (int t = 1; t <= rounds; ++t) {
    for (int i = 0; i < n; ++i) {
      const TxCache& c = cache[i];
      const int gmax = static_cast<int>(c.levels.size());
      f.resize(gmax);
      for (int q = 0; q < gmax; ++q) {
        double price = 0.0;
        for (int k = c.h_off[q]; k < c.h_off[q + 1]; ++k) price += state.lambda[c.h_flat[k]];
        f[q] = c.gain[q] - state.epsilon * state.mu[i] * price;
      }
      int best_g = 0;
      double best = 0.0, prefix = 0.0;
      for (int q = 0; q < gmax; ++q) {
        prefix += f[q];
        if (prefix > best) {
          best = prefix;
          best_g = q + 1;
        }
      }
      gprime[i] = best_g;
      p_next[i] = best_g >= 1 ? c.levels[best_g - 1] : g.power_floor_dbm;
    }
    for (int j = 0; j < n; ++j) {
      lambda_next[j] = price_update(state.lambda[j], loads_prev[j], state.gamma);
    }

    double max_change = 0.0;
    for (int i = 0; i < n; ++i) {
      max_change = std::max(max_change, std::fabs(p_next[i] - state.p_dbm[i]));
      max_change = std::max(max_change, std::fabs(lambda_next[i] - state.lambda[i]));
    }
    state.p_dbm.swap(p_next);
    state.lambda.swap(lambda_next);
    state.t = t;

    scatter(gprime, loads);
    double rho = 0.0;
    for (int i = 0; i < n; ++i) {
      const TxCache& c = cache[i];
      rho += gprime[i] >= 1 ? c.cum_gain[gprime[i]] : c.rho_floor;
    }
    loads_prev = loads;
    if (book.after_round(t, state, loads, rho, max_change, &gprime)) break;
  }
  book.finalize(state, loads_prev);
  return rec;
}

}  // namespace dsrc

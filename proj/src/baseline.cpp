#include "dsrc/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "dsrc/errors.hpp"
#include "round_internal.hpp"

namespace dsrc {

double limeric_update(double r_prev, double r_c, const LimericParams& params, double mu_floor,
                      double mu_max) {
  const double r = (1.0 - params.alpha_l) * r_prev + params.beta_l * (params.r_g - r_c);
  return std::clamp(r, mu_floor, mu_max);
}

std::vector<std::vector<int>> sense_neighbors(const LinkGraph& g, std::span<const double> p) {
  std::vector<std::vector<int>> nbr(g.n);
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (p[i] >= g.b(i, j) || p[j] >= g.b(j, i)) {
        nbr[i].push_back(j);
        nbr[j].push_back(i);
      }
    }
  }
  return nbr;
}

double embarc_rc(int i, std::span<const double> loads,
                 const std::vector<std::vector<int>>& neighbors) {
  // Two-hop max = max over the closed 1-hop neighborhood of the closed 1-hop
  // maxima.
  auto one_hop_max = [&](int v) {
    double m = loads[v];
    for (int j : neighbors[v]) m = std::max(m, loads[j]);
    return m;
  };
  double rc = one_hop_max(i);
  for (int j : neighbors[i]) rc = std::max(rc, one_hop_max(j));
  return rc;
}

RunRecord run_baseline(ControllerState state, const LinkGraph& g, const Utility& u,
                       const LimericParams& params, int rounds, const RunOptions& opts) {
  if (rounds <= 0) throw ConfigError("limeric: rounds must be positive");
  if (params.alpha_l <= 0.0 || params.alpha_l >= 1.0 || params.beta_l <= 0.0 || params.r_g <= 0.0) {
    throw ConfigError("limeric: require 0 < alpha < 1, beta > 0, r_g > 0");
  }
  const int n = g.n;

  RunRecord rec;
  rec.algo = "limeric";
  rec.gamma_msgs = state.gamma;
  rec.t_air_s = opts.t_air_s;
  rec.trace_stride = opts.trace_stride;
  internal::Bookkeeper book(&rec, n, rounds, opts);

  const internal::Csr sense_out = internal::build_out_sets(g, state.p_dbm, internal::Edge::Sense);
  const internal::Csr recv_out = internal::build_out_sets(g, state.p_dbm, internal::Edge::Receive);
  const std::vector<std::vector<int>> nbr = sense_neighbors(g, state.p_dbm);

  std::vector<double> coef(n, 0.0);
  for (int i = 0; i < n; ++i) coef[i] = u.coef_sum(i, recv_out.row(i));

  std::vector<double> loads_prev(n, 0.0), loads(n, 0.0);
  internal::scatter_loads(sense_out, state.mu, loads_prev);

  std::vector<double> one_hop(n, 0.0), mu_next(n, 0.0);
  for (int t = 1; t <= rounds; ++t) {
    for (int v = 0; v < n; ++v) {
      double m = loads_prev[v];
      for (int j : nbr[v]) m = std::max(m, loads_prev[j]);
      one_hop[v] = m;
    }
    for (int i = 0; i < n; ++i) {
      double rc = one_hop[i];
      for (int j : nbr[i]) rc = std::max(rc, one_hop[j]);
      mu_next[i] = limeric_update(state.mu[i], rc, params, state.mu_floor, state.mu_max);
    }

    double max_change = 0.0;
    for (int i = 0; i < n; ++i) {
      max_change = std::max(max_change, std::fabs(mu_next[i] - state.mu[i]));
    }
    state.mu.swap(mu_next);
    state.t = t;

    internal::scatter_loads(sense_out, state.mu, loads);
    double rho = 0.0;
    for (int i = 0; i < n; ++i) {
      if (coef[i] != 0.0) rho += coef[i] * u.phi(state.mu[i]);
    }
    loads_prev = loads;
    if (book.after_round(t, state, loads, rho, max_change, nullptr)) break;
  }
  book.finalize(state, loads_prev);
  return rec;
}

}  // namespace dsrc

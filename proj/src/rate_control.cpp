#include "dsrc/rate_control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsrc/errors.hpp"
#include "dsrc/run_record.hpp"
#include "round_internal.hpp"

namespace dsrc {

namespace {

// argmax over [lo, hi] of coef_sum * phi(mu) - eps_price * mu. eps_price is
// the already-multiplied eps * aggregated price.
double solve_best_rate(const Utility& u, double coef_sum, double eps_price, double lo, double hi) {
  if (coef_sum <= 0.0) return lo;
  if (eps_price <= 0.0) return hi;
  if (u.log_family()) {
    return std::clamp(coef_sum / eps_price, lo, hi);
  }
  // General concave case: bisect the strictly decreasing derivative.
  if (coef_sum * u.phi_prime(hi) >= eps_price) return hi;
  if (coef_sum * u.phi_prime(lo) <= eps_price) return lo;
  double a = lo, b = hi;
  while (b - a > 1e-9) {
    const double mid = 0.5 * (a + b);
    if (coef_sum * u.phi_prime(mid) > eps_price) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ControllerState make_state(int n, double epsilon, double gamma, double init_mu,
                           std::span<const double> init_p, double mu_floor, double mu_max) {
  ControllerState st;
  st.mu.assign(n, init_mu);
  st.lambda.assign(n, 0.0);
  st.p_dbm.assign(init_p.begin(), init_p.end());
  st.epsilon = epsilon;
  st.gamma = gamma;
  st.mu_floor = mu_floor;
  st.mu_max = mu_max;
  return st;
}

double price_update(double lambda_j, double load_j, double gamma) {
  return std::max(0.0, lambda_j + load_j - gamma);
}

double rate_update(int i, double aggregated_price, const Utility& u,
                   std::span<const int> receivers, double eps, double mu_floor, double mu_max) {
  if (aggregated_price < 0.0) throw std::domain_error("rate_update: price must be >= 0");
  if (receivers.empty()) return mu_floor;
  const double c = u.coef_sum(i, receivers);
  return solve_best_rate(u, c, eps * aggregated_price, mu_floor, mu_max);
}

RunRecord run_rate_control(ControllerState state, const LinkGraph& g, const Utility& u,
                           int rounds, PriceSet price_set, const RunOptions& opts) {
  if (rounds <= 0) throw ConfigError("rate control: rounds must be positive");
  const int n = g.n;
  if (static_cast<int>(state.mu.size()) != n || static_cast<int>(state.p_dbm.size()) != n) {
    throw ConfigError("rate control: state size does not match the link graph");
  }

  RunRecord rec;
  rec.algo = "rate";
  rec.gamma_msgs = state.gamma;
  rec.t_air_s = opts.t_air_s;
  rec.trace_stride = opts.trace_stride;
  internal::Bookkeeper book(&rec, n, rounds, opts);

  // Powers are fixed for the whole run, so the topology is static.
  const internal::Csr sense_out = internal::build_out_sets(g, state.p_dbm, internal::Edge::Sense);
  const internal::Csr recv_out = internal::build_out_sets(g, state.p_dbm, internal::Edge::Receive);
  const internal::Csr& price_out = (price_set == PriceSet::Sense) ? sense_out : recv_out;

  std::vector<double> coef(n, 0.0);  // per-vehicle receiver weight sum
  for (int i = 0; i < n; ++i) coef[i] = u.coef_sum(i, recv_out.row(i));

  std::vector<double> loads_prev(n, 0.0), loads(n, 0.0);
  internal::scatter_loads(sense_out, state.mu, loads_prev);

  std::vector<double> mu_next(n, 0.0), lambda_next(n, 0.0);
  for (int t = 1; t <= rounds; ++t) {
    // Jacobi rounds: rates and prices both read the t-1 snapshot.
    for (int i = 0; i < n; ++i) {
      if (recv_out.off[i + 1] == recv_out.off[i]) {
        mu_next[i] = state.mu_floor;  // no beneficiary
        continue;
      }
      double price = 0.0;
      for (int j : price_out.row(i)) price += state.lambda[j];
      mu_next[i] = solve_best_rate(u, coef[i], state.epsilon * price, state.mu_floor,
                                   state.mu_max);
    }
    for (int j = 0; j < n; ++j) {
      lambda_next[j] = price_update(state.lambda[j], loads_prev[j], state.gamma);
    }

    double max_change = 0.0;
    for (int i = 0; i < n; ++i) {
      max_change = std::max(max_change, std::fabs(mu_next[i] - state.mu[i]));
      max_change = std::max(max_change, std::fabs(lambda_next[i] - state.lambda[i]));
    }
    state.mu.swap(mu_next);
    state.lambda.swap(lambda_next);
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

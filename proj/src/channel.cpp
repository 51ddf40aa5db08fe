#include "dsrc/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dsrc {

double path_loss_db(const ChannelModel& m, double d_m) {
  if (d_m <= 0.0) throw std::domain_error("path_loss_db: distance must be positive");
  if (d_m < 1.0) d_m = 1.0;
  return m.ref_loss_db + 10.0 * m.pathloss_exponent * std::log10(d_m);
}

LinkGraph build_link_graph(const Scenario& s, const ChannelModel& m) {
  const int n = s.size();
  LinkGraph g;
  g.n = n;
  g.power_floor_dbm = m.power_floor_dbm;
  g.power_ceiling_dbm = m.power_ceiling_dbm;
  g.alpha.assign(static_cast<std::size_t>(n) * n, 0.0);
  g.beta.assign(static_cast<std::size_t>(n) * n, 0.0);

  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      if (i == j) {
        g.alpha[k] = inf;
        g.beta[k] = m.power_floor_dbm;
        continue;
      }
      const double pl = path_loss_db(m, wrap_distance(s, i, j));
      g.alpha[k] = std::max(m.decode_sensitivity_dbm + pl, m.power_floor_dbm);
      g.beta[k] = std::max(m.sense_threshold_dbm + pl, m.power_floor_dbm);
    }
  }
  return g;
}

std::vector<int> receive_set(const LinkGraph& g, std::span<const double> p, int i) {
  std::vector<int> out;
  for (int j = 0; j < g.n; ++j) {
    if (j != i && p[i] >= g.a(i, j)) out.push_back(j);
  }
  return out;
}

std::vector<int> sense_set(const LinkGraph& g, std::span<const double> p, int i) {
  std::vector<int> out;
  for (int j = 0; j < g.n; ++j) {
    if (p[i] >= g.b(i, j)) out.push_back(j);
  }
  return out;
}

double channel_load(const LinkGraph& g, std::span<const double> mu, std::span<const double> p,
                    int j) {
  double load = 0.0;
  for (int i = 0; i < g.n; ++i) {
    if (p[i] >= g.b(i, j)) load += mu[i];
  }
  return load;
}

std::vector<double> all_channel_loads(const LinkGraph& g, std::span<const double> mu,
                                      std::span<const double> p) {
  std::vector<double> loads(g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    const double* row = g.beta.data() + static_cast<std::size_t>(i) * g.n;
    const double pi = p[i];
    const double mi = mu[i];
    for (int j = 0; j < g.n; ++j) {
      if (pi >= row[j]) loads[j] += mi;
    }
  }
  return loads;
}

}  // namespace dsrc

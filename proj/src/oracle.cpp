#include "dsrc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dsrc {

CutOracleResult oracle_cut(const std::vector<double>& f) {
  if (f.size() > 20) throw std::invalid_argument("oracle_cut: vector too long");
  CutOracleResult best{0, 0.0};  // P(0) = 0 baseline
  for (std::size_t g = 1; g <= f.size(); ++g) {
    double prefix = 0.0;
    for (std::size_t q = 0; q < g; ++q) prefix += f[q];
    if (prefix > best.value) {
      best.value = prefix;
      best.g_star = static_cast<int>(g);
    }
  }
  return best;
}

namespace {

struct BuiltInstance {
  LinkGraph graph;
  Utility utility;
};

BuiltInstance build(const SmallInstance& inst) {
  return {build_link_graph(inst.scenario, inst.channel), Utility(inst.utility, inst.scenario)};
}

}  // namespace

RateOracleResult oracle_rate_opt(const SmallInstance& inst, double grid_phase) {
  const int n = inst.scenario.size();
  if (n > 4) throw std::invalid_argument("oracle_rate_opt: enumeration budget is n <= 4");
  if (static_cast<int>(inst.fixed_p.size()) != n) {
    throw std::invalid_argument("oracle_rate_opt: fixed_p size mismatch");
  }
  const BuiltInstance built = build(inst);
  const LinkGraph& g = built.graph;

  // Receiver weight sums and per-constraint contributor lists at fixed p.
  std::vector<double> coef(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i && inst.fixed_p[i] >= g.a(i, j)) coef[i] += built.utility.coef(i, j);
    }
  }
  std::vector<std::vector<int>> contributors(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (inst.fixed_p[i] >= g.b(i, j)) contributors[j].push_back(i);
    }
  }

  RateOracleResult res;
  // Loads are monotone in mu, so the all-floor corner decides feasibility.
  for (int j = 0; j < n; ++j) {
    if (inst.mu_floor * static_cast<double>(contributors[j].size()) > inst.gamma + 1e-12) {
      return res;  // infeasible box
    }
  }

  constexpr int kPoints = 61;
  std::vector<double> lo(n, inst.mu_floor), hi(n, inst.mu_max);
  std::vector<double> best_mu(n, inst.mu_floor);
  double best_val = 0.0;
  bool have_best = false;

  std::vector<std::vector<double>> grid(n, std::vector<double>(kPoints));
  std::vector<std::vector<double>> phi_tab(n, std::vector<double>(kPoints));
  std::vector<int> idx(n, 0);
  std::vector<double> mu(n, 0.0);

  for (int pass = 0; pass < 4; ++pass) {
    double h = 0.0;
    for (int i = 0; i < n; ++i) {
      const double span = hi[i] - lo[i];
      h = std::max(h, span / (kPoints - 1));
      const double shift = (pass == 0 ? grid_phase : 0.0) * span / (kPoints - 1);
      for (int k = 0; k < kPoints; ++k) {
        double v = lo[i] + shift + span * k / (kPoints - 1);
        grid[i][k] = std::min(v, hi[i]);
        phi_tab[i][k] = coef[i] != 0.0 ? built.utility.phi(grid[i][k]) : 0.0;
      }
    }

    std::fill(idx.begin(), idx.end(), 0);
    bool done = false;
    while (!done) {
      for (int i = 0; i < n; ++i) mu[i] = grid[i][idx[i]];
      bool feasible = true;
      for (int j = 0; j < n && feasible; ++j) {
        double load = 0.0;
        for (int i : contributors[j]) load += mu[i];
        feasible = load <= inst.gamma + 1e-12;
      }
      if (feasible) {
        double val = 0.0;
        for (int i = 0; i < n; ++i) val += coef[i] * phi_tab[i][idx[i]];
        if (!have_best || val > best_val) {
          have_best = true;
          best_val = val;
          for (int i = 0; i < n; ++i) best_mu[i] = mu[i];
        }
      }
      // odometer
      int d = n - 1;
      while (d >= 0 && ++idx[d] == kPoints) idx[d--] = 0;
      done = d < 0;
    }

    // Shrink a window of two cells around the incumbent.
    for (int i = 0; i < n; ++i) {
      lo[i] = std::max(inst.mu_floor, best_mu[i] - 2.0 * h);
      hi[i] = std::min(inst.mu_max, best_mu[i] + 2.0 * h);
    }
  }

  res.feasible = have_best;
  res.mu_star = best_mu;
  res.rho_star = best_val;
  return res;
}

PowerOracleResult oracle_power_opt(const SmallInstance& inst,
                                   const std::vector<double>* shared_grid) {
  const int n = inst.scenario.size();
  if (n > 6) throw std::invalid_argument("oracle_power_opt: enumeration budget is n <= 6");
  if (static_cast<int>(inst.fixed_mu.size()) != n) {
    throw std::invalid_argument("oracle_power_opt: fixed_mu size mismatch");
  }
  const BuiltInstance built = build(inst);
  const LinkGraph& g = built.graph;

  // Candidate powers per vehicle: the floor plus each distinct decode
  // threshold up to the ceiling (or the supplied shared grid).
  std::vector<std::vector<double>> candidates(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double>& c = candidates[i];
    c.push_back(g.power_floor_dbm);
    if (shared_grid) {
      for (double lv : *shared_grid) {
        if (lv > g.power_floor_dbm && lv <= g.power_ceiling_dbm) c.push_back(lv);
      }
    } else {
      std::vector<double> levels;
      for (int j = 0; j < n; ++j) {
        if (j != i && g.a(i, j) <= g.power_ceiling_dbm) levels.push_back(g.a(i, j));
      }
      std::sort(levels.begin(), levels.end());
      levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
      c.insert(c.end(), levels.begin(), levels.end());
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (!shared_grid && c.size() > 7) {
      throw std::invalid_argument("oracle_power_opt: enumeration budget is <= 6 levels per vehicle");
    }
  }

  // Objective value and sensed set per (vehicle, candidate).
  std::vector<std::vector<double>> value(n);
  for (int i = 0; i < n; ++i) {
    value[i].resize(candidates[i].size());
    for (std::size_t k = 0; k < candidates[i].size(); ++k) {
      double v = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i && candidates[i][k] >= g.a(i, j)) {
          v += built.utility.pair_utility(i, j, inst.fixed_mu[i]);
        }
      }
      value[i][k] = v;
    }
  }

  PowerOracleResult res;
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> p(n, 0.0);
  bool done = false;
  while (!done) {
    for (int i = 0; i < n; ++i) p[i] = candidates[i][idx[i]];
    bool feasible = true;
    for (int j = 0; j < n && feasible; ++j) {
      double load = 0.0;
      for (int i = 0; i < n; ++i) {
        if (p[i] >= g.b(i, j)) load += inst.fixed_mu[i];
      }
      feasible = load <= inst.gamma + 1e-9;
    }
    if (feasible) {
      double val = 0.0;
      for (int i = 0; i < n; ++i) val += value[i][idx[i]];
      if (!res.feasible || val > res.rho_star) {
        res.feasible = true;
        res.rho_star = val;
        res.p_star = p;
      }
    }
    int d = n - 1;
    while (d >= 0 && ++idx[d] == candidates[d].size()) idx[d--] = 0;
    done = d < 0;
  }
  return res;
}

}  // namespace dsrc

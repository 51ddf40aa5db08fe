#pragma once

#include <vector>

#include "dsrc/channel.hpp"
#include "dsrc/scenario.hpp"
#include "dsrc/utility.hpp"

namespace dsrc {

/// A desk-scale problem instance for the enumeration solvers.
struct SmallInstance {
  Scenario scenario;
  ChannelModel channel;
  UtilityConfig utility;
  double gamma = 6.0;  ///< msg/s
  double mu_floor = 0.1;
  double mu_max = 10.0;
  std::vector<double> fixed_mu;  ///< used by the power oracle
  std::vector<double> fixed_p;   ///< used by the rate oracle
};

struct CutOracleResult {
  int g_star = 0;
  double value = 0.0;
};

/// Enumerates every prefix cut by fresh summation; ties break to the smallest
/// index. Length is capped at 20.
CutOracleResult oracle_cut(const std::vector<double>& f);

struct RateOracleResult {
  bool feasible = false;
  std::vector<double> mu_star;
  double rho_star = 0.0;
};

/// Nested grid search (initial pass plus three refinements, final resolution
/// <= 1e-4 msg/s) over the load polytope at fixed powers. Values are within
/// 1e-3 of the optimum. n <= 4. grid_phase in [0, 1) shifts the initial grid
/// by a cell fraction for reproducibility checks.
RateOracleResult oracle_rate_opt(const SmallInstance& inst, double grid_phase = 0.0);

struct PowerOracleResult {
  bool feasible = false;
  std::vector<double> p_star;
  double rho_star = 0.0;
};

/// Exhaustive enumeration of per-vehicle power levels ({floor} plus each
/// transmitter's decode thresholds) at fixed rates; exact. n <= 6 and at most
/// 6 levels per vehicle. An optional shared level grid (used for the level-set
/// sufficiency cross-check) replaces the per-vehicle candidates.
PowerOracleResult oracle_power_opt(const SmallInstance& inst,
                                   const std::vector<double>* shared_grid = nullptr);

}  // namespace dsrc

#pragma once

#include <span>
#include <vector>

#include "dsrc/channel.hpp"
#include "dsrc/rate_control.hpp"
#include "dsrc/run_record.hpp"
#include "dsrc/utility.hpp"

namespace dsrc {

/// Linear rate adaptation with 2-hop max channel-load feedback at fixed
/// transmit power.
struct LimericParams {
  double alpha_l = 0.1;    ///< convergence coefficient, in (0, 1)
  double beta_l = 0.001;   ///< gain coefficient, > 0
  double r_g = 0.0;        ///< target total rate [msg/s]
  double r_init = 0.1;     ///< initial per-vehicle rate [msg/s]
  double fixed_power_dbm = 20.0;
};

/// r <- (1 - alpha) r + beta (r_g - r_c), clamped to [mu_floor, mu_max].
double limeric_update(double r_prev, double r_c, const LimericParams& params, double mu_floor,
                      double mu_max);

/// Undirected 1-hop sensing neighborhoods at the given powers: j ~ i when
/// either sees the other's transmissions.
std::vector<std::vector<int>> sense_neighbors(const LinkGraph& g, std::span<const double> p);

/// Maximum channel load over i's 2-hop sensing neighborhood, i included.
double embarc_rc(int i, std::span<const double> loads,
                 const std::vector<std::vector<int>>& neighbors);

/// Synchronous rounds of 2-hop load feedback followed by the linear update.
RunRecord run_baseline(ControllerState state, const LinkGraph& g, const Utility& u,
                       const LimericParams& params, int rounds, const RunOptions& opts = {});

}  // namespace dsrc

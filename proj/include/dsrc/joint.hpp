#pragma once

#include <span>
#include <vector>

#include "dsrc/channel.hpp"
#include "dsrc/rate_control.hpp"
#include "dsrc/run_record.hpp"
#include "dsrc/utility.hpp"

namespace dsrc {

/// Alternation of the rate and power controllers with an
/// objective-improvement stopping rule.
struct JointConfig {
  double eps_stop = 1e-3;  ///< stop when the outer objective gain drops below this
  int inner_rounds_rate = 2000;
  int inner_rounds_power = 2000;
  int max_outer = 20;
  PriceSet price_set = PriceSet::Sense;
  /// Fraction of each inner run averaged into the representative point.
  double avg_window_frac = 0.25;
  double inner_early_exit_eps = 1e-6;
  int inner_early_exit_window = 50;
};

/// Scale rates down uniformly until every channel load fits gamma, then clamp
/// back into the rate box.
std::vector<double> project_rates_feasible(const LinkGraph& g, std::span<const double> mu,
                                           std::span<const double> p, double gamma,
                                           double mu_floor, double mu_max);

/// Lower powers until every channel load fits gamma: repeatedly drop the
/// marginal (highest-threshold) contributor below the most violated vehicle's
/// sensing threshold. Self-load is never removable.
std::vector<double> project_powers_feasible(const LinkGraph& g, std::span<const double> mu,
                                            std::span<const double> p, double gamma);

/// Outer loop: rate phase at frozen powers, then power phase at frozen rates,
/// each followed by an objective evaluation at the windowed-average,
/// feasibility-projected operating point. Stops when the objective gain per
/// outer iteration drops to eps_stop; converged=false flags an exhausted
/// max_outer budget. Prices carry across phases.
RunRecord run_joint(ControllerState state, const LinkGraph& g, const Utility& u,
                    const JointConfig& cfg, const RunOptions& opts = {});

}  // namespace dsrc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dsrc {

/// State captured after one synchronous round. gprime is only filled by the
/// power controller.
struct Snapshot {
  int t = 0;
  std::vector<double> mu;
  std::vector<double> p_dbm;
  std::vector<double> lambda;
  std::vector<double> load;  ///< msg/s
  std::vector<int> gprime;
};

/// Objective value at an outer iteration of the joint controller; half
/// indices mark the point after a rate phase.
struct OuterPoint {
  double k = 0.0;
  double rho = 0.0;
};

/// Full result of a controller run: strided snapshots plus cheap per-round
/// series and the aggregates that summaries and the joint controller need.
struct RunRecord {
  std::string algo;
  std::uint64_t seed = 0;
  double gamma_msgs = 0.0;
  double t_air_s = 1.0;  ///< converts msg/s loads to channel-load fractions
  int rounds_executed = 0;
  int trace_stride = 1;

  std::vector<Snapshot> snapshots;
  std::vector<double> rho;            ///< per round
  std::vector<double> max_load_frac;  ///< per round

  std::vector<double> mean_load_msgs;  ///< per vehicle, over all executed rounds

  std::vector<double> final_mu, final_p, final_lambda, final_load;

  /// Componentwise means over the trailing averaging window, when requested.
  std::vector<double> window_mean_mu, window_mean_p;
  /// Power vector of the best feasible round in the window; empty when no
  /// windowed round satisfied every load constraint.
  std::vector<double> window_best_p;
  int window_rounds = 0;

  std::vector<OuterPoint> outer;  ///< joint controller only
  bool converged = true;
  std::string config_echo;  ///< JSON text of the effective configuration

  double rho_mean_final_half() const;
  double max_load_frac_overall() const;
  /// First round index from which max_load_frac stays within
  /// band_factor * gamma for the rest of the run; -1 if never.
  int rounds_to_band(double band_factor = 1.05) const;
};

}  // namespace dsrc

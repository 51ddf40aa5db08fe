#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dsrc/channel.hpp"
#include "dsrc/run_record.hpp"
#include "dsrc/utility.hpp"

namespace dsrc {

/// Which congestion prices a transmitter aggregates: those of vehicles that
/// can sense it (the dual of the load constraint) or only those that decode
/// it. Sense is the default.
enum class PriceSet { Sense, Receive };

/// Per-round controller state shared by the rate and power controllers.
struct ControllerState {
  std::vector<double> mu;      ///< msg/s
  std::vector<double> lambda;  ///< congestion prices, >= 0
  std::vector<double> p_dbm;
  int t = 0;
  double epsilon = 0.05;  ///< dual tuning parameter, in (0, 1]
  double gamma = 0.0;     ///< channel-load target [msg/s]
  double mu_floor = 0.1;
  double mu_max = 10.0;
};

ControllerState make_state(int n, double epsilon, double gamma, double init_mu,
                           std::span<const double> init_p, double mu_floor = 0.1,
                           double mu_max = 10.0);

/// Projected subgradient step on one congestion price. Shared verbatim by the
/// power controller.
double price_update(double lambda_j, double load_j, double gamma);

/// Best-response rate of vehicle i against an aggregated price: maximizes
/// sum_{j in R_i} U_ij(mu) - eps * mu * aggregated_price over
/// [mu_floor, mu_max]. Log-family utilities use the closed form; other
/// concave families bisect the stationarity condition to 1e-9. An empty
/// receive set returns mu_floor.
double rate_update(int i, double aggregated_price, const Utility& u,
                   std::span<const int> receivers, double eps, double mu_floor, double mu_max);

struct RunOptions {
  int trace_stride = 1;  ///< 0 disables snapshots
  double t_air_s = 1.0;  ///< airtime for load-fraction reporting
  /// Early exit once the max componentwise state change stays below
  /// early_exit_eps for early_exit_window consecutive rounds (0 disables).
  double early_exit_eps = 0.0;
  int early_exit_window = 50;
  /// Fraction of the executed rounds to average for window_mean_* (0 = off).
  double avg_window_frac = 0.0;
  std::function<void(int t, const ControllerState&, std::span<const double> loads)> observer;
};

/// Synchronous-round dual rate controller at fixed transmit powers. Every
/// update reads only the previous round's snapshot, so round results are
/// independent of vehicle ordering. Throws ConfigError for rounds <= 0.
RunRecord run_rate_control(ControllerState state, const LinkGraph& g, const Utility& u,
                           int rounds, PriceSet price_set = PriceSet::Sense,
                           const RunOptions& opts = {});

}  // namespace dsrc

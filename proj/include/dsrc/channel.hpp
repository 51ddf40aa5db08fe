#pragma once

#include <span>
#include <vector>

#include "dsrc/scenario.hpp"

namespace dsrc {

/// Deterministic log-distance propagation plus receiver thresholds.
/// Decoding succeeds at a lower received level than carrier sensing, so
/// decode_sensitivity_dbm <= sense_threshold_dbm.
struct ChannelModel {
  double pathloss_exponent = 2.0;
  double ref_loss_db = 47.9;  ///< loss at 1 m (free space, 5.9 GHz)
  double decode_sensitivity_dbm = -86.0;
  double sense_threshold_dbm = -76.0;
  double power_floor_dbm = -40.0;
  double power_ceiling_dbm = 20.0;
};

/// Log-distance path loss in dB. Distances below 1 m clamp to 1 m; d <= 0 is
/// a domain error.
double path_loss_db(const ChannelModel& m, double d_m);

/// Per-ordered-pair link thresholds. alpha(i,j) is the minimum transmit power
/// of i for j to decode; beta(i,j) the minimum power for j to sense. Both are
/// clamped to power_floor from below. The alpha diagonal is +inf (a vehicle
/// never decodes itself); the beta diagonal is the power floor (own
/// transmissions always occupy the local channel).
struct LinkGraph {
  int n = 0;
  double power_floor_dbm = -40.0;
  double power_ceiling_dbm = 20.0;
  std::vector<double> alpha;  ///< row-major [i*n + j], dBm
  std::vector<double> beta;   ///< row-major [i*n + j], dBm

  double a(int i, int j) const { return alpha[static_cast<std::size_t>(i) * n + j]; }
  double b(int i, int j) const { return beta[static_cast<std::size_t>(i) * n + j]; }
};

LinkGraph build_link_graph(const Scenario& s, const ChannelModel& m);

/// Vehicles that decode i's transmissions at power p[i] (never includes i).
std::vector<int> receive_set(const LinkGraph& g, std::span<const double> p, int i);

/// Vehicles whose channel i's transmissions occupy at power p[i]; always
/// includes i itself.
std::vector<int> sense_set(const LinkGraph& g, std::span<const double> p, int i);

/// Channel load at vehicle j in msg/s: the rate sum over all vehicles whose
/// transmissions j senses, including j's own.
double channel_load(const LinkGraph& g, std::span<const double> mu, std::span<const double> p,
                    int j);

/// channel_load for every vehicle at once.
std::vector<double> all_channel_loads(const LinkGraph& g, std::span<const double> mu,
                                      std::span<const double> p);

}  // namespace dsrc

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dsrc/channel.hpp"
#include "dsrc/rate_control.hpp"
#include "dsrc/run_record.hpp"
#include "dsrc/utility.hpp"

namespace dsrc {

/// Per-transmitter power-level structure. levels holds the distinct decode
/// thresholds alpha(i, .) up to the cap, ascending. G[g] are the receivers
/// that become decodable exactly at levels[g]; H[g] the vehicles that start
/// sensing the transmitter in (levels[g-1], levels[g]]. base_sense lists
/// vehicles sensed even at the power floor (always contains the transmitter).
struct GroupStructure {
  int tx = 0;
  double power_floor_dbm = 0.0;
  std::vector<double> levels;
  std::vector<std::vector<int>> G;
  std::vector<std::vector<int>> H;
  std::vector<int> base_sense;
  std::vector<int> g_of;  ///< 1-based group of each receiver; 0 = above cap
  std::vector<int> h_of;  ///< 1-based sensing group; 0 = never sensed

  int g_max() const { return static_cast<int>(levels.size()); }
};

GroupStructure build_groups(const LinkGraph& g, int i,
                            std::optional<double> level_cap = std::nullopt);

/// Group scores f[g] = sum_{j in G[g]} U_ij(mu_i) - eps * mu_i * sum_{m in
/// H[g]} lambda_m, driving the integral cut solver.
struct CutScores {
  std::vector<double> f;
};

CutScores build_cut_scores(const GroupStructure& groups, const Utility& u,
                           std::span<const double> lambda, double mu_i, double eps);

/// Largest group index g whose every suffix sum f[k..g] is strictly positive;
/// 0 when no group qualifies. Equivalently the smallest index attaining the
/// strict maximum of the prefix sums, when that maximum is positive.
int optimal_cut(const CutScores& scores);

struct PowerDecision {
  int gprime = 0;
  double p_dbm = 0.0;
};

/// One power best-response: solve the cut at the current prices and map it to
/// a level (gprime = 0 falls back to the power floor).
PowerDecision power_decision(const GroupStructure& groups, const Utility& u,
                             std::span<const double> lambda, double mu_i, double eps);

double power_update(int i, const GroupStructure& groups, std::span<const double> lambda,
                    double mu_i, double eps, const Utility& u);

/// Synchronous-round dual power controller at fixed rates; price updates are
/// identical to the rate controller's. Throws ConfigError for rounds <= 0.
RunRecord run_power_control(ControllerState state, const LinkGraph& g, const Utility& u,
                            int rounds, const RunOptions& opts = {});

}  // namespace dsrc

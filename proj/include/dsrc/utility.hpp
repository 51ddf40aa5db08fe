#pragma once

#include <span>
#include <string>
#include <vector>

#include "dsrc/channel.hpp"
#include "dsrc/scenario.hpp"

namespace dsrc {

enum class UtilityVariant {
  AlphaFair,        ///< per-vehicle weight w_i, fairness exponent alpha_i
  PairWeightedLog,  ///< pair weight max(|v_i - v_j|, alpha_v) / d_ij, log rate
};

struct UtilityConfig {
  UtilityVariant variant = UtilityVariant::PairWeightedLog;
  double alpha_i = 1.0;  ///< fairness exponent, > 0 (AlphaFair)
  double alpha_v = 1.0;  ///< speed floor [m/s], > 0 (PairWeightedLog)
  std::vector<double> weights;  ///< per-vehicle w_i; empty = all ones
};

/// Pair utilities bound to a scenario. Both families factor as
/// U_ij(mu) = coef(i, j) * phi(mu) with phi shared across pairs, which the
/// controllers exploit for per-round aggregate evaluation.
class Utility {
 public:
  Utility(UtilityConfig cfg, const Scenario& s);

  const UtilityConfig& config() const { return cfg_; }
  bool log_family() const;

  /// Pair weight c_ij; 0 on the diagonal.
  double coef(int i, int j) const;
  double phi(double mu) const;        ///< family base, strictly concave increasing
  double phi_prime(double mu) const;  ///< d phi / d mu, strictly decreasing

  /// U_ij(mu_i). mu <= 0 is a domain error.
  double pair_utility(int i, int j, double mu) const;
  /// Exact derivative of pair_utility in mu.
  double pair_marginal(int i, int j, double mu) const;

  /// Sum of coef(i, j) over a receiver set.
  double coef_sum(int i, std::span<const int> receivers) const;

 private:
  UtilityConfig cfg_;
  Scenario geo_;  // geometry for the pair weights
  double weight_of(int i) const;
};

/// Global objective: sum of pair utilities over every decodable ordered pair
/// at powers p. Requires mu > 0 componentwise.
double total_objective(const LinkGraph& g, const Utility& u, std::span<const double> mu,
                       std::span<const double> p);

}  // namespace dsrc

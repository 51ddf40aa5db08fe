#include "dsrc/utility.hpp"

#include <cmath>
#include <stdexcept>

#include "dsrc/errors.hpp"

namespace dsrc {

Utility::Utility(UtilityConfig cfg, const Scenario& s) : cfg_(std::move(cfg)), geo_(s) {
  if (cfg_.alpha_i <= 0.0) throw ConfigError("utility: alpha_i must be > 0");
  if (cfg_.alpha_v <= 0.0) throw ConfigError("utility: alpha_v must be > 0");
  if (!cfg_.weights.empty() && static_cast<int>(cfg_.weights.size()) != s.size()) {
    throw ConfigError("utility: weights size must match vehicle count");
  }
  for (double w : cfg_.weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("utility: weights must be positive");
  }
}

bool Utility::log_family() const {
  return cfg_.variant == UtilityVariant::PairWeightedLog || cfg_.alpha_i == 1.0;
}

double Utility::weight_of(int i) const {
  return cfg_.weights.empty() ? 1.0 : cfg_.weights[i];
}

double Utility::coef(int i, int j) const {
  if (i == j) return 0.0;
  if (cfg_.variant == UtilityVariant::AlphaFair) return weight_of(i);
  const double dv = std::fabs(geo_.vehicles[i].v - geo_.vehicles[j].v);
  return std::max(dv, cfg_.alpha_v) / wrap_distance(geo_, i, j);
}

double Utility::phi(double mu) const {
  if (mu <= 0.0) throw std::domain_error("utility: rate must be positive");
  if (log_family()) return std::log(mu);
  const double a = cfg_.alpha_i;
  return std::pow(mu, 1.0 - a) / (1.0 - a);
}

double Utility::phi_prime(double mu) const {
  if (mu <= 0.0) throw std::domain_error("utility: rate must be positive");
  if (log_family()) return 1.0 / mu;
  return std::pow(mu, -cfg_.alpha_i);
}

double Utility::pair_utility(int i, int j, double mu) const { return coef(i, j) * phi(mu); }

double Utility::pair_marginal(int i, int j, double mu) const {
  return coef(i, j) * phi_prime(mu);
}

double Utility::coef_sum(int i, std::span<const int> receivers) const {
  double c = 0.0;
  for (int j : receivers) c += coef(i, j);
  return c;
}

double total_objective(const LinkGraph& g, const Utility& u, std::span<const double> mu,
                       std::span<const double> p) {
  double rho = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double c = 0.0;
    for (int j = 0; j < g.n; ++j) {
      if (j != i && p[i] >= g.a(i, j)) c += u.coef(i, j);
    }
    if (c != 0.0) rho += c * u.phi(mu[i]);
  }
  return rho;
}

}  // namespace dsrc

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dsrc/channel.hpp"
#include "dsrc/scenario.hpp"

namespace dsrc {

/// In/out degrees of the decode digraph at a power assignment. awareness[j]
/// counts transmitters j decodes; coverage[i] counts receivers of i. The two
/// column sums are always equal.
struct AwarenessStats {
  std::vector<int> awareness;
  std::vector<int> coverage;
  std::vector<int> awareness_hist;  ///< unit bins 0..n-1
  std::vector<int> coverage_hist;
  double awareness_q1 = 0.0, awareness_median = 0.0, awareness_q3 = 0.0;
  double coverage_q1 = 0.0, coverage_median = 0.0, coverage_q3 = 0.0;

  double awareness_iqr() const { return awareness_q3 - awareness_q1; }
  double coverage_iqr() const { return coverage_q3 - coverage_q1; }
};

AwarenessStats compute_awareness_coverage(const LinkGraph& g, std::span<const double> p);

/// Linear-interpolation quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> values, double q);

struct ReactionViolation {
  int i = 0, j = 0;
  double product = 0.0;   ///< (d_ij / v_ij) * mu_i
  double required = 0.0;  ///< log(1 - p_min) / log(1 - p_msg)
};

/// Flags closing ordered pairs whose expected message count within the
/// time-to-collision is below the reliability requirement.
std::vector<ReactionViolation> reaction_feasibility(const Scenario& s, std::span<const double> mu,
                                                    double p_msg, double p_min);

struct PairProduct {
  int i = 0, j = 0;
  double product = 0.0;
  bool valid = false;  ///< false when the pair is not closing
};

/// Reaction-time products (d_ij / v_ij) * mu_i for the given ordered pairs;
/// non-closing pairs are returned invalid.
std::vector<PairProduct> fairness_ratio(const Scenario& s, std::span<const double> mu,
                                        std::span<const std::pair<int, int>> pairs);

}  // namespace dsrc

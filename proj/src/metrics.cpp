#include "dsrc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsrc {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - lo;
  return values[lo] + (values[lo + 1] - values[lo]) * frac;
}

AwarenessStats compute_awareness_coverage(const LinkGraph& g, std::span<const double> p) {
  const int n = g.n;
  AwarenessStats st;
  st.awareness.assign(n, 0);
  st.coverage.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i && p[i] >= g.a(i, j)) {
        ++st.coverage[i];
        ++st.awareness[j];
      }
    }
  }
  st.awareness_hist.assign(std::max(n, 1), 0);
  st.coverage_hist.assign(std::max(n, 1), 0);
  for (int v : st.awareness) ++st.awareness_hist[v];
  for (int v : st.coverage) ++st.coverage_hist[v];

  std::vector<double> a(st.awareness.begin(), st.awareness.end());
  std::vector<double> c(st.coverage.begin(), st.coverage.end());
  st.awareness_q1 = quantile(a, 0.25);
  st.awareness_median = quantile(a, 0.5);
  st.awareness_q3 = quantile(a, 0.75);
  st.coverage_q1 = quantile(c, 0.25);
  st.coverage_median = quantile(c, 0.5);
  st.coverage_q3 = quantile(c, 0.75);
  return st;
}

std::vector<ReactionViolation> reaction_feasibility(const Scenario& s, std::span<const double> mu,
                                                    double p_msg, double p_min) {
  if (p_msg <= 0.0 || p_msg >= 1.0 || p_min <= 0.0 || p_min >= 1.0) {
    throw std::domain_error("reaction_feasibility: probabilities must lie in (0, 1)");
  }
  const double required = std::log(1.0 - p_min) / std::log(1.0 - p_msg);
  std::vector<ReactionViolation> out;
  const int n = s.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = closing_speed(s, i, j);
      if (v <= 0.0) continue;  // receding or parallel pairs are never at risk
      const double product = wrap_distance(s, i, j) / v * mu[i];
      if (product < required) out.push_back({i, j, product, required});
    }
  }
  return out;
}

std::vector<PairProduct> fairness_ratio(const Scenario& s, std::span<const double> mu,
                                        std::span<const std::pair<int, int>> pairs) {
  std::vector<PairProduct> out;
  out.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    PairProduct pp;
    pp.i = i;
    pp.j = j;
    const double v = closing_speed(s, i, j);
    if (v > 0.0) {
      pp.valid = true;
      pp.product = wrap_distance(s, i, j) / v * mu[i];
    }
    out.push_back(pp);
  }
  return out;
}

}  // namespace dsrc

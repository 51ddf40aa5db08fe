#include "dsrc/run_record.hpp"

#include <algorithm>

namespace dsrc {

double RunRecord::rho_mean_final_half() const {
  if (rho.empty()) return 0.0;
  const std::size_t start = rho.size() / 2;
  double sum = 0.0;
  for (std::size_t t = start; t < rho.size(); ++t) sum += rho[t];
  return sum / (rho.size() - start);
}

double RunRecord::max_load_frac_overall() const {
  double m = 0.0;
  for (double v : max_load_frac) m = std::max(m, v);
  return m;
}

int RunRecord::rounds_to_band(double band_factor) const {
  const double band = band_factor * gamma_msgs * t_air_s;
  int first = -1;
  for (int t = static_cast<int>(max_load_frac.size()) - 1; t >= 0; --t) {
    if (max_load_frac[t] > band) break;
    first = t;
  }
  return first;
}

}  // namespace dsrc

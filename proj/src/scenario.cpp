#include "dsrc/scenario.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "dsrc/errors.hpp"

namespace dsrc {

std::vector<double> default_lane_speeds(int lanes) {
  // Forward lanes 30/32/34..., opposing lanes mirrored.
  std::vector<double> speeds(lanes);
  const int forward = (lanes + 1) / 2;
  for (int l = 0; l < lanes; ++l) {
    if (l < forward) {
      speeds[l] = 30.0 + 2.0 * l;
    } else {
      speeds[l] = -(30.0 + 2.0 * (l - forward));
    }
  }
  return speeds;
}

Scenario generate_six_lane(const SixLaneParams& params, std::uint64_t seed) {
  if (params.lanes < 1) throw ConfigError("six-lane preset: lanes must be >= 1");
  if (params.per_lane < 10 || params.per_lane % 10 != 0) {
    throw ConfigError("six-lane preset: per_lane must be a positive multiple of 10, got " +
                      std::to_string(params.per_lane));
  }
  if (params.dense_gaps_m.first <= 0 || params.sparse_gaps_m.first <= 0) {
    throw ConfigError("six-lane preset: gap widths must be positive");
  }
  std::vector<double> speeds = params.lane_speeds;
  if (speeds.empty()) {
    speeds = default_lane_speeds(params.lanes);
  } else if (static_cast<int>(speeds.size()) != params.lanes) {
    throw ConfigError("six-lane preset: lane_speeds size must equal lanes");
  }

  // Segment lengths in gaps: dense/sparse/dense/sparse = 0.4/0.1/0.4/0.1.
  const int dense = params.per_lane * 2 / 5;
  const int sparse = params.per_lane / 10;

  std::mt19937_64 rng(seed);
  auto coin_gap = [&rng](const std::pair<int, int>& choices) {
    return (rng() & 1u) ? choices.second : choices.first;
  };

  std::vector<int> gaps;
  gaps.reserve(params.per_lane);
  for (int k = 0; k < params.per_lane; ++k) {
    const bool in_dense = k < dense || (k >= dense + sparse && k < 2 * dense + sparse);
    gaps.push_back(coin_gap(in_dense ? params.dense_gaps_m : params.sparse_gaps_m));
  }

  double road_length = 0.0;
  std::vector<double> xs(params.per_lane);
  for (int k = 0; k < params.per_lane; ++k) {
    xs[k] = road_length;
    road_length += gaps[k];
  }

  Scenario s;
  s.road_length = road_length;
  s.lane_count = params.lanes;
  s.lane_width = params.lane_width_m;
  s.seed = seed;
  s.vehicles.reserve(static_cast<std::size_t>(params.lanes) * params.per_lane);
  for (int l = 0; l < params.lanes; ++l) {
    for (int k = 0; k < params.per_lane; ++k) {
      Vehicle veh;
      veh.id = l * params.per_lane + k;
      veh.lane = l;
      veh.x = xs[k];
      veh.y = l * params.lane_width_m;
      veh.v = speeds[l];
      s.vehicles.push_back(veh);
    }
  }
  return s;
}

double wrap_distance(const Scenario& s, int i, int j) {
  if (i == j) throw std::domain_error("wrap_distance: self-distance is undefined");
  const Vehicle& a = s.vehicles.at(i);
  const Vehicle& b = s.vehicles.at(j);
  double adx = std::fabs(a.x - b.x);
  adx = std::min(adx, s.road_length - adx);
  const double dy = std::fabs(a.y - b.y);
  return std::sqrt(adx * adx + dy * dy);
}

double closing_speed(const Scenario& s, int i, int j) {
  const Vehicle& a = s.vehicles.at(i);
  const Vehicle& b = s.vehicles.at(j);
  // Wrap-signed longitudinal offset from i to j in (-L/2, L/2].
  double u = std::remainder(b.x - a.x, s.road_length);
  const double dy = b.y - a.y;
  const double d = std::sqrt(u * u + dy * dy);
  if (d == 0.0) return 0.0;
  return -(u * (b.v - a.v)) / d;
}

}  // namespace dsrc

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace dsrc {

/// One vehicle on the wrap-around road.
struct Vehicle {
  int id = 0;
  int lane = 0;
  double x = 0.0;  ///< longitudinal position [m], 0 <= x < road_length
  double y = 0.0;  ///< lateral position [m]
  double v = 0.0;  ///< signed speed [m/s]; sign encodes direction
};

/// Immutable vehicle layout on a circular road. Safe to share read-only
/// across threads once built.
struct Scenario {
  double road_length = 0.0;  ///< wrap circumference [m]
  int lane_count = 1;
  double lane_width = 4.0;  ///< [m]
  std::uint64_t seed = 0;
  std::vector<Vehicle> vehicles;

  int size() const { return static_cast<int>(vehicles.size()); }
};

/// Parameters for the dense-sparse highway grid preset.
struct SixLaneParams {
  int lanes = 6;
  int per_lane = 300;
  std::pair<int, int> dense_gaps_m{4, 5};
  std::pair<int, int> sparse_gaps_m{16, 17};
  std::vector<double> lane_speeds;  ///< [m/s], one per lane; empty = defaults
  double lane_width_m = 4.0;
};

/// Default per-lane speeds: half the lanes one way, half the other.
std::vector<double> default_lane_speeds(int lanes);

/// Builds the dense-sparse-dense-sparse grid. Segment sizes follow the
/// 0.4/0.1/0.4/0.1 fractions of per_lane; each gap is a fair coin between the
/// two candidate widths. All lanes share one sampled gap sequence so the wrap
/// seam closes exactly, and road_length is the cumulative gap sum.
/// Deterministic in (params, seed). Throws ConfigError when per_lane does not
/// decompose into the pattern.
Scenario generate_six_lane(const SixLaneParams& params, std::uint64_t seed);

/// Shortest distance on the cylinder (wrap in x, flat in y).
/// Throws std::domain_error for i == j.
double wrap_distance(const Scenario& s, int i, int j);

/// Rate of decrease of wrap_distance(i, j); positive when the pair closes.
double closing_speed(const Scenario& s, int i, int j);

}  // namespace dsrc

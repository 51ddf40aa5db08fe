#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dsrc/baseline.hpp"
#include "dsrc/channel.hpp"
#include "dsrc/joint.hpp"
#include "dsrc/rate_control.hpp"
#include "dsrc/scenario.hpp"
#include "dsrc/utility.hpp"

namespace dsrc {

struct ControllerConfig {
  double epsilon = 0.05;
  double gamma_frac = 0.6;   ///< target channel-load fraction
  double t_air_s = 5e-4;     ///< per-message airtime
  std::optional<double> gamma_msgs;  ///< direct msg/s target, overrides the conversion
  int rounds = 2000;
  PriceSet price_set = PriceSet::Sense;
  double mu_floor = 0.1;
  double mu_max = 10.0;
  std::optional<double> init_mu;  ///< defaults to mu_floor
  double fixed_mu = 2.0;          ///< frozen rates for power-only runs
  double fixed_power_dbm = 20.0;  ///< powers for rate-only and limeric runs

  double gamma() const { return gamma_msgs.value_or(gamma_frac / t_air_s); }
};

struct OutputConfig {
  int trace_stride = 1;
  bool dump_links = false;
};

struct SimConfig {
  std::optional<std::string> scenario_file;
  std::optional<Scenario> scenario_inline;
  SixLaneParams preset;
  std::uint64_t seed = 1;

  ChannelModel channel;
  UtilityConfig utility;
  ControllerConfig controller;
  JointConfig joint;
  LimericParams baseline;  ///< r_g <= 0 selects the load target gamma
  OutputConfig output;

  std::string echo;  ///< the parsed configuration, normalized JSON text
};

/// Parses the JSON configuration; unknown sections are rejected. Throws
/// ConfigError on any malformed or out-of-range value.
SimConfig parse_config_text(const std::string& json_text);
SimConfig load_config(const std::string& path);

/// Builds the configured scenario: inline list, file, or generated preset.
Scenario realize_scenario(const SimConfig& cfg);

}  // namespace dsrc

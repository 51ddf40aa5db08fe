#include "dsrc/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dsrc/errors.hpp"
#include "dsrc/io.hpp"

namespace dsrc {

namespace {

using nlohmann::json;

void require_known_keys(const json& j, std::initializer_list<const char*> known,
                        const std::string& section) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigError("config: unknown key '" + key + "' in " + section);
  }
}

std::pair<int, int> gap_pair(const json& j, const char* key, std::pair<int, int> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() != 2) throw ConfigError(std::string("config: ") + key + " must be [lo, hi]");
  return {a[0].get<int>(), a[1].get<int>()};
}

void parse_scenario_section(const json& j, SimConfig& cfg) {
  if (j.contains("vehicles")) {
    cfg.scenario_inline = scenario_from_json_text(j.dump());
    return;
  }
  require_known_keys(j, {"preset", "lanes", "per_lane", "dense_gaps_m", "sparse_gaps_m",
                         "lane_speeds", "lane_width", "seed"},
                     "scenario");
  const std::string preset = j.value("preset", "six-lane");
  if (preset != "six-lane") throw ConfigError("config: unknown scenario preset '" + preset + "'");
  cfg.preset.lanes = j.value("lanes", cfg.preset.lanes);
  cfg.preset.per_lane = j.value("per_lane", cfg.preset.per_lane);
  cfg.preset.dense_gaps_m = gap_pair(j, "dense_gaps_m", cfg.preset.dense_gaps_m);
  cfg.preset.sparse_gaps_m = gap_pair(j, "sparse_gaps_m", cfg.preset.sparse_gaps_m);
  if (j.contains("lane_speeds")) cfg.preset.lane_speeds = j.at("lane_speeds").get<std::vector<double>>();
  cfg.preset.lane_width_m = j.value("lane_width", cfg.preset.lane_width_m);
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
}

void parse_channel(const json& j, ChannelModel& m) {
  require_known_keys(j, {"pathloss_exponent", "ref_loss_db", "decode_sensitivity_dbm",
                         "sense_threshold_dbm", "power_floor_dbm", "power_ceiling_dbm"},
                     "channel");
  m.pathloss_exponent = j.value("pathloss_exponent", m.pathloss_exponent);
  m.ref_loss_db = j.value("ref_loss_db", m.ref_loss_db);
  m.decode_sensitivity_dbm = j.value("decode_sensitivity_dbm", m.decode_sensitivity_dbm);
  m.sense_threshold_dbm = j.value("sense_threshold_dbm", m.sense_threshold_dbm);
  m.power_floor_dbm = j.value("power_floor_dbm", m.power_floor_dbm);
  m.power_ceiling_dbm = j.value("power_ceiling_dbm", m.power_ceiling_dbm);
  if (m.decode_sensitivity_dbm > m.sense_threshold_dbm) {
    throw ConfigError("config: decode sensitivity must not exceed the sense threshold");
  }
  if (m.power_floor_dbm >= m.power_ceiling_dbm) {
    throw ConfigError("config: power floor must be below the ceiling");
  }
}

void parse_utility(const json& j, UtilityConfig& u) {
  require_known_keys(j, {"variant", "alpha_i", "alpha_v", "weights"}, "utility");
  if (j.contains("variant")) {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "alpha_fair") {
      u.variant = UtilityVariant::AlphaFair;
    } else if (v == "pair_weighted_log") {
      u.variant = UtilityVariant::PairWeightedLog;
    } else {
      throw ConfigError("config: unknown utility variant '" + v + "'");
    }
  }
  u.alpha_i = j.value("alpha_i", u.alpha_i);
  u.alpha_v = j.value("alpha_v", u.alpha_v);
  if (j.contains("weights")) u.weights = j.at("weights").get<std::vector<double>>();
  if (u.alpha_i <= 0.0 || u.alpha_v <= 0.0) {
    throw ConfigError("config: utility exponents must be positive");
  }
}

void parse_controller(const json& j, ControllerConfig& c) {
  require_known_keys(j, {"epsilon", "gamma_frac", "t_air_s", "gamma_msgs", "rounds", "price_set",
                         "mu_floor", "mu_max", "init_mu", "fixed_mu", "fixed_power_dbm"},
                     "controller");
  c.epsilon = j.value("epsilon", c.epsilon);
  c.gamma_frac = j.value("gamma_frac", c.gamma_frac);
  c.t_air_s = j.value("t_air_s", c.t_air_s);
  if (j.contains("gamma_msgs")) c.gamma_msgs = j.at("gamma_msgs").get<double>();
  c.rounds = j.value("rounds", c.rounds);
  if (j.contains("price_set")) {
    const std::string v = j.at("price_set").get<std::string>();
    if (v == "sense") {
      c.price_set = PriceSet::Sense;
    } else if (v == "receive") {
      c.price_set = PriceSet::Receive;
    } else {
      throw ConfigError("config: price_set must be 'sense' or 'receive'");
    }
  }
  c.mu_floor = j.value("mu_floor", c.mu_floor);
  c.mu_max = j.value("mu_max", c.mu_max);
  if (j.contains("init_mu")) c.init_mu = j.at("init_mu").get<double>();
  c.fixed_mu = j.value("fixed_mu", c.fixed_mu);
  c.fixed_power_dbm = j.value("fixed_power_dbm", c.fixed_power_dbm);
  if (c.epsilon <= 0.0 || c.epsilon > 1.0) throw ConfigError("config: epsilon must be in (0, 1]");
  if (c.rounds <= 0) throw ConfigError("config: rounds must be positive");
  if (c.t_air_s <= 0.0) throw ConfigError("config: t_air_s must be positive");
  if (c.mu_floor <= 0.0 || c.mu_floor >= c.mu_max) {
    throw ConfigError("config: require 0 < mu_floor < mu_max");
  }
}

void parse_joint(const json& j, JointConfig& c) {
  require_known_keys(j, {"eps_stop", "inner_rounds_rate", "inner_rounds_power", "max_outer",
                         "avg_window_frac"},
                     "joint");
  c.eps_stop = j.value("eps_stop", c.eps_stop);
  c.inner_rounds_rate = j.value("inner_rounds_rate", c.inner_rounds_rate);
  c.inner_rounds_power = j.value("inner_rounds_power", c.inner_rounds_power);
  c.max_outer = j.value("max_outer", c.max_outer);
  c.avg_window_frac = j.value("avg_window_frac", c.avg_window_frac);
  if (c.eps_stop <= 0.0) throw ConfigError("config: joint.eps_stop must be positive");
  if (c.inner_rounds_rate < 1 || c.inner_rounds_power < 1 || c.max_outer < 1) {
    throw ConfigError("config: joint budgets must be >= 1");
  }
}

void parse_baseline(const json& j, LimericParams& b) {
  require_known_keys(j, {"alpha_l", "beta_l", "r_g", "r_init", "fixed_power_dbm"}, "baseline");
  b.alpha_l = j.value("alpha_l", b.alpha_l);
  b.beta_l = j.value("beta_l", b.beta_l);
  b.r_g = j.value("r_g", b.r_g);
  b.r_init = j.value("r_init", b.r_init);
  b.fixed_power_dbm = j.value("fixed_power_dbm", b.fixed_power_dbm);
}

void parse_output(const json& j, OutputConfig& o) {
  require_known_keys(j, {"trace_stride", "dump_links"}, "output");
  o.trace_stride = j.value("trace_stride", o.trace_stride);
  o.dump_links = j.value("dump_links", o.dump_links);
  if (o.trace_stride < 0) throw ConfigError("config: trace_stride must be >= 0");
}

}  // namespace

SimConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  try {
    SimConfig cfg;
    require_known_keys(j, {"scenario", "scenario_file", "channel", "utility", "controller",
                           "joint", "baseline", "output", "seed"},
                       "top level");
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("scenario_file")) cfg.scenario_file = j.at("scenario_file").get<std::string>();
    if (j.contains("scenario")) parse_scenario_section(j.at("scenario"), cfg);
    if (cfg.scenario_file && j.contains("scenario")) {
      throw ConfigError("config: give either scenario or scenario_file, not both");
    }
    if (j.contains("channel")) parse_channel(j.at("channel"), cfg.channel);
    if (j.contains("utility")) parse_utility(j.at("utility"), cfg.utility);
    if (j.contains("controller")) parse_controller(j.at("controller"), cfg.controller);
    if (j.contains("joint")) parse_joint(j.at("joint"), cfg.joint);
    if (j.contains("baseline")) parse_baseline(j.at("baseline"), cfg.baseline);
    if (j.contains("output")) parse_output(j.at("output"), cfg.output);
    cfg.echo = j.dump();
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

Scenario realize_scenario(const SimConfig& cfg) {
  if (cfg.scenario_inline) return *cfg.scenario_inline;
  if (cfg.scenario_file) return load_scenario(*cfg.scenario_file);
  return generate_six_lane(cfg.preset, cfg.seed);
}

}  // namespace dsrc

#include "dsrc/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dsrc/baseline.hpp"
#include "dsrc/errors.hpp"
#include "dsrc/io.hpp"
#include "dsrc/joint.hpp"
#include "dsrc/metrics.hpp"
#include "dsrc/oracle.hpp"
#include "dsrc/power_control.hpp"
#include "dsrc/rate_control.hpp"

namespace dsrc {

namespace fs = std::filesystem;
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<double> median_level_powers(const LinkGraph& g) {
  std::vector<double> p(g.n, g.power_floor_dbm);
  for (int i = 0; i < g.n; ++i) {
    const GroupStructure gs = build_groups(g, i);
    if (gs.g_max() > 0) p[i] = gs.levels[(gs.g_max() - 1) / 2];
  }
  return p;
}

}  // namespace

RunArtifacts run_algo(const SimConfig& cfg, const std::string& algo) {
  RunArtifacts art;
  art.scenario = realize_scenario(cfg);
  art.graph = build_link_graph(art.scenario, cfg.channel);
  const Utility u(cfg.utility, art.scenario);
  const ControllerConfig& cc = cfg.controller;
  const double gamma = cc.gamma();
  const int n = art.scenario.size();

  RunOptions opts;
  opts.trace_stride = cfg.output.trace_stride;
  opts.t_air_s = cc.t_air_s;

  if (algo == "rate") {
    std::vector<double> p(n, cc.fixed_power_dbm);
    ControllerState st = make_state(n, cc.epsilon, gamma, cc.init_mu.value_or(cc.mu_floor), p,
                                    cc.mu_floor, cc.mu_max);
    art.record = run_rate_control(std::move(st), art.graph, u, cc.rounds, cc.price_set, opts);
  } else if (algo == "power") {
    std::vector<double> p(n, cc.fixed_power_dbm);
    ControllerState st = make_state(n, cc.epsilon, gamma, cc.fixed_mu, p, cc.mu_floor, cc.mu_max);
    art.record = run_power_control(std::move(st), art.graph, u, cc.rounds, opts);
  } else if (algo == "joint") {
    const std::vector<double> p = median_level_powers(art.graph);
    ControllerState st = make_state(n, cc.epsilon, gamma, cc.init_mu.value_or(cc.mu_floor), p,
                                    cc.mu_floor, cc.mu_max);
    JointConfig jc = cfg.joint;
    jc.price_set = cc.price_set;
    art.record = run_joint(std::move(st), art.graph, u, jc, opts);
  } else if (algo == "limeric") {
    LimericParams params = cfg.baseline;
    if (params.r_g <= 0.0) params.r_g = gamma;
    std::vector<double> p(n, params.fixed_power_dbm);
    ControllerState st = make_state(n, cc.epsilon, gamma, params.r_init, p, cc.mu_floor, cc.mu_max);
    art.record = run_baseline(std::move(st), art.graph, u, params, cc.rounds, opts);
  } else {
    throw ConfigError("unknown algorithm '" + algo + "'");
  }
  art.record.seed = cfg.seed;
  art.record.config_echo = cfg.echo;
  return art;
}

int cmd_generate(const SixLaneParams& params, std::uint64_t seed, const std::string& out_path) {
  save_scenario(generate_six_lane(params, seed), out_path);
  return kExitOk;
}

int cmd_run(const SimConfig& cfg, const std::string& algo, const std::string& out_dir) {
  RunArtifacts art = run_algo(cfg, algo);
  emit(art.record, art.graph, out_dir);
  save_scenario(art.scenario, (fs::path(out_dir) / "scenario.json").string());
  if (cfg.output.dump_links) {
    dump_links(art.graph, art.scenario, (fs::path(out_dir) / "links.csv").string());
  }
  return kExitOk;
}

namespace {

SmallInstance parse_instance(const json& j) {
  SmallInstance inst;
  if (j.contains("scenario_file")) {
    inst.scenario = load_scenario(j.at("scenario_file").get<std::string>());
  } else if (j.contains("scenario")) {
    inst.scenario = scenario_from_json_text(j.at("scenario").dump());
  } else {
    throw ConfigError("oracle instance: scenario or scenario_file required");
  }
  const int n = inst.scenario.size();
  if (j.contains("channel")) {
    const auto& c = j.at("channel");
    inst.channel.pathloss_exponent = c.value("pathloss_exponent", inst.channel.pathloss_exponent);
    inst.channel.ref_loss_db = c.value("ref_loss_db", inst.channel.ref_loss_db);
    inst.channel.decode_sensitivity_dbm =
        c.value("decode_sensitivity_dbm", inst.channel.decode_sensitivity_dbm);
    inst.channel.sense_threshold_dbm =
        c.value("sense_threshold_dbm", inst.channel.sense_threshold_dbm);
    inst.channel.power_floor_dbm = c.value("power_floor_dbm", inst.channel.power_floor_dbm);
    inst.channel.power_ceiling_dbm = c.value("power_ceiling_dbm", inst.channel.power_ceiling_dbm);
  }
  if (j.contains("utility")) {
    const auto& uj = j.at("utility");
    const std::string v = uj.value("variant", "pair_weighted_log");
    inst.utility.variant =
        v == "alpha_fair" ? UtilityVariant::AlphaFair : UtilityVariant::PairWeightedLog;
    inst.utility.alpha_i = uj.value("alpha_i", inst.utility.alpha_i);
    inst.utility.alpha_v = uj.value("alpha_v", inst.utility.alpha_v);
    if (uj.contains("weights")) inst.utility.weights = uj.at("weights").get<std::vector<double>>();
  }
  inst.gamma = j.value("gamma", inst.gamma);
  inst.mu_floor = j.value("mu_floor", inst.mu_floor);
  inst.mu_max = j.value("mu_max", inst.mu_max);
  auto vec_or_scalar = [n](const json& v) {
    if (v.is_array()) return v.get<std::vector<double>>();
    return std::vector<double>(n, v.get<double>());
  };
  if (j.contains("fixed_mu")) inst.fixed_mu = vec_or_scalar(j.at("fixed_mu"));
  if (j.contains("fixed_p")) inst.fixed_p = vec_or_scalar(j.at("fixed_p"));
  return inst;
}

}  // namespace

int cmd_oracle(const std::string& which, const std::string& instance_path,
               const std::string& out_path) {
  std::ifstream in(instance_path);
  if (!in) throw ConfigError("cannot open instance file: " + instance_path);
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("oracle instance: invalid JSON: ") + e.what());
  }

  ordered_json out;
  out["which"] = which;
  int code = kExitOk;
  try {
    if (which == "cut") {
      if (!j.contains("f")) throw ConfigError("oracle instance: cut requires an 'f' array");
      const auto f = j.at("f").get<std::vector<double>>();
      const CutOracleResult r = oracle_cut(f);
      out["g_star"] = r.g_star;
      out["value"] = round9(r.value);
    } else if (which == "rate") {
      const RateOracleResult r = oracle_rate_opt(parse_instance(j));
      out["feasible"] = r.feasible;
      if (r.feasible) {
        out["mu_star"] = json::array();
        for (double m : r.mu_star) out["mu_star"].push_back(round9(m));
        out["rho_star"] = round9(r.rho_star);
      } else {
        code = kExitInfeasible;
      }
    } else if (which == "power") {
      const PowerOracleResult r = oracle_power_opt(parse_instance(j));
      out["feasible"] = r.feasible;
      if (r.feasible) {
        out["p_star"] = json::array();
        for (double p : r.p_star) out["p_star"].push_back(round9(p));
        out["rho_star"] = round9(r.rho_star);
      } else {
        code = kExitInfeasible;
      }
    } else {
      throw ConfigError("oracle: which must be cut, rate or power");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("oracle instance: ") + e.what());
  }

  std::ofstream os(out_path, std::ios::trunc);
  if (!os) throw ConfigError("cannot open for writing: " + out_path);
  os << out.dump(2) << '\n';
  return code;
}

int cmd_compare(const SimConfig& cfg, const std::string& out_dir) {
  RunArtifacts joint = run_algo(cfg, "joint");
  RunArtifacts limeric = run_algo(cfg, "limeric");
  emit(joint.record, joint.graph, (fs::path(out_dir) / "joint").string());
  emit(limeric.record, limeric.graph, (fs::path(out_dir) / "limeric").string());
  save_scenario(joint.scenario, (fs::path(out_dir) / "scenario.json").string());

  auto block = [](const RunArtifacts& art) {
    const AwarenessStats st = compute_awareness_coverage(art.graph, art.record.final_p);
    ordered_json b;
    b["rho_final"] = round9(art.record.rho.empty() ? 0.0 : art.record.rho.back());
    b["rho_avg"] = round9(art.record.rho_mean_final_half());
    b["max_load_frac"] = round9(art.record.max_load_frac_overall());
    b["awareness_iqr"] = round9(st.awareness_iqr());
    b["coverage_iqr"] = round9(st.coverage_iqr());
    b["awareness_median"] = round9(st.awareness_median);
    b["coverage_median"] = round9(st.coverage_median);
    return b;
  };
  ordered_json diff;
  diff["joint"] = block(joint);
  diff["limeric"] = block(limeric);
  diff["rho_final_gain"] = round9((joint.record.rho.empty() ? 0.0 : joint.record.rho.back()) -
                                  (limeric.record.rho.empty() ? 0.0 : limeric.record.rho.back()));

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::ofstream os(fs::path(out_dir) / "compare.json", std::ios::trunc);
  if (!os) throw ConfigError("cannot open for writing: " + out_dir + "/compare.json");
  os << diff.dump(2) << '\n';
  return kExitOk;
}

}  // namespace dsrc

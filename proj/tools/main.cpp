#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dsrc/config.hpp"
#include "dsrc/errors.hpp"
#include "dsrc/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Distributed rate and power control simulator for broadcast vehicular networks"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a scenario file");
  std::string gen_preset = "six-lane";
  dsrc::SixLaneParams gen_params;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "scenario.json";
  std::vector<double> gen_speeds;
  std::vector<int> gen_dense, gen_sparse;
  gen->add_option("--preset", gen_preset, "Scenario preset")->default_str("six-lane");
  gen->add_option("--lanes", gen_params.lanes, "Number of lanes");
  gen->add_option("--per-lane", gen_params.per_lane, "Vehicles per lane (multiple of 10)");
  gen->add_option("--lane-width", gen_params.lane_width_m, "Lane width [m]");
  gen->add_option("--speeds", gen_speeds, "Per-lane speeds [m/s]");
  gen->add_option("--dense-gaps", gen_dense, "Dense gap candidates [m], two values");
  gen->add_option("--sparse-gaps", gen_sparse, "Sparse gap candidates [m], two values");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output scenario path")->required();

  // run
  auto* run = app.add_subcommand("run", "Run a controller and emit traces");
  std::string run_algo, run_config, run_out = "out";
  std::uint64_t run_seed = 0;
  bool run_seed_set = false, run_dump_links = false;
  run->add_option("--algo", run_algo, "rate | power | joint | limeric")->required();
  run->add_option("--config", run_config, "JSON configuration file")->required();
  run->add_option("--out", run_out, "Output directory");
  run->add_option("--seed", run_seed, "Scenario seed override")
      ->each([&](const std::string&) { run_seed_set = true; });
  run->add_flag("--dump-links", run_dump_links, "Also write the per-pair link budget CSV");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Run a brute-force reference solver");
  std::string orc_which, orc_instance, orc_out = "oracle_result.json";
  orc->add_option("--which", orc_which, "cut | rate | power")->required();
  orc->add_option("--instance", orc_instance, "JSON instance file")->required();
  orc->add_option("--out", orc_out, "Result path");

  // compare
  auto* cmp = app.add_subcommand("compare", "Run joint and limeric on one scenario and diff");
  std::string cmp_config, cmp_out = "compare_out";
  std::uint64_t cmp_seed = 0;
  bool cmp_seed_set = false;
  cmp->add_option("--config", cmp_config, "JSON configuration file")->required();
  cmp->add_option("--out", cmp_out, "Output directory");
  cmp->add_option("--seed", cmp_seed, "Scenario seed override")
      ->each([&](const std::string&) { cmp_seed_set = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (gen_preset != "six-lane") throw dsrc::ConfigError("unknown preset: " + gen_preset);
      if (!gen_speeds.empty()) gen_params.lane_speeds = gen_speeds;
      auto pick = [](const std::vector<int>& v, std::pair<int, int> fallback) {
        if (v.empty()) return fallback;
        if (v.size() != 2) throw dsrc::ConfigError("gap candidates need exactly two values");
        return std::pair<int, int>{v[0], v[1]};
      };
      gen_params.dense_gaps_m = pick(gen_dense, gen_params.dense_gaps_m);
      gen_params.sparse_gaps_m = pick(gen_sparse, gen_params.sparse_gaps_m);
      return dsrc::cmd_generate(gen_params, gen_seed, gen_out);
    }
    if (run->parsed()) {
      dsrc::SimConfig cfg = dsrc::load_config(run_config);
      if (run_seed_set) cfg.seed = run_seed;
      if (run_dump_links) cfg.output.dump_links = true;
      return dsrc::cmd_run(cfg, run_algo, run_out);
    }
    if (orc->parsed()) {
      return dsrc::cmd_oracle(orc_which, orc_instance, orc_out);
    }
    if (cmp->parsed()) {
      dsrc::SimConfig cfg = dsrc::load_config(cmp_config);
      if (cmp_seed_set) cfg.seed = cmp_seed;
      return dsrc::cmd_compare(cfg, cmp_out);
    }
  } catch (const dsrc::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return dsrc::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

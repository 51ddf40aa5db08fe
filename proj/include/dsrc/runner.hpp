#pragma once

#include <cstdint>
#include <string>

#include "dsrc/config.hpp"
#include "dsrc/run_record.hpp"

namespace dsrc {

/// Exit codes shared by the CLI commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;

struct RunArtifacts {
  Scenario scenario;
  LinkGraph graph;
  RunRecord record;
};

/// Runs one algorithm ("rate", "power", "joint" or "limeric") on the
/// configured scenario.
RunArtifacts run_algo(const SimConfig& cfg, const std::string& algo);

int cmd_generate(const SixLaneParams& params, std::uint64_t seed, const std::string& out_path);
int cmd_run(const SimConfig& cfg, const std::string& algo, const std::string& out_dir);
int cmd_oracle(const std::string& which, const std::string& instance_path,
               const std::string& out_path);
int cmd_compare(const SimConfig& cfg, const std::string& out_dir);

}  // namespace dsrc

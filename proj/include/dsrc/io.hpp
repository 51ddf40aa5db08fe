#pragma once

#include <string>
#include <vector>

#include "dsrc/channel.hpp"
#include "dsrc/run_record.hpp"
#include "dsrc/scenario.hpp"

namespace dsrc {

/// Shortest text form used for all emitted numbers: printf "%.9g".
std::string fmt9(double v);
/// v rounded to its fmt9 representation.
double round9(double v);

std::string scenario_to_json_text(const Scenario& s);
Scenario scenario_from_json_text(const std::string& text);
void save_scenario(const Scenario& s, const std::string& path);
Scenario load_scenario(const std::string& path);

/// Writes trace.csv, summary.json, awareness.csv and coverage.csv (plus
/// gprime.csv for power traces) into out_dir. Output is byte-stable for
/// identical records.
void emit(const RunRecord& rec, const LinkGraph& g, const std::string& out_dir);

/// Per-pair link budget dump: i,j,d_m,alpha_dbm,beta_dbm.
void dump_links(const LinkGraph& g, const Scenario& s, const std::string& path);

struct TraceRow {
  int t = 0;
  int vehicle = 0;
  double mu = 0.0, p_dbm = 0.0, lambda = 0.0, load_frac = 0.0;
};

std::vector<TraceRow> parse_trace(const std::string& path);

}  // namespace dsrc

#include "dsrc/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dsrc/errors.hpp"
#include "dsrc/metrics.hpp"

namespace dsrc {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

double round9(double v) { return std::strtod(fmt9(v).c_str(), nullptr); }

std::string scenario_to_json_text(const Scenario& s) {
  ordered_json j;
  j["road_length"] = round9(s.road_length);
  j["lane_count"] = s.lane_count;
  j["lane_width"] = round9(s.lane_width);
  j["seed"] = s.seed;
  j["vehicles"] = ordered_json::array();
  for (const Vehicle& v : s.vehicles) {
    j["vehicles"].push_back({{"id", v.id},
                             {"lane", v.lane},
                             {"x", round9(v.x)},
                             {"y", round9(v.y)},
                             {"v", round9(v.v)}});
  }
  return j.dump(2) + "\n";
}

Scenario scenario_from_json_text(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Scenario s;
    s.road_length = j.at("road_length").get<double>();
    s.lane_count = j.at("lane_count").get<int>();
    s.lane_width = j.value("lane_width", 4.0);
    s.seed = j.value("seed", std::uint64_t{0});
    for (const auto& jv : j.at("vehicles")) {
      Vehicle v;
      v.id = jv.at("id").get<int>();
      v.lane = jv.at("lane").get<int>();
      v.x = jv.at("x").get<double>();
      v.y = jv.at("y").get<double>();
      v.v = jv.value("v", 0.0);
      s.vehicles.push_back(v);
    }
    if (s.vehicles.empty()) throw ConfigError("scenario: vehicles must be nonempty");
    if (s.road_length <= 0.0) throw ConfigError("scenario: road_length must be positive");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << scenario_to_json_text(s);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json_text(ss.str());
}

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + p.string());
  return out;
}

void write_trace(const RunRecord& rec, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "t,vehicle,mu,p_dbm,lambda,load_frac\n";
  for (const Snapshot& s : rec.snapshots) {
    for (std::size_t v = 0; v < s.mu.size(); ++v) {
      out << s.t << ',' << v << ',' << fmt9(s.mu[v]) << ',' << fmt9(s.p_dbm[v]) << ','
          << fmt9(s.lambda[v]) << ',' << fmt9(s.load[v] * rec.t_air_s) << '\n';
    }
  }
}

void write_gprime(const RunRecord& rec, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "t,vehicle,gprime\n";
  for (const Snapshot& s : rec.snapshots) {
    for (std::size_t v = 0; v < s.gprime.size(); ++v) {
      out << s.t << ',' << v << ',' << s.gprime[v] << '\n';
    }
  }
}

void write_degrees(const std::vector<int>& values, const char* name, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "vehicle," << name << '\n';
  for (std::size_t v = 0; v < values.size(); ++v) out << v << ',' << values[v] << '\n';
}

ordered_json quartile_block(double q1, double median, double q3) {
  return {{"q1", round9(q1)}, {"median", round9(median)}, {"q3", round9(q3)},
          {"iqr", round9(q3 - q1)}};
}

}  // namespace

void emit(const RunRecord& rec, const LinkGraph& g, const std::string& out_dir) {
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory: " + dir.string());

  write_trace(rec, dir / "trace.csv");
  const bool has_gprime =
      !rec.snapshots.empty() && !rec.snapshots.front().gprime.empty();
  if (has_gprime) write_gprime(rec, dir / "gprime.csv");

  AwarenessStats stats;
  if (!rec.final_p.empty()) stats = compute_awareness_coverage(g, rec.final_p);
  write_degrees(stats.awareness, "awareness", dir / "awareness.csv");
  write_degrees(stats.coverage, "coverage", dir / "coverage.csv");

  ordered_json j;
  j["algo"] = rec.algo;
  j["seed"] = rec.seed;
  j["rounds_executed"] = rec.rounds_executed;
  j["gamma_msgs"] = round9(rec.gamma_msgs);
  j["gamma_frac"] = round9(rec.gamma_msgs * rec.t_air_s);
  j["t_air_s"] = round9(rec.t_air_s);
  j["rho_final"] = round9(rec.rho.empty() ? 0.0 : rec.rho.back());
  j["rho_avg"] = round9(rec.rho_mean_final_half());
  j["max_load_frac"] = round9(rec.max_load_frac_overall());
  j["rounds_to_band"] = rec.rounds_to_band();
  double mean_frac_max = 0.0;
  for (double m : rec.mean_load_msgs) mean_frac_max = std::max(mean_frac_max, m * rec.t_air_s);
  j["mean_load_frac_max"] = round9(mean_frac_max);
  j["converged"] = rec.converged;
  if (!rec.outer.empty()) {
    j["outer"] = ordered_json::array();
    for (const OuterPoint& op : rec.outer) {
      j["outer"].push_back({{"k", round9(op.k)}, {"rho", round9(op.rho)}});
    }
  }
  if (!rec.final_p.empty()) {
    j["awareness"] = quartile_block(stats.awareness_q1, stats.awareness_median, stats.awareness_q3);
    j["coverage"] = quartile_block(stats.coverage_q1, stats.coverage_median, stats.coverage_q3);
  }
  if (!rec.config_echo.empty()) {
    j["config"] = nlohmann::ordered_json::parse(rec.config_echo, nullptr, false);
  }
  std::ofstream out = open_out(dir / "summary.json");
  out << j.dump(2) << '\n';
}

void dump_links(const LinkGraph& g, const Scenario& s, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "i,j,d_m,alpha_dbm,beta_dbm\n";
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      if (i == j) continue;
      out << i << ',' << j << ',' << fmt9(wrap_distance(s, i, j)) << ',' << fmt9(g.a(i, j))
          << ',' << fmt9(g.b(i, j)) << '\n';
    }
  }
}

std::vector<TraceRow> parse_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace: " + path);
  std::vector<TraceRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TraceRow r;
    std::stringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');
    r.t = std::stoi(field);
    std::getline(ss, field, ',');
    r.vehicle = std::stoi(field);
    std::getline(ss, field, ',');
    r.mu = std::stod(field);
    std::getline(ss, field, ',');
    r.p_dbm = std::stod(field);
    std::getline(ss, field, ',');
    r.lambda = std::stod(field);
    std::getline(ss, field, ',');
    r.load_frac = std::stod(field);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace dsrc

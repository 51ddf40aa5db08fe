#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dsrc/config.hpp"
#include "dsrc/errors.hpp"
#include "dsrc/io.hpp"
#include "dsrc/metrics.hpp"
#include "test_helpers.hpp"

using namespace dsrc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dsrc_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("awareness and coverage degrees") {
  const Scenario s = th::line({0.0, 100.0, 200.0});
  const LinkGraph g = build_link_graph(s, ChannelModel{});

  SUBCASE("floor powers give all zeros") {
    const AwarenessStats st =
        compute_awareness_coverage(g, std::vector<double>(3, g.power_floor_dbm));
    for (int v : st.awareness) CHECK(v == 0);
    for (int v : st.coverage) CHECK(v == 0);
  }
  SUBCASE("ceiling powers give the complete digraph") {
    const AwarenessStats st =
        compute_awareness_coverage(g, std::vector<double>(3, g.power_ceiling_dbm));
    for (int v : st.awareness) CHECK(v == 2);
    for (int v : st.coverage) CHECK(v == 2);
    CHECK(st.awareness_hist[2] == 3);
  }
  SUBCASE("asymmetric pair keeps the handshake identity") {
    const Scenario pair = th::line({0.0, 100.0});
    const LinkGraph g2 = build_link_graph(pair, ChannelModel{});
    const AwarenessStats st =
        compute_awareness_coverage(g2, std::vector<double>{13.0, g2.power_floor_dbm});
    CHECK(st.coverage == std::vector<int>{1, 0});
    CHECK(st.awareness == std::vector<int>{0, 1});
  }
  SUBCASE("handshake identity on random powers") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> p(3);
      for (double& v : p) v = th::uniform(rng, g.power_floor_dbm, g.power_ceiling_dbm);
      const AwarenessStats st = compute_awareness_coverage(g, p);
      CHECK(std::accumulate(st.awareness.begin(), st.awareness.end(), 0) ==
            std::accumulate(st.coverage.begin(), st.coverage.end(), 0));
    }
  }
}

TEST_CASE("quantiles interpolate linearly") {
  CHECK(quantile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
  CHECK(quantile({1, 2, 3, 4, 5}, 0.5) == doctest::Approx(3.0));
  CHECK(quantile({4, 1, 3, 2}, 0.25) == doctest::Approx(1.75));
  CHECK(quantile({7}, 0.75) == doctest::Approx(7.0));
}

TEST_CASE("reaction feasibility") {
  // 0 closes on 2 at 20 m/s over 100 m; 1 recedes.
  const Scenario s = th::line({0.0, 200.0, 100.0}, {20.0, 10.0, 0.0});

  SUBCASE("requirement ratio from the reliability targets") {
    // log(0.001) / log(0.1) = 3 message opportunities required.
    const std::vector<double> mu{2.0, 2.0, 2.0};
    const auto violations = reaction_feasibility(s, mu, 0.9, 0.999);
    for (const auto& v : violations) CHECK(v.required == doctest::Approx(3.0));
    // (100 / 20) * 2 = 10 >= 3, so the closing pair (0, 2) passes.
    for (const auto& v : violations) CHECK_FALSE((v.i == 0 && v.j == 2));
  }
  SUBCASE("slow senders get flagged") {
    const std::vector<double> mu{0.4, 0.4, 0.4};  // product 2 < 3
    const auto violations = reaction_feasibility(s, mu, 0.9, 0.999);
    bool found = false;
    for (const auto& v : violations) {
      if (v.i == 0 && v.j == 2) {
        found = true;
        CHECK(v.product == doctest::Approx(2.0));
      }
      CHECK(closing_speed(s, v.i, v.j) > 0.0);  // receding pairs never appear
    }
    CHECK(found);
  }
  SUBCASE("equal probabilities require one opportunity") {
    const Scenario t = th::line({0.0, 100.0}, {20.0, 0.0});
    auto v1 = reaction_feasibility(t, std::vector<double>{0.19, 0.19}, 0.5, 0.5);
    bool flagged = false;
    for (const auto& v : v1) flagged = flagged || (v.i == 0 && v.j == 1);
    CHECK(flagged);  // 5 * 0.19 = 0.95 < 1
    auto v2 = reaction_feasibility(t, std::vector<double>{0.21, 0.21}, 0.5, 0.5);
    for (const auto& v : v2) CHECK_FALSE((v.i == 0 && v.j == 1));
  }
  SUBCASE("probability bounds") {
    const std::vector<double> mu{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(reaction_feasibility(s, mu, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(reaction_feasibility(s, mu, 0.5, 1.0), std::domain_error);
  }
}

TEST_CASE("fairness products") {
  const Scenario s = th::line({0.0, 150.0, 300.0}, {30.0, 30.0, 0.0});
  const std::vector<std::pair<int, int>> pairs{{0, 2}, {1, 2}, {0, 1}};

  std::vector<double> mu{2.0, 4.0, 1.0};
  auto prods = fairness_ratio(s, mu, pairs);
  REQUIRE(prods.size() == 3);
  CHECK(prods[0].valid);
  CHECK(prods[0].product == doctest::Approx(300.0 / 30.0 * 2.0));
  CHECK(prods[1].product == doctest::Approx(150.0 / 30.0 * 4.0));
  CHECK_FALSE(prods[2].valid);  // same speed, no closing

  // Doubling one sender's rate doubles only its products.
  std::vector<double> mu2{4.0, 4.0, 1.0};
  auto prods2 = fairness_ratio(s, mu2, pairs);
  CHECK(prods2[0].product == doctest::Approx(2.0 * prods[0].product));
  CHECK(prods2[1].product == doctest::Approx(prods[1].product));
}

TEST_CASE("emit writes the full artifact set deterministically") {
  const Scenario s = th::line({0.0, 100.0});
  const LinkGraph g = build_link_graph(s, ChannelModel{});

  RunRecord rec;
  rec.algo = "rate";
  rec.seed = 7;
  rec.gamma_msgs = 6.0;
  rec.t_air_s = 0.5;
  rec.rounds_executed = 2;
  rec.rho = {0.25, 0.5};
  rec.max_load_frac = {1.0, 0.9};
  rec.mean_load_msgs = {1.9, 1.8};
  rec.final_mu = {1.0, 2.0};
  rec.final_p = {13.0, 13.0};
  rec.final_lambda = {0.0, 0.5};
  rec.final_load = {3.0, 3.0};
  Snapshot s0;
  s0.t = 0;
  s0.mu = {1.5};
  s0.p_dbm = {13.0};
  s0.lambda = {0.125};
  s0.load = {1.5};
  Snapshot s1 = s0;
  s1.t = 1;
  s1.mu = {1.0 / 3.0};
  rec.snapshots = {s0, s1};

  const fs::path dir = scratch_dir("emit");
  emit(rec, g, dir.string());
  CHECK(fs::exists(dir / "trace.csv"));
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "awareness.csv"));
  CHECK(fs::exists(dir / "coverage.csv"));

  const std::string first = slurp(dir / "trace.csv");
  // One vehicle, two rounds: exactly two data rows.
  CHECK(std::count(first.begin(), first.end(), '\n') == 3);

  emit(rec, g, dir.string());
  CHECK(slurp(dir / "trace.csv") == first);
  CHECK(!slurp(dir / "summary.json").empty());

  // Parsing reproduces the serialized values exactly.
  const auto rows = parse_trace((dir / "trace.csv").string());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].t == 0);
  CHECK(rows[1].mu == round9(1.0 / 3.0));
  CHECK(rows[0].load_frac == round9(1.5 * 0.5));
}

TEST_CASE("emit handles an empty record") {
  const Scenario s = th::line({0.0});
  const LinkGraph g = build_link_graph(s, ChannelModel{});
  RunRecord rec;
  rec.algo = "rate";
  const fs::path dir = scratch_dir("emit_empty");
  emit(rec, g, dir.string());
  CHECK(slurp(dir / "trace.csv") == "t,vehicle,mu,p_dbm,lambda,load_frac\n");
  CHECK(slurp(dir / "awareness.csv") == "vehicle,awareness\n");
}

TEST_CASE("config parsing") {
  const std::string text = R"({
    "seed": 11,
    "scenario": {"preset": "six-lane", "lanes": 1, "per_lane": 20, "lane_speeds": [30.0]},
    "channel": {"power_ceiling_dbm": 23.0},
    "utility": {"variant": "alpha_fair", "alpha_i": 2.0},
    "controller": {"epsilon": 0.01, "gamma_frac": 0.6, "t_air_s": 0.0005, "rounds": 100,
                   "price_set": "receive"},
    "joint": {"max_outer": 3},
    "baseline": {"r_g": 50.0},
    "output": {"trace_stride": 5}
  })";
  const SimConfig cfg = parse_config_text(text);
  CHECK(cfg.seed == 11);
  CHECK(cfg.preset.lanes == 1);
  CHECK(cfg.channel.power_ceiling_dbm == 23.0);
  CHECK(cfg.utility.variant == UtilityVariant::AlphaFair);
  CHECK(cfg.controller.epsilon == 0.01);
  CHECK(cfg.controller.price_set == PriceSet::Receive);
  CHECK(cfg.controller.gamma() == doctest::Approx(1200.0));
  CHECK(cfg.joint.max_outer == 3);
  CHECK(cfg.baseline.r_g == 50.0);
  CHECK(cfg.output.trace_stride == 5);

  const Scenario s = realize_scenario(cfg);
  CHECK(s.size() == 20);
}

TEST_CASE("config rejects malformed input") {
  CHECK_THROWS_AS(parse_config_text("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"controller": {"epsilon": 2.0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"controller": {"rounds": -5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"controler": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"utility": {"variant": "cubic"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"controller": {"price_set": "both"}})"), ConfigError);
}

TEST_CASE("config accepts an inline vehicle list") {
  const std::string text = R"({
    "scenario": {"road_length": 500.0, "lane_count": 1, "lane_width": 4.0, "seed": 0,
                  "vehicles": [{"id": 0, "lane": 0, "x": 0.0, "y": 0.0, "v": 10.0},
                               {"id": 1, "lane": 0, "x": 50.0, "y": 0.0, "v": -10.0}]}
  })";
  const SimConfig cfg = parse_config_text(text);
  const Scenario s = realize_scenario(cfg);
  REQUIRE(s.size() == 2);
  CHECK(s.road_length == 500.0);
  CHECK(s.vehicles[1].v == -10.0);
}

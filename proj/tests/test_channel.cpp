#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "dsrc/channel.hpp"
#include "test_helpers.hpp"

using namespace dsrc;

TEST_CASE("log-distance path loss") {
  ChannelModel m;
  CHECK(path_loss_db(m, 1.0) == 47.9);
  CHECK(path_loss_db(m, 100.0) == doctest::Approx(87.9).epsilon(1e-12));
  CHECK(path_loss_db(m, 100.0) - path_loss_db(m, 10.0) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(path_loss_db(m, 0.5) == path_loss_db(m, 1.0));  // sub-meter clamp
  CHECK_THROWS_AS(path_loss_db(m, 0.0), std::domain_error);
  CHECK_THROWS_AS(path_loss_db(m, -3.0), std::domain_error);
}

TEST_CASE("link graph thresholds") {
  const Scenario s = th::line({0.0, 100.0});
  ChannelModel m;
  const LinkGraph g = build_link_graph(s, m);
  CHECK(g.a(0, 1) == doctest::Approx(1.9).epsilon(1e-9));
  CHECK(g.b(0, 1) == doctest::Approx(11.9).epsilon(1e-9));
  CHECK(std::isinf(g.a(0, 0)));
  CHECK(g.b(0, 0) == m.power_floor_dbm);
  CHECK(g.b(1, 1) == m.power_floor_dbm);
}

TEST_CASE("equal distances share thresholds and ordering holds") {
  // 1 and 2 are both 100 m from 0 (one across the wrap seam).
  const Scenario s = th::line({0.0, 100.0, 1900.0, 130.0});
  const LinkGraph g = build_link_graph(s, ChannelModel{});
  CHECK(g.a(0, 1) == g.a(0, 2));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      CHECK(g.a(i, j) <= g.b(i, j));
      for (int k = 0; k < 4; ++k) {
        if (k == i || k == j) continue;
        if (wrap_distance(s, i, j) <= wrap_distance(s, i, k)) CHECK(g.a(i, j) <= g.a(i, k));
      }
    }
  }
}

TEST_CASE("receive and sense sets") {
  const Scenario s = th::line({0.0, 100.0, 200.0});
  const LinkGraph g = build_link_graph(s, ChannelModel{});

  SUBCASE("silent power keeps only the self-sense") {
    const std::vector<double> p(3, g.power_floor_dbm);
    CHECK(receive_set(g, p, 0).empty());
    CHECK(sense_set(g, p, 0) == std::vector<int>{0});
  }
  SUBCASE("saturation senses everyone") {
    const std::vector<double> p(3, g.power_ceiling_dbm);
    CHECK(sense_set(g, p, 0) == std::vector<int>{0, 1, 2});
    CHECK(receive_set(g, p, 0) == std::vector<int>{1, 2});
  }
  SUBCASE("threshold equality is inclusive") {
    std::vector<double> p(3, g.power_floor_dbm);
    p[0] = g.a(0, 1);
    CHECK(receive_set(g, p, 0) == std::vector<int>{1});
  }
  SUBCASE("receive contains sense minus self") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> p(3);
      for (double& v : p) v = th::uniform(rng, g.power_floor_dbm, g.power_ceiling_dbm);
      for (int i = 0; i < 3; ++i) {
        const auto rs = receive_set(g, p, i);
        for (int j : sense_set(g, p, i)) {
          if (j != i) CHECK(std::find(rs.begin(), rs.end(), j) != rs.end());
        }
      }
    }
  }
  SUBCASE("raising power never shrinks a set") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> p(3);
      for (double& v : p) v = th::uniform(rng, g.power_floor_dbm, g.power_ceiling_dbm);
      std::vector<double> q = p;
      const int i = static_cast<int>(rng() % 3);
      q[i] = std::min(q[i] + th::uniform(rng, 0.0, 20.0), g.power_ceiling_dbm);
      for (int v = 0; v < 3; ++v) {
        const auto before = sense_set(g, p, v), after = sense_set(g, q, v);
        for (int j : before) CHECK(std::find(after.begin(), after.end(), j) != after.end());
        const auto rb = receive_set(g, p, v), ra = receive_set(g, q, v);
        for (int j : rb) CHECK(std::find(ra.begin(), ra.end(), j) != ra.end());
      }
    }
  }
}

TEST_CASE("channel load") {
  SUBCASE("single vehicle carries its own load") {
    const Scenario s = th::line({0.0});
    const LinkGraph g = build_link_graph(s, ChannelModel{});
    const std::vector<double> mu{3.5}, p{10.0};
    CHECK(channel_load(g, mu, p, 0) == doctest::Approx(3.5));
  }
  SUBCASE("mutually sensing pair sums") {
    const Scenario s = th::line({0.0, 50.0});
    const LinkGraph g = build_link_graph(s, ChannelModel{});
    const std::vector<double> mu{3.0, 4.0}, p{20.0, 20.0};
    CHECK(channel_load(g, mu, p, 0) == doctest::Approx(7.0));
    CHECK(channel_load(g, mu, p, 1) == doctest::Approx(7.0));
  }
  SUBCASE("disjoint collision domains are independent") {
    const Scenario s = th::line({0.0, 50.0, 1000.0});
    const LinkGraph g = build_link_graph(s, ChannelModel{});
    std::vector<double> mu{3.0, 4.0, 1.0};
    const std::vector<double> p{13.0, 13.0, 13.0};  // sense radius ~113 m
    const double before = channel_load(g, mu, p, 0);
    mu[2] = 9.0;
    CHECK(channel_load(g, mu, p, 0) == doctest::Approx(before));
  }
  SUBCASE("sense-set route matches the direct matrix route") {
    const Scenario s = th::line({0.0, 80.0, 160.0, 900.0});
    const LinkGraph g = build_link_graph(s, ChannelModel{});
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> mu(4), p(4);
      for (double& v : mu) v = th::uniform(rng, 0.1, 10.0);
      for (double& v : p) v = th::uniform(rng, g.power_floor_dbm, g.power_ceiling_dbm);
      std::vector<double> via_sets(4, 0.0);
      for (int i = 0; i < 4; ++i) {
        for (int j : sense_set(g, p, i)) via_sets[j] += mu[i];
      }
      const std::vector<double> direct = all_channel_loads(g, mu, p);
      for (int j = 0; j < 4; ++j) {
        CHECK(via_sets[j] == doctest::Approx(channel_load(g, mu, p, j)).epsilon(1e-12));
        CHECK(via_sets[j] == doctest::Approx(direct[j]).epsilon(1e-12));
      }
    }
  }
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "dsrc/errors.hpp"
#include "dsrc/rate_control.hpp"
#include "test_helpers.hpp"

using namespace dsrc;

namespace {

// Two mutually sensing/decoding vehicles with unit pair weights.
struct TwoVehicle {
  Scenario s = th::line({0.0, 100.0}, {50.0, -50.0});
  LinkGraph g = build_link_graph(s, ChannelModel{});
  Utility u{UtilityConfig{}, s};
  std::vector<double> p{13.0, 13.0};
};

}  // namespace

TEST_CASE("price update") {
  CHECK(price_update(0.5, 5.5, 6.0) == 0.0);
  CHECK(price_update(0.0, 8.0, 6.0) == doctest::Approx(2.0));
  CHECK(price_update(1.25, 6.0, 6.0) == doctest::Approx(1.25));  // fixed point at load == gamma
  CHECK(price_update(0.0, 0.0, 6.0) == 0.0);
}

TEST_CASE("rate update") {
  const Scenario s = th::line({0.0, 100.0}, {100.0, -100.0});  // weight 2 on (0,1)
  const Utility u(UtilityConfig{}, s);
  const std::vector<int> receivers{1};

  CHECK(rate_update(0, 4.0, u, receivers, 0.1, 0.1, 10.0) == doctest::Approx(5.0));
  CHECK(rate_update(0, 0.0, u, receivers, 0.1, 0.1, 10.0) == doctest::Approx(10.0));
  CHECK(rate_update(0, 400.0, u, receivers, 0.1, 0.1, 10.0) == doctest::Approx(0.1));
  CHECK(rate_update(0, 4.0, u, {}, 0.1, 0.1, 10.0) == doctest::Approx(0.1));
  CHECK_THROWS_AS(rate_update(0, -1.0, u, receivers, 0.1, 0.1, 10.0), std::domain_error);

  // Non-log family goes through the bisection path; alpha = 2 has the closed
  // form mu = sqrt(C / (eps * price)).
  UtilityConfig af;
  af.variant = UtilityVariant::AlphaFair;
  af.alpha_i = 2.0;
  const Utility u2(af, s);
  const double expect = std::sqrt(1.0 / 0.4);
  CHECK(rate_update(0, 4.0, u2, receivers, 0.1, 0.1, 10.0) ==
        doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("symmetric pair: time averages reach the shared optimum") {
  TwoVehicle tv;
  ControllerState st = make_state(2, 0.05, 6.0, 0.1, tv.p);
  RunOptions opts;
  opts.trace_stride = 0;
  bool lambda_nonneg = true;
  double mu_sum[2] = {0.0, 0.0};
  double load_sum = 0.0;
  long counted = 0;
  const int rounds = 20000;
  opts.observer = [&](int t, const ControllerState& state, std::span<const double> loads) {
    for (double l : state.lambda) lambda_nonneg = lambda_nonneg && l >= 0.0;
    if (t > rounds / 2) {
      mu_sum[0] += state.mu[0];
      mu_sum[1] += state.mu[1];
      load_sum += loads[0];
      ++counted;
    }
  };
  const RunRecord rec = run_rate_control(st, tv.g, tv.u, rounds, PriceSet::Sense, opts);
  CHECK(rec.rounds_executed == rounds);
  CHECK(lambda_nonneg);
  CHECK(mu_sum[0] / counted == doctest::Approx(3.0).epsilon(0.03));
  CHECK(mu_sum[1] / counted == doctest::Approx(3.0).epsilon(0.03));
  CHECK(load_sum / counted <= 6.0 * 1.02);
  CHECK(load_sum / counted >= 6.0 * 0.95);
}

TEST_CASE("suboptimality gap shrinks with the tuning parameter") {
  TwoVehicle tv;
  const double rho_star = 2.0 * std::log(3.0);  // symmetric optimum (3, 3)
  double gap[3];
  const double eps[3] = {0.1, 0.05, 0.01};
  for (int k = 0; k < 3; ++k) {
    ControllerState st = make_state(2, eps[k], 6.0, 0.1, tv.p);
    RunOptions opts;
    opts.trace_stride = 0;
    const RunRecord rec = run_rate_control(st, tv.g, tv.u, 20000, PriceSet::Sense, opts);
    gap[k] = rho_star - rec.rho_mean_final_half();
  }
  CHECK(gap[0] >= gap[1] - 1e-3);
  CHECK(gap[1] >= gap[2] - 1e-3);
  CHECK(gap[2] >= -1e-6);
}

TEST_CASE("no receivers pins the rate at the floor") {
  const Scenario s = th::line({0.0});
  const LinkGraph g = build_link_graph(s, ChannelModel{});
  const Utility u(UtilityConfig{}, s);
  ControllerState st = make_state(1, 0.05, 6.0, 0.1, std::vector<double>{13.0});
  const RunRecord rec = run_rate_control(st, g, u, 50);
  for (const Snapshot& snap : rec.snapshots) {
    CHECK(snap.mu[0] == 0.1);
    CHECK(snap.lambda[0] == 0.0);
  }
}

TEST_CASE("runs are deterministic") {
  TwoVehicle tv;
  ControllerState st = make_state(2, 0.05, 6.0, 0.1, tv.p);
  const RunRecord a = run_rate_control(st, tv.g, tv.u, 500);
  const RunRecord b = run_rate_control(st, tv.g, tv.u, 500);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    CHECK(a.snapshots[k].mu == b.snapshots[k].mu);
    CHECK(a.snapshots[k].lambda == b.snapshots[k].lambda);
  }
}

TEST_CASE("price set variants both run and stay nonnegative") {
  TwoVehicle tv;
  ControllerState st = make_state(2, 0.05, 6.0, 0.1, tv.p);
  for (PriceSet ps : {PriceSet::Sense, PriceSet::Receive}) {
    const RunRecord rec = run_rate_control(st, tv.g, tv.u, 1000, ps);
    for (const Snapshot& snap : rec.snapshots) {
      for (double l : snap.lambda) CHECK(l >= 0.0);
    }
  }
}

TEST_CASE("quiet channels relax prices to zero") {
  TwoVehicle tv;
  // Huge target: loads can never reach it, so prices stay at zero and the
  // rates pin at the cap.
  ControllerState st = make_state(2, 0.05, 1000.0, 0.1, tv.p);
  const RunRecord rec = run_rate_control(st, tv.g, tv.u, 100);
  CHECK(rec.final_lambda == std::vector<double>{0.0, 0.0});
  CHECK(rec.final_mu == std::vector<double>{10.0, 10.0});
}

TEST_CASE("invalid round count is a configuration error") {
  TwoVehicle tv;
  ControllerState st = make_state(2, 0.05, 6.0, 0.1, tv.p);
  CHECK_THROWS_AS(run_rate_control(st, tv.g, tv.u, 0), ConfigError);
}

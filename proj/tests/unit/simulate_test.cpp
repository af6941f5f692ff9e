#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pinctl/error.hpp"
#include "pinctl/simulate.hpp"
#include "pinctl/spectral.hpp"

using namespace pinctl;

namespace {

Trace synthetic(double amplitude, double rate, std::size_t samples, double t_end) {
  Trace tr;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
    tr.times.push_back(t);
    tr.norms.push_back(amplitude * std::exp(-rate * t));
    tr.errors.push_back({tr.norms.back()});
  }
  return tr;
}

// Exact e(t_end) = exp(-(k L + g Z) t_end) e0.
std::vector<double> exact_terminal(const Graph& g, const SimConfig& cfg) {
  const Matrix a = pinned_matrix(g, PinningPlan::uniform(g.size(), cfg.pins, cfg.g), cfg.k);
  return pinctl::testing::expm(a * -cfg.t_end).apply(cfg.e0);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("single pinned node decays at the pinning gain") {
  SimConfig cfg;
  cfg.pins = {0};
  cfg.e0 = {10.0};
  cfg.t_end = 0.05;
  const Trace tr = simulate_secondary(Graph(1, {}), cfg);
  CHECK(tr.times.size() == 501);
  CHECK(tr.times.back() == doctest::Approx(0.05));
  const double expected = 10.0 * std::exp(-5.0);
  CHECK(std::abs(tr.errors.back()[0] - expected) / expected <= 1e-6);
  CHECK(std::abs(expected - 0.0674) < 1e-4);
}

TEST_CASE("two-node path decays at k lambda_min(L + (g/k) Z)") {
  SimConfig cfg;
  cfg.pins = {0};
  cfg.e0 = {-10.0, -9.0};
  const Graph p2 = pinctl::testing::path_graph(2);
  const Trace tr = simulate_secondary(p2, cfg);
  const double closed = 10.0 * (12.0 - std::sqrt(104.0)) / 2.0;
  CHECK(std::abs(closed - 9.009804864072155) <= 1e-12);
  CHECK(predicted_rate(p2, cfg) == doctest::Approx(closed).epsilon(1e-12));
  CHECK(std::abs(tr.rate - closed) / closed <= 0.02);
  CHECK(std::abs(estimate_rate(tr) - closed) / closed <= 0.02);
}

TEST_CASE("RK4 tracks the matrix exponential with fourth-order error") {
  const Graph g = pinctl::testing::path_graph(4);
  SimConfig cfg;
  cfg.k = 1.0;
  cfg.g = 2.0;
  cfg.pins = {0};
  cfg.e0 = {1.0, -2.0, 0.5, 3.0};
  cfg.t_end = 1.0;
  const auto exact = exact_terminal(g, cfg);

  cfg.dt = 0.02;
  const double coarse = max_abs_diff(simulate_secondary(g, cfg).errors.back(), exact);
  cfg.dt = 0.01;
  const double fine = max_abs_diff(simulate_secondary(g, cfg).errors.back(), exact);
  const double ratio = coarse / fine;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
  CHECK(fine < 1e-7);
}

TEST_CASE("simulation is linear in the initial error") {
  std::mt19937_64 rng(79);
  const Graph g = pinctl::testing::random_connected_graph(6, 0.5, rng);
  SimConfig cfg;
  cfg.pins = {1, 4};
  cfg.t_end = 0.2;
  const auto a = default_initial_error(6, 1);
  const auto b = default_initial_error(6, 2);
  std::vector<double> sum(6);
  for (std::size_t i = 0; i < 6; ++i) sum[i] = a[i] + b[i];

  cfg.e0 = a;
  const Trace ta = simulate_secondary(g, cfg);
  cfg.e0 = b;
  const Trace tb = simulate_secondary(g, cfg);
  cfg.e0 = sum;
  const Trace ts = simulate_secondary(g, cfg);
  for (std::size_t s = 0; s < ts.times.size(); s += 97)
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(ts.errors[s][i] - ta.errors[s][i] - tb.errors[s][i]) <= 1e-9);
}

TEST_CASE("measured rate grows along nested pin sets") {
  std::mt19937_64 rng(83);
  const Graph g = pinctl::testing::random_connected_graph(7, 0.5, rng);
  SimConfig cfg;
  cfg.t_end = 2.0;
  cfg.dt = 5e-4;
  cfg.e0 = default_initial_error(7, 0);
  double prev = 0.0;
  for (NodeId p : {3u, 0u, 6u}) {
    cfg.pins.push_back(p);
    std::sort(cfg.pins.begin(), cfg.pins.end());
    const Trace tr = simulate_secondary(g, cfg);
    CHECK(tr.rate >= prev * 0.98);
    CHECK(std::abs(tr.rate - predicted_rate(g, cfg)) / predicted_rate(g, cfg) <= 0.02);
    prev = tr.rate;
  }
}

TEST_CASE("step-size guard") {
  SimConfig cfg;
  cfg.pins = {0};
  cfg.e0 = {1.0, 1.0};
  cfg.dt = 0.03;  // lambda_max(10 L + 100 Z) is about 110.9
  try {
    simulate_secondary(pinctl::testing::path_graph(2), cfg);
    FAIL("accepted unstable step");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepTooLarge);
    CHECK(std::string(e.what()).find("use dt <=") != std::string::npos);
  }
}

TEST_CASE("configuration validation") {
  const Graph p2 = pinctl::testing::path_graph(2);
  SimConfig cfg;
  cfg.e0 = {1.0};
  CHECK_THROWS_AS(simulate_secondary(p2, cfg), Error);
  cfg.e0 = {1.0, 1.0};
  cfg.k = 0.0;
  CHECK_THROWS_AS(simulate_secondary(p2, cfg), Error);
  cfg.k = 10.0;
  cfg.t_end = cfg.dt;
  CHECK_THROWS_AS(simulate_secondary(p2, cfg), Error);
}

TEST_CASE("default initial error is seeded and bounded") {
  const auto a = default_initial_error(50, 7);
  CHECK(a == default_initial_error(50, 7));
  CHECK(a != default_initial_error(50, 8));
  for (double v : a) {
    CHECK(v >= -12.0);
    CHECK(v <= -8.0);
  }
}

TEST_CASE("estimate_rate on synthetic traces") {
  CHECK(std::abs(estimate_rate(synthetic(5.0, 2.2, 1001, 4.0)) - 2.2) <= 1e-9);
  CHECK(std::abs(estimate_rate(synthetic(5.0, 0.0, 1001, 4.0))) <= 1e-12);
  CHECK_THROWS_AS(estimate_rate(synthetic(5.0, 1.0, 12, 1.0)), Error);
  CHECK_THROWS_AS(estimate_rate(synthetic(0.0, 1.0, 1000, 1.0)), Error);
  CHECK_THROWS_AS(estimate_rate(synthetic(1.0, 1.0, 100, 1.0), 1.0), Error);
}

TEST_CASE("relay window") {
  SimConfig cfg;
  cfg.e0 = default_initial_error(14, 0);
  cfg.t_end = 1.0;
  const Graph g = pinctl::testing::microgrid14();

  SUBCASE("no pins: the offset persists but stays inside the band") {
    const Trace tr = simulate_secondary(g, cfg);
    const RelayCheck rc = relay_check(tr, 380.0);
    CHECK_FALSE(rc.trip);
    CHECK(rc.settle_time == 0.0);
    CHECK(std::abs(tr.rate) < 0.05);
  }
  SUBCASE("a deep sag settles once pinned") {
    for (double& v : cfg.e0) v -= 40.0;  // about -13% of 380 V
    cfg.pins = {1, 13};
    const Trace tr = simulate_secondary(g, cfg);
    const RelayCheck rc = relay_check(tr, 380.0);
    CHECK(rc.settle_time > 0.0);
    CHECK(rc.trip == (rc.settle_time > 0.30));
  }
  SUBCASE("a deep sag without pins never settles") {
    for (double& v : cfg.e0) v -= 40.0;
    const RelayCheck rc = relay_check(simulate_secondary(g, cfg), 380.0);
    CHECK(rc.trip);
    CHECK(std::isinf(rc.settle_time));
  }
}

TEST_CASE("trace CSV layout") {
  Trace tr;
  tr.times = {0.0, 0.5};
  tr.errors = {{1.0, -2.0}, {1.0 / 3.0, 0.25}};
  tr.norms = {std::sqrt(5.0), 0.5};
  std::ostringstream out;
  write_trace_csv(out, tr);
  CHECK(out.str() == "t,e_1,e_2,norm\n0,1,-2,2.2360679775\n0.5,0.333333333333,0.25,0.5\n");
}

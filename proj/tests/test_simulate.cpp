#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kmrep/analysis.hpp"
#include "kmrep/km.hpp"
#include "kmrep/simulate.hpp"

using namespace kmrep;

TEST_CASE("identical configs give bit-identical reports") {
  const auto fam = make_ehrenfest(2);
  SimConfig config;
  config.seed = 12345;
  config.n_trajectories = 2000;
  config.horizon = 64;
  config.start_state = 1;
  const auto a = run_simulation(fam.chain, config, {2, 5});
  const auto b = run_simulation(fam.chain, config, {2, 5});
  REQUIRE(a.checkpoints.size() == b.checkpoints.size());
  for (size_t k = 0; k < a.checkpoints.size(); ++k)
    CHECK(a.checkpoints[k].counts == b.checkpoints[k].counts);
  CHECK(a.mean_return_time == b.mean_return_time);
  CHECK(a.return_time_std_error == b.return_time_std_error);
  CHECK(a.rng_id == "splitmix64-streams-v1");

  const auto c = run_simulation(fam.chain, SimConfig{999, 2000, 64, 1}, {2, 5});
  CHECK(c.checkpoints[0].counts != a.checkpoints[0].counts);  // seed matters
}

TEST_CASE("horizon 0 keeps all mass at the start state") {
  const auto fam = make_ehrenfest(1);
  const auto report = run_simulation(fam.chain, SimConfig{7, 500, 0, 1}, {0});
  CHECK(report.checkpoints[0].counts[1] == 500);
  CHECK(report.returned_trajectories == 0);
  CHECK(report.censored_trajectories == 500);
}

TEST_CASE("histogram counts always resum to the trajectory count") {
  const auto fam = make_bernoulli_laplace(2, 2);
  const auto report = run_simulation(fam.chain, SimConfig{3, 1234, 16, 0}, {1, 2, 16});
  for (const auto& h : report.checkpoints) {
    std::int64_t total = 0;
    double freq_total = 0.0;
    for (size_t k = 0; k < h.counts.size(); ++k) {
      total += h.counts[k];
      freq_total += h.frequencies[k];
    }
    CHECK(total == 1234);
    CHECK(std::fabs(freq_total - 1.0) <= 1e-12);
  }
}

TEST_CASE("ehrenfest 2N = 2: frequencies and return times near the exact values") {
  const auto fam = make_ehrenfest(1);
  const auto sys = make_km_system(fam);
  SimConfig config;
  config.seed = 20240817;
  config.n_trajectories = 200000;
  config.horizon = 512;
  config.start_state = 0;
  const auto report = run_simulation(fam.chain, config, {2});

  const double p2 = km_entry(sys, 2, 0, 0);  // = 0.5
  const double sigma = std::sqrt(p2 * (1.0 - p2) / config.n_trajectories);
  CHECK(std::fabs(report.checkpoints[0].frequencies[0] - p2) <= 4.0 * sigma);

  CHECK(report.censored_trajectories == 0);
  const double expected = expected_return_time(sys, 0);  // = 4
  CHECK(std::fabs(report.mean_return_time - expected) <= 4.0 * report.return_time_std_error);
}

TEST_CASE("checkpoint frequencies match one-step probabilities for a block chain") {
  const auto fam = make_jacobi_block(1.0, 2.0);
  REQUIRE(fam.chain.stochastic());
  SimConfig config;
  config.seed = 5150;
  config.n_trajectories = 100000;
  config.horizon = 4;
  config.start_state = 0;
  const auto report = run_simulation(fam.chain, config, {1});
  for (std::int64_t s = 0; s < 4; ++s) {
    const double expected = truncated_power(fam.chain, 1, 0, s);
    const double sigma =
        std::sqrt(std::max(expected * (1.0 - expected), 1e-12) / config.n_trajectories);
    CHECK(std::fabs(report.checkpoints[0].frequencies[static_cast<size_t>(s)] - expected) <=
          4.0 * sigma);
  }
}

TEST_CASE("null-recurrent walk: many returns, some censored, no contradiction") {
  const auto fam = make_chebyshev_walk(0.5);
  const auto sys = make_km_system(fam);
  CHECK(return_probability(sys, 0) == 1.0);  // analytic classification

  SimConfig config;
  config.seed = 42;
  config.n_trajectories = 2000;
  config.horizon = 10000;
  config.start_state = 0;
  const auto report = run_simulation(fam.chain, config, {});
  const double returned_fraction =
      static_cast<double>(report.returned_trajectories) / config.n_trajectories;
  CHECK(returned_fraction > 0.9);       // approaches recurrence
  CHECK(report.censored_trajectories > 0);  // but cannot certify it
}

TEST_CASE("simulation refuses non-stochastic chains and bad configs") {
  const auto block = make_chebyshev_block();
  CHECK_THROWS_WITH_AS(run_simulation(block.chain, SimConfig{1, 10, 4, 0}, {1}),
                       doctest::Contains("stochastic"), std::invalid_argument);

  const auto fam = make_ehrenfest(1);
  CHECK_THROWS_AS(run_simulation(fam.chain, SimConfig{1, 10, 4, 0}, {9}),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_simulation(fam.chain, SimConfig{1, 0, 4, 0}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_simulation(fam.chain, SimConfig{1, 10, 4, 7}, {}),
                  std::invalid_argument);

  // absorbing deficit at state 0 is refused as non-stochastic
  const auto absorbing =
      TridiagonalChain::from_vectors({0.5, 0.0}, {0.0, 1.0}, {0.2, 0.0});
  CHECK_THROWS_WITH_AS(run_simulation(absorbing, SimConfig{1, 10, 4, 0}, {}),
                       doctest::Contains("stochastic"), std::invalid_argument);
}

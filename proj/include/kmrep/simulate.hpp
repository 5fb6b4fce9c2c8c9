#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kmrep/chain.hpp"

namespace kmrep {

struct SimConfig {
  std::uint64_t seed = 0;
  std::int64_t n_trajectories = 1;
  std::int64_t horizon = 0;
  std::int64_t start_state = 0;
};

struct CheckpointHistogram {
  std::int64_t n = 0;
  std::vector<std::int64_t> counts;   // counts sum to n_trajectories exactly
  std::vector<double> frequencies;    // counts / n_trajectories
};

struct SimReport {
  std::string rng_id;  // fixed algorithm identifier, see simulate.cpp
  SimConfig config;
  std::vector<CheckpointHistogram> checkpoints;

  std::int64_t returned_trajectories = 0;
  std::int64_t censored_trajectories = 0;  // no return within the horizon
  double mean_return_time = 0.0;           // over returned trajectories only
  double return_time_std_error = 0.0;
};

/// Simulates n_trajectories independent walks from the start state,
/// recording the state at each requested checkpoint step and the first
/// return time to the start state (censored at the horizon; censored
/// trajectories are counted separately, never folded into the mean).
///
/// Sampling is inverse-CDF over each row's nonzero entries in ascending
/// column order, driven by a counter-style splitmix64 stream seeded per
/// trajectory, so the result is independent of execution order and
/// bit-identical for a fixed config. Refuses non-stochastic chains.
SimReport run_simulation(const TridiagonalChain& chain, const SimConfig& config,
                         const std::vector<std::int64_t>& checkpoints);

SimReport run_simulation(const BlockChain& chain, const SimConfig& config,
                         const std::vector<std::int64_t>& checkpoints);

}  // namespace kmrep

#include "kmrep/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace kmrep {

namespace {

constexpr const char* kRngId = "splitmix64-streams-v1";
constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// splitmix64 stream (Steele, Lea, Flood 2014). Each trajectory runs its own
// stream whose initial state hashes (seed, trajectory index); a plain Weyl
// offset per trajectory would make neighbouring trajectories shifted copies
// of one another.
std::uint64_t trajectory_stream(std::uint64_t seed, std::int64_t trajectory) {
  return mix64(seed + mix64(static_cast<std::uint64_t>(trajectory) + kWeyl));
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += kWeyl;
  return mix64(state);
}

double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

struct RowEntry {
  std::int64_t next_state;
  double prob;
};

// Shared walker over a row-provider; rows are (column, probability) pairs in
// ascending column order with sums validated to 1.
template <class RowProvider>
SimReport simulate_impl(const RowProvider& row_of, const SimConfig& config,
                        std::vector<std::int64_t> checkpoints, std::int64_t state_bound) {
  if (config.n_trajectories < 1)
    throw std::invalid_argument("simulate: n_trajectories must be >= 1");
  if (config.horizon < 0) throw std::invalid_argument("simulate: horizon must be >= 0");
  if (config.start_state < 0 || config.start_state >= state_bound)
    throw std::invalid_argument("simulate: start state out of range");
  std::sort(checkpoints.begin(), checkpoints.end());
  for (std::int64_t n : checkpoints)
    if (n < 0 || n > config.horizon)
      throw std::invalid_argument("simulate: checkpoints must lie in [0, horizon]");

  SimReport report;
  report.rng_id = kRngId;
  report.config = config;
  for (std::int64_t n : checkpoints) {
    CheckpointHistogram h;
    h.n = n;
    h.counts.assign(static_cast<size_t>(state_bound), 0);
    report.checkpoints.push_back(std::move(h));
  }

  const std::int64_t max_checkpoint = checkpoints.empty() ? 0 : checkpoints.back();
  double sum_t = 0.0, sum_t2 = 0.0;

  for (std::int64_t traj = 0; traj < config.n_trajectories; ++traj) {
    std::uint64_t rng = trajectory_stream(config.seed, traj);
    std::int64_t state = config.start_state;
    std::int64_t return_time = -1;
    size_t next_checkpoint = 0;
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == 0) {
      ++report.checkpoints[next_checkpoint].counts[static_cast<size_t>(state)];
      ++next_checkpoint;
    }
    for (std::int64_t t = 1; t <= config.horizon; ++t) {
      const std::vector<RowEntry>& row = row_of(state);
      const double u = uniform01(rng);
      double cum = 0.0;
      std::int64_t chosen = row.back().next_state;
      for (const RowEntry& e : row) {
        cum += e.prob;
        if (u < cum) {
          chosen = e.next_state;
          break;
        }
      }
      state = chosen;
      while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == t) {
        ++report.checkpoints[next_checkpoint].counts[static_cast<size_t>(state)];
        ++next_checkpoint;
      }
      if (return_time < 0 && state == config.start_state) {
        return_time = t;
        if (t >= max_checkpoint) break;
      }
    }
    if (return_time >= 0) {
      ++report.returned_trajectories;
      sum_t += static_cast<double>(return_time);
      sum_t2 += static_cast<double>(return_time) * static_cast<double>(return_time);
    } else {
      ++report.censored_trajectories;
    }
  }

  if (report.returned_trajectories > 0) {
    const double n = static_cast<double>(report.returned_trajectories);
    report.mean_return_time = sum_t / n;
    if (report.returned_trajectories > 1) {
      const double var = std::max(0.0, (sum_t2 - sum_t * sum_t / n) / (n - 1.0));
      report.return_time_std_error = std::sqrt(var / n);
    }
  }
  for (CheckpointHistogram& h : report.checkpoints) {
    h.frequencies.resize(h.counts.size());
    for (size_t k = 0; k < h.counts.size(); ++k)
      h.frequencies[k] =
          static_cast<double>(h.counts[k]) / static_cast<double>(config.n_trajectories);
  }
  return report;
}

}  // namespace

SimReport run_simulation(const TridiagonalChain& chain, const SimConfig& config,
                         const std::vector<std::int64_t>& checkpoints) {
  // deficit at state 0 would be silent absorption; refuse
  if (chain.p(0) + chain.r(0) < 1.0 - 1e-12)
    throw std::invalid_argument("simulate: chain is not stochastic (p_0 + r_0 < 1)");

  std::int64_t bound = config.start_state + config.horizon + 2;
  if (chain.finite()) bound = std::min(bound, *chain.states());

  auto rows = std::make_shared<std::map<std::int64_t, std::vector<RowEntry>>>();
  auto row_of = [&chain, rows, bound](std::int64_t state) -> const std::vector<RowEntry>& {
    auto it = rows->find(state);
    if (it != rows->end()) return it->second;
    std::vector<RowEntry> row;
    if (state > 0) row.push_back({state - 1, chain.q(state)});
    if (chain.r(state) > 0.0) row.push_back({state, chain.r(state)});
    const bool last = chain.finite() && state == *chain.states() - 1;
    if (!last && state + 1 < bound) row.push_back({state + 1, chain.p(state)});
    return rows->emplace(state, std::move(row)).first->second;
  };
  return simulate_impl(row_of, config, checkpoints, bound);
}

SimReport run_simulation(const BlockChain& chain, const SimConfig& config,
                         const std::vector<std::int64_t>& checkpoints) {
  if (!chain.stochastic())
    throw std::invalid_argument("simulate: block chain is not flagged stochastic");

  const int d = chain.block_dim();
  std::int64_t block_bound = config.start_state / d + config.horizon + 2;
  if (chain.finite()) block_bound = std::min(block_bound, *chain.block_count());
  const std::int64_t bound = block_bound * d;

  auto rows = std::make_shared<std::map<std::int64_t, std::vector<RowEntry>>>();
  auto row_of = [&chain, rows, d, block_bound](std::int64_t state) -> const std::vector<RowEntry>& {
    auto it = rows->find(state);
    if (it != rows->end()) return it->second;
    const std::int64_t blk = state / d;
    const int off = static_cast<int>(state % d);
    std::vector<RowEntry> row;
    auto push_block = [&](std::int64_t col_block, const DenseMatrix& m) {
      for (int c = 0; c < d; ++c) {
        const double v = m(off, c);
        if (v > 0.0) row.push_back({col_block * d + c, v});
      }
    };
    if (blk > 0) push_block(blk - 1, chain.A(blk));
    push_block(blk, chain.B(blk));
    const bool last = chain.finite() && blk == *chain.block_count() - 1;
    if (!last && blk + 1 < block_bound) push_block(blk + 1, chain.C(blk));
    return rows->emplace(state, std::move(row)).first->second;
  };
  return simulate_impl(row_of, config, checkpoints, bound);
}

}  // namespace kmrep

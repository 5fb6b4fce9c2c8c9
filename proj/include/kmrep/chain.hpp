#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kmrep/matrix.hpp"

namespace kmrep {

/// One-step transition matrix of a birth-death chain:
///
///   row j = (q_j, r_j, p_j) on columns j-1, j, j+1.
///
/// Coefficients are indexed by state, with the boundary conventions q_0 = 0
/// and, for finite chains of n states, p_{n-1} = 0. Semi-infinite chains are
/// backed by generator callbacks and materialized on demand.
///
/// Invariants (checked on construction for stored coefficients, on first
/// access for generated ones):
///   - p_j > 0 below the last state and q_j > 0 above the first (irreducible
///     path),
///   - p_j + r_j + q_j = 1 within 1e-12 for j >= 1, and p_0 + r_0 <= 1 + 1e-12
///     (a deficit at state 0 is an absorption probability).
class TridiagonalChain {
 public:
  using Coeff = std::function<double(std::int64_t)>;

  /// Finite chain from equally sized coefficient vectors (q[0] and p[n-1]
  /// must be 0; n = r.size() states).
  static TridiagonalChain from_vectors(std::vector<double> p, std::vector<double> q,
                                       std::vector<double> r);

  /// Chain from generator callbacks; `states` empty means semi-infinite.
  static TridiagonalChain from_generators(Coeff p, Coeff q, Coeff r,
                                          std::optional<std::int64_t> states = std::nullopt);

  double p(std::int64_t j) const;
  double q(std::int64_t j) const;
  double r(std::int64_t j) const;

  std::optional<std::int64_t> states() const { return states_; }
  bool finite() const { return states_.has_value(); }

  /// Default-constructed chains have no coefficients; use the factories.
  TridiagonalChain() = default;

 private:
  void validate_state(std::int64_t j) const;

  Coeff p_, q_, r_;
  std::optional<std::int64_t> states_;
};

/// Block tridiagonal one-step matrix with d x d blocks:
///
///   block row n = (A_n, B_n, C_n) on block columns n-1, n, n+1
///
/// (A_0 unused). When flagged `stochastic`, every materialized scalar row must
/// sum to 1 within 1e-12 with entries >= -1e-14; violations are hard errors.
class BlockChain {
 public:
  using Block = std::function<DenseMatrix(std::int64_t)>;

  static BlockChain from_blocks(int block_dim, Block A, Block B, Block C, bool stochastic,
                                std::optional<std::int64_t> block_count = std::nullopt);

  int block_dim() const { return dim_; }
  std::optional<std::int64_t> block_count() const { return blocks_; }
  bool finite() const { return blocks_.has_value(); }
  bool stochastic() const { return stochastic_; }

  DenseMatrix A(std::int64_t n) const;
  DenseMatrix B(std::int64_t n) const;
  DenseMatrix C(std::int64_t n) const;

  /// Shape/finiteness check, plus row sums and nonnegativity when stochastic.
  void validate_row(std::int64_t n) const;

  BlockChain() = default;

 private:
  DenseMatrix fetch(const Block& f, std::int64_t n, const char* name) const;

  int dim_ = 0;
  Block a_, b_, c_;
  std::optional<std::int64_t> blocks_;
  bool stochastic_ = false;
};

/// Top-left n_states x n_states corner of the transition matrix.
DenseMatrix realize(const TridiagonalChain& chain, std::int64_t n_states);

/// Top-left corner spanning n_blocks block rows: (d*n_blocks) x (d*n_blocks).
DenseMatrix realize(const BlockChain& chain, std::int64_t n_blocks);

/// Exact (P^n)_{ij} by repeated multiplication on a corner of
/// max(i,j) + n + 2 states; n steps cross at most n bands so the corner
/// truncation is invisible to the result.
double truncated_power(const TridiagonalChain& chain, std::int64_t n, std::int64_t i,
                       std::int64_t j);

/// Exact (i,j) block of P^n (block indices), corner of max(i,j) + n + 2 block
/// rows.
DenseMatrix truncated_power_block(const BlockChain& chain, std::int64_t n, std::int64_t i,
                                  std::int64_t j);

/// Scalar-index view of truncated_power_block.
double truncated_power(const BlockChain& chain, std::int64_t n, std::int64_t i, std::int64_t j);

}  // namespace kmrep

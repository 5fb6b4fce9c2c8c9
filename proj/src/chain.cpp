#include "kmrep/chain.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace kmrep {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kNegativeTol = -1e-14;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

TridiagonalChain TridiagonalChain::from_vectors(std::vector<double> p, std::vector<double> q,
                                                std::vector<double> r) {
  const auto n = static_cast<std::int64_t>(r.size());
  if (n < 1) fail("TridiagonalChain: need at least one state");
  if (static_cast<std::int64_t>(p.size()) != n || static_cast<std::int64_t>(q.size()) != n)
    fail("TridiagonalChain: p, q, r must have equal length (one entry per state)");
  if (q[0] != 0.0) fail("TridiagonalChain: q[0] must be 0 (state 0 has no down step)");
  if (p[n - 1] != 0.0) fail("TridiagonalChain: p[last] must be 0 (last state has no up step)");

  auto pv = std::make_shared<std::vector<double>>(std::move(p));
  auto qv = std::make_shared<std::vector<double>>(std::move(q));
  auto rv = std::make_shared<std::vector<double>>(std::move(r));

  TridiagonalChain chain;
  chain.states_ = n;
  chain.p_ = [pv](std::int64_t j) { return (*pv)[static_cast<size_t>(j)]; };
  chain.q_ = [qv](std::int64_t j) { return (*qv)[static_cast<size_t>(j)]; };
  chain.r_ = [rv](std::int64_t j) { return (*rv)[static_cast<size_t>(j)]; };
  for (std::int64_t j = 0; j < n; ++j) chain.validate_state(j);
  return chain;
}

TridiagonalChain TridiagonalChain::from_generators(Coeff p, Coeff q, Coeff r,
                                                   std::optional<std::int64_t> states) {
  if (!p || !q || !r) fail("TridiagonalChain: missing coefficient generator");
  if (states && *states < 1) fail("TridiagonalChain: need at least one state");
  TridiagonalChain chain;
  chain.p_ = std::move(p);
  chain.q_ = std::move(q);
  chain.r_ = std::move(r);
  chain.states_ = states;
  chain.validate_state(0);
  return chain;
}

void TridiagonalChain::validate_state(std::int64_t j) const {
  const std::string at = "state " + std::to_string(j);
  if (j < 0 || (states_ && j >= *states_)) fail("TridiagonalChain: " + at + " out of range");
  double pj, qj, rj;
  try {
    pj = p_(j);
    qj = q_(j);
    rj = r_(j);
  } catch (const std::exception& e) {
    fail("TridiagonalChain: coefficient generator failed at " + at + ": " + e.what());
  }
  if (!std::isfinite(pj) || !std::isfinite(qj) || !std::isfinite(rj))
    fail("TridiagonalChain: non-finite coefficient at " + at);
  if (pj < 0 || qj < 0 || rj < 0) fail("TridiagonalChain: negative coefficient at " + at);

  const bool last = states_ && j == *states_ - 1;
  if (!last && pj <= 0.0) fail("TridiagonalChain: p must be > 0 at interior " + at);
  if (j >= 1 && qj <= 0.0) fail("TridiagonalChain: q must be > 0 at " + at);

  if (j == 0) {
    if (pj + rj > 1.0 + kRowSumTol) fail("TridiagonalChain: p_0 + r_0 exceeds 1 at " + at);
  } else {
    const double sum = pj + qj + rj;
    if (std::fabs(sum - 1.0) > kRowSumTol)
      fail("TridiagonalChain: row sum " + std::to_string(sum) + " != 1 at " + at);
  }
}

double TridiagonalChain::p(std::int64_t j) const {
  validate_state(j);
  return p_(j);
}

double TridiagonalChain::q(std::int64_t j) const {
  validate_state(j);
  return q_(j);
}

double TridiagonalChain::r(std::int64_t j) const {
  validate_state(j);
  return r_(j);
}

BlockChain BlockChain::from_blocks(int block_dim, Block A, Block B, Block C, bool stochastic,
                                   std::optional<std::int64_t> block_count) {
  if (block_dim < 1) fail("BlockChain: block_dim must be positive");
  if (!A || !B || !C) fail("BlockChain: missing block generator");
  if (block_count && *block_count < 1) fail("BlockChain: need at least one block");
  BlockChain chain;
  chain.dim_ = block_dim;
  chain.a_ = std::move(A);
  chain.b_ = std::move(B);
  chain.c_ = std::move(C);
  chain.blocks_ = block_count;
  chain.stochastic_ = stochastic;
  chain.validate_row(0);
  return chain;
}

DenseMatrix BlockChain::fetch(const Block& f, std::int64_t n, const char* name) const {
  DenseMatrix m;
  try {
    m = f(n);
  } catch (const std::exception& e) {
    fail(std::string("BlockChain: generator for ") + name + " failed at block " +
         std::to_string(n) + ": " + e.what());
  }
  if (m.rows() != dim_ || m.cols() != dim_)
    fail(std::string("BlockChain: block ") + name + "[" + std::to_string(n) + "] has wrong shape");
  if (!m.all_finite())
    fail(std::string("BlockChain: non-finite entry in ") + name + "[" + std::to_string(n) + "]");
  return m;
}

DenseMatrix BlockChain::A(std::int64_t n) const { return fetch(a_, n, "A"); }
DenseMatrix BlockChain::B(std::int64_t n) const { return fetch(b_, n, "B"); }
DenseMatrix BlockChain::C(std::int64_t n) const { return fetch(c_, n, "C"); }

void BlockChain::validate_row(std::int64_t n) const {
  if (!stochastic_) {
    (void)B(n);  // shape/finiteness only
    return;
  }
  const bool first = n == 0;
  const bool last = blocks_ && n == *blocks_ - 1;
  const DenseMatrix a = first ? DenseMatrix(dim_, dim_) : A(n);
  const DenseMatrix b = B(n);
  const DenseMatrix c = last ? DenseMatrix(dim_, dim_) : C(n);
  for (int i = 0; i < dim_; ++i) {
    double sum = 0.0;
    for (int j = 0; j < dim_; ++j) {
      for (const DenseMatrix* blk : {&a, &b, &c}) {
        const double v = (*blk)(i, j);
        if (v < kNegativeTol)
          fail("BlockChain: stochastic chain has negative entry " + std::to_string(v) +
               " in block row " + std::to_string(n));
        sum += v;
      }
    }
    if (std::fabs(sum - 1.0) > kRowSumTol)
      fail("BlockChain: stochastic chain row sum " + std::to_string(sum) + " != 1 in block row " +
           std::to_string(n) + ", scalar row " + std::to_string(n * dim_ + i));
  }
}

DenseMatrix realize(const TridiagonalChain& chain, std::int64_t n_states) {
  if (n_states < 1) fail("realize: n_states must be >= 1");
  if (chain.finite()) n_states = std::min(n_states, *chain.states());
  DenseMatrix m(static_cast<int>(n_states), static_cast<int>(n_states));
  for (std::int64_t j = 0; j < n_states; ++j) {
    const int jj = static_cast<int>(j);
    m(jj, jj) = chain.r(j);
    if (j + 1 < n_states) m(jj, jj + 1) = chain.p(j);
    if (j > 0) m(jj, jj - 1) = chain.q(j);
  }
  return m;
}

DenseMatrix realize(const BlockChain& chain, std::int64_t n_blocks) {
  if (n_blocks < 1) fail("realize: n_blocks must be >= 1");
  if (chain.finite()) n_blocks = std::min(n_blocks, *chain.block_count());
  const int d = chain.block_dim();
  DenseMatrix m(static_cast<int>(n_blocks * d), static_cast<int>(n_blocks * d));
  auto place = [&](std::int64_t bi, std::int64_t bj, const DenseMatrix& blk) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m(static_cast<int>(bi * d + i), static_cast<int>(bj * d + j)) = blk(i, j);
  };
  for (std::int64_t n = 0; n < n_blocks; ++n) {
    chain.validate_row(n);
    place(n, n, chain.B(n));
    if (n > 0) place(n, n - 1, chain.A(n));
    if (n + 1 < n_blocks) place(n, n + 1, chain.C(n));
  }
  return m;
}

namespace {

DenseMatrix dense_power(const DenseMatrix& m, std::int64_t n) {
  DenseMatrix acc = DenseMatrix::identity(m.rows());
  for (std::int64_t k = 0; k < n; ++k) acc = acc * m;
  return acc;
}

}  // namespace

double truncated_power(const TridiagonalChain& chain, std::int64_t n, std::int64_t i,
                       std::int64_t j) {
  if (n < 0) fail("truncated_power: n must be >= 0");
  if (i < 0 || j < 0) fail("truncated_power: states must be >= 0");
  if (chain.finite() && (i >= *chain.states() || j >= *chain.states()))
    fail("truncated_power: state out of range");
  std::int64_t corner = std::max(i, j) + n + 2;
  if (chain.finite()) corner = std::min(corner, *chain.states());
  const DenseMatrix pw = dense_power(realize(chain, corner), n);
  return pw(static_cast<int>(i), static_cast<int>(j));
}

DenseMatrix truncated_power_block(const BlockChain& chain, std::int64_t n, std::int64_t i,
                                  std::int64_t j) {
  if (n < 0) fail("truncated_power_block: n must be >= 0");
  if (i < 0 || j < 0) fail("truncated_power_block: block indices must be >= 0");
  if (chain.finite() && (i >= *chain.block_count() || j >= *chain.block_count()))
    fail("truncated_power_block: block index out of range");
  std::int64_t corner = std::max(i, j) + n + 2;
  if (chain.finite()) corner = std::min(corner, *chain.block_count());
  const int d = chain.block_dim();
  const DenseMatrix pw = dense_power(realize(chain, corner), n);
  DenseMatrix blk(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      blk(a, b) = pw(static_cast<int>(i * d + a), static_cast<int>(j * d + b));
  return blk;
}

double truncated_power(const BlockChain& chain, std::int64_t n, std::int64_t i, std::int64_t j) {
  const int d = chain.block_dim();
  const DenseMatrix blk = truncated_power_block(chain, n, i / d, j / d);
  return blk(static_cast<int>(i % d), static_cast<int>(j % d));
}

}  // namespace kmrep

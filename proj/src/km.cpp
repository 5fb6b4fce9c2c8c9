#include "kmrep/km.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace kmrep {

struct KMSystem::ScalarParts {
  TridiagonalChain chain;
  ScalarPolySequence seq;
  ScalarMeasure measure;
  std::function<double(std::int64_t)> pi;  // may be empty

  mutable std::mutex mutex;
  mutable std::map<std::int64_t, double> pi_cache;

  ScalarParts(TridiagonalChain c, ScalarMeasure m, std::function<double(std::int64_t)> p)
      : chain(c), seq(c), measure(std::move(m)), pi(std::move(p)) {}
};

struct KMSystem::BlockParts {
  BlockChain chain;
  MatrixPolySequence seq;
  MatrixWeight weight;

  struct GramEntry {
    DenseMatrix gram;
    DenseMatrix inverse;
    double condition = 0.0;
  };
  std::mutex mutex;
  std::map<std::int64_t, GramEntry> gram_cache;

  BlockParts(BlockChain c, MatrixWeight w)
      : chain(c), seq(MatrixPolySequence::from_chain(c)), weight(std::move(w)) {}
};

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double eval_q(const ScalarPolySequence& seq, double x, std::int64_t idx) {
  return seq.eval_sequence(x, idx).back();
}

DenseMatrix eval_block_q(const MatrixPolySequence& seq, double x, std::int64_t idx) {
  return seq.eval_sequence(x, idx).back();
}

}  // namespace

KMSystem KMSystem::scalar(TridiagonalChain chain, ScalarMeasure measure,
                          std::function<double(std::int64_t)> pi, const KMOptions& opts) {
  KMSystem sys;
  sys.scalar_ = std::make_shared<ScalarParts>(std::move(chain), std::move(measure), std::move(pi));
  sys.quad_ = opts.quad;
  if (opts.validate_orthogonality) sys.validate_scalar(opts);
  return sys;
}

KMSystem KMSystem::block(BlockChain chain, MatrixWeight weight, const KMOptions& opts) {
  if (chain.block_dim() != weight.dim)
    fail("KMSystem: chain block dimension does not match weight dimension");
  KMSystem sys;
  sys.block_ = std::make_shared<BlockParts>(std::move(chain), std::move(weight));
  sys.quad_ = opts.quad;
  if (opts.validate_orthogonality) sys.validate_block(opts);
  return sys;
}

void KMSystem::validate_scalar(const KMOptions& opts) const {
  std::int64_t idx_max = opts.check_index_max;
  if (scalar_->chain.finite()) idx_max = std::min(idx_max, *scalar_->chain.states() - 1);

  std::vector<std::vector<double>> gram(idx_max + 1, std::vector<double>(idx_max + 1, 0.0));
  auto one = [](double) { return 1.0; };
  for (std::int64_t i = 0; i <= idx_max; ++i) {
    for (std::int64_t j = i; j <= idx_max; ++j) {
      auto f = [&](double x) {
        const auto q = scalar_->seq.eval_sequence(x, std::max(i, j));
        return q[static_cast<size_t>(i)] * q[static_cast<size_t>(j)];
      };
      gram[i][j] = gram[j][i] = inner_product(scalar_->measure, f, one, quad_);
    }
  }
  for (std::int64_t i = 0; i <= idx_max; ++i) {
    if (!(gram[i][i] > 0.0))
      throw std::runtime_error("KMSystem: <Q_" + std::to_string(i) + ", Q_" + std::to_string(i) +
                               "> is not positive");
    if (scalar_->pi) {
      const double diag = scalar_->pi(i) * gram[i][i];
      if (std::fabs(diag - 1.0) > opts.orthogonality_tol)
        throw std::runtime_error("KMSystem: pi_j <Q_j, Q_j> = " + std::to_string(diag) +
                                 " != 1 at j = " + std::to_string(i));
    }
  }
  for (std::int64_t i = 0; i <= idx_max; ++i)
    for (std::int64_t j = i + 1; j <= idx_max; ++j) {
      const double normalized = std::fabs(gram[i][j]) / std::sqrt(gram[i][i] * gram[j][j]);
      if (normalized > opts.orthogonality_tol)
        throw std::runtime_error("KMSystem: orthogonality defect " + std::to_string(normalized) +
                                 " at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
}

void KMSystem::validate_block(const KMOptions& opts) const {
  std::int64_t idx_max = opts.check_index_max;
  if (block_->chain.finite()) idx_max = std::min(idx_max, *block_->chain.block_count() - 1);

  std::vector<double> diag_norm(idx_max + 1, 0.0);
  for (std::int64_t i = 0; i <= idx_max; ++i) diag_norm[i] = gram(i).max_abs();
  for (std::int64_t i = 0; i <= idx_max; ++i) {
    for (std::int64_t j = i + 1; j <= idx_max; ++j) {
      auto pf = [&](double x) { return eval_block_q(block_->seq, x, i); };
      auto qf = [&](double x) { return eval_block_q(block_->seq, x, j); };
      const DenseMatrix g = matrix_inner_product(block_->weight, pf, qf, quad_);
      const double normalized = g.max_abs() / std::sqrt(diag_norm[i] * diag_norm[j]);
      if (normalized > opts.orthogonality_tol)
        throw std::runtime_error("KMSystem: block orthogonality defect " +
                                 std::to_string(normalized) + " at (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
    }
  }
}

const TridiagonalChain& KMSystem::scalar_chain() const {
  if (!scalar_) fail("KMSystem: scalar operation on a block system");
  return scalar_->chain;
}

const ScalarPolySequence& KMSystem::sequence() const {
  if (!scalar_) fail("KMSystem: scalar operation on a block system");
  return scalar_->seq;
}

const ScalarMeasure& KMSystem::measure() const {
  if (!scalar_) fail("KMSystem: scalar operation on a block system");
  return scalar_->measure;
}

double KMSystem::pi(std::int64_t j) const {
  if (!scalar_) fail("KMSystem: scalar operation on a block system");
  if (scalar_->pi) return scalar_->pi(j);
  std::lock_guard<std::mutex> lock(scalar_->mutex);
  auto it = scalar_->pi_cache.find(j);
  if (it != scalar_->pi_cache.end()) return it->second;
  auto f = [&](double x) { return eval_q(scalar_->seq, x, j); };
  const double norm = inner_product(scalar_->measure, f, f, quad_);
  if (!(norm > 0.0))
    throw std::runtime_error("KMSystem: cannot derive pi at j = " + std::to_string(j));
  const double value = 1.0 / norm;
  scalar_->pi_cache.emplace(j, value);
  return value;
}

const BlockChain& KMSystem::block_chain() const {
  if (!block_) fail("KMSystem: block operation on a scalar system");
  return block_->chain;
}

const MatrixPolySequence& KMSystem::block_sequence() const {
  if (!block_) fail("KMSystem: block operation on a scalar system");
  return block_->seq;
}

const MatrixWeight& KMSystem::weight() const {
  if (!block_) fail("KMSystem: block operation on a scalar system");
  return block_->weight;
}

namespace {

// Template keeps the private BlockParts type unnamed at namespace scope.
template <class Parts>
const auto& fetch_gram(Parts& parts, std::int64_t j, const QuadratureOptions& quad) {
  std::lock_guard<std::mutex> lock(parts.mutex);
  auto it = parts.gram_cache.find(j);
  if (it != parts.gram_cache.end()) return it->second;

  auto pf = [&](double x) { return parts.seq.eval_sequence(x, j).back(); };
  typename std::decay_t<decltype(parts.gram_cache)>::mapped_type entry;
  entry.gram = matrix_inner_product(parts.weight, pf, pf, quad);
  Inverse inv;
  try {
    inv = invert_small(entry.gram, "Gram block (Q_j, Q_j)");
  } catch (const std::runtime_error&) {
    throw std::runtime_error("KMSystem: singular Gram block at j = " + std::to_string(j));
  }
  entry.inverse = inv.inverse;
  entry.condition = inv.condition;
  return parts.gram_cache.emplace(j, std::move(entry)).first->second;
}

}  // namespace

const DenseMatrix& KMSystem::gram(std::int64_t j) const {
  if (!block_) fail("KMSystem: block operation on a scalar system");
  return fetch_gram(*block_, j, quad_).gram;
}

const DenseMatrix& KMSystem::gram_inverse(std::int64_t j) const {
  if (!block_) fail("KMSystem: block operation on a scalar system");
  return fetch_gram(*block_, j, quad_).inverse;
}

double KMSystem::gram_condition(std::int64_t j) const {
  if (!block_) fail("KMSystem: block operation on a scalar system");
  return fetch_gram(*block_, j, quad_).condition;
}

KMSystem make_km_system(const EhrenfestFamily& family, const KMOptions& opts) {
  return KMSystem::scalar(family.chain, family.measure,
                          [family](std::int64_t j) { return family.pi(j); }, opts);
}

KMSystem make_km_system(const ChebyshevWalkFamily& family, const KMOptions& opts) {
  return KMSystem::scalar(family.chain, family.measure,
                          [family](std::int64_t j) { return family.pi(j); }, opts);
}

KMSystem make_km_system(const BernoulliLaplaceFamily& family, const KMOptions& opts) {
  return KMSystem::scalar(family.chain, family.measure,
                          [family](std::int64_t j) { return family.pi(j); }, opts);
}

KMSystem make_km_system(const JacobiBlockFamily& family, const KMOptions& opts) {
  return KMSystem::block(family.chain, family.weight, opts);
}

KMSystem make_km_system(const ChebyshevBlockFamily& family, const KMOptions& opts) {
  return KMSystem::block(family.chain, family.weight, opts);
}

KMSystem make_km_system(const Family& family, const KMOptions& opts) {
  return std::visit([&](const auto& f) { return make_km_system(f, opts); }, family);
}

double km_entry(const KMSystem& sys, std::int64_t n, std::int64_t i, std::int64_t j) {
  if (sys.is_block()) fail("km_entry: use km_block_entry for block systems");
  if (n < 0) fail("km_entry: n must be >= 0");
  if (i < 0 || j < 0) fail("km_entry: states must be >= 0");
  const auto& chain = sys.scalar_chain();
  if (chain.finite() && (i >= *chain.states() || j >= *chain.states()))
    fail("km_entry: state out of range");

  const std::int64_t top = std::max(i, j);
  auto integrand = [&](double x) {
    const auto q = sys.sequence().eval_sequence(x, top);
    return std::pow(x, static_cast<double>(n)) * q[static_cast<size_t>(i)] *
           q[static_cast<size_t>(j)];
  };
  auto one = [](double) { return 1.0; };
  return sys.pi(j) * inner_product(sys.measure(), integrand, one, sys.quad());
}

DenseMatrix km_block_entry(const KMSystem& sys, std::int64_t n, std::int64_t i, std::int64_t j) {
  if (!sys.is_block()) fail("km_block_entry: use km_entry for scalar systems");
  if (n < 0) fail("km_block_entry: n must be >= 0");
  if (i < 0 || j < 0) fail("km_block_entry: block indices must be >= 0");
  const auto& chain = sys.block_chain();
  if (chain.finite() && (i >= *chain.block_count() || j >= *chain.block_count()))
    fail("km_block_entry: block index out of range");

  auto pf = [&](double x) {
    return sys.block_sequence().eval_sequence(x, i).back() * std::pow(x, static_cast<double>(n));
  };
  auto qf = [&](double x) { return sys.block_sequence().eval_sequence(x, j).back(); };
  const DenseMatrix moment = matrix_inner_product(sys.weight(), pf, qf, sys.quad());
  return moment * sys.gram_inverse(j);
}

VerificationReport verify_representation(const KMSystem& sys, std::int64_t n_max,
                                         std::int64_t index_max) {
  if (n_max < 0 || index_max < 0)
    fail("verify_representation: n_max and index_max must be >= 0");
  VerificationReport report;
  report.n_max = n_max;
  report.index_max = index_max;
  report.max_err_per_n.assign(static_cast<size_t>(n_max) + 1, 0.0);

  auto record = [&](std::int64_t n, std::int64_t i, std::int64_t j, double err) {
    report.max_err_per_n[static_cast<size_t>(n)] =
        std::max(report.max_err_per_n[static_cast<size_t>(n)], err);
    if (err > report.max_abs_err) {
      report.max_abs_err = err;
      report.worst_n = n;
      report.worst_i = i;
      report.worst_j = j;
    }
  };

  if (!sys.is_block()) {
    const auto& chain = sys.scalar_chain();
    std::int64_t idx = index_max;
    if (chain.finite()) idx = std::min(idx, *chain.states() - 1);
    std::int64_t corner = idx + n_max + 2;
    if (chain.finite()) corner = std::min(corner, *chain.states());
    const DenseMatrix p = realize(chain, corner);
    DenseMatrix power = DenseMatrix::identity(p.rows());
    for (std::int64_t n = 0; n <= n_max; ++n) {
      if (n > 0) power = power * p;
      for (std::int64_t i = 0; i <= idx; ++i)
        for (std::int64_t j = 0; j <= idx; ++j)
          record(n, i, j,
                 std::fabs(km_entry(sys, n, i, j) -
                           power(static_cast<int>(i), static_cast<int>(j))));
    }
  } else {
    const auto& chain = sys.block_chain();
    const int d = chain.block_dim();
    std::int64_t idx = index_max;
    if (chain.finite()) idx = std::min(idx, *chain.block_count() - 1);
    std::int64_t corner = idx + n_max + 2;
    if (chain.finite()) corner = std::min(corner, *chain.block_count());
    const DenseMatrix p = realize(chain, corner);
    DenseMatrix power = DenseMatrix::identity(p.rows());
    for (std::int64_t n = 0; n <= n_max; ++n) {
      if (n > 0) power = power * p;
      for (std::int64_t i = 0; i <= idx; ++i) {
        for (std::int64_t j = 0; j <= idx; ++j) {
          const DenseMatrix km = km_block_entry(sys, n, i, j);
          double err = 0.0;
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
              err = std::max(err, std::fabs(km(a, b) - power(static_cast<int>(i * d + a),
                                                             static_cast<int>(j * d + b))));
          record(n, i, j, err);
        }
      }
    }
  }
  return report;
}

}  // namespace kmrep

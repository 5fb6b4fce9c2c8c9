#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "kmrep/chain.hpp"
#include "kmrep/families.hpp"
#include "kmrep/measure.hpp"
#include "kmrep/poly.hpp"

namespace kmrep {

/// A chain together with its polynomial sequence, orthogonality measure and
/// normalization (pi weights for scalar chains, Gram blocks for block
/// chains). Orthogonality of the stored sequence under the stored measure is
/// checked at construction (indices up to 10, tolerance 1e-8) unless
/// explicitly disabled.
struct KMOptions {
  bool validate_orthogonality = true;
  double orthogonality_tol = 1e-8;
  std::int64_t check_index_max = 10;
  QuadratureOptions quad = QuadratureOptions::defaults();
};

class KMSystem {
 public:
  /// Scalar system. `pi` may be empty, in which case pi_j = 1/<Q_j, Q_j> is
  /// computed from the measure on demand.
  static KMSystem scalar(TridiagonalChain chain, ScalarMeasure measure,
                         std::function<double(std::int64_t)> pi = nullptr,
                         const KMOptions& opts = KMOptions());

  static KMSystem block(BlockChain chain, MatrixWeight weight, const KMOptions& opts = KMOptions());

  bool is_block() const { return block_ != nullptr; }

  const TridiagonalChain& scalar_chain() const;
  const ScalarPolySequence& sequence() const;
  const ScalarMeasure& measure() const;
  double pi(std::int64_t j) const;

  const BlockChain& block_chain() const;
  const MatrixPolySequence& block_sequence() const;
  const MatrixWeight& weight() const;

  /// Cached Gram block (Q_j, Q_j) and its inverse/condition number.
  const DenseMatrix& gram(std::int64_t j) const;
  const DenseMatrix& gram_inverse(std::int64_t j) const;
  double gram_condition(std::int64_t j) const;

  const QuadratureOptions& quad() const { return quad_; }

 private:
  KMSystem() = default;
  void validate_scalar(const KMOptions& opts) const;
  void validate_block(const KMOptions& opts) const;

  struct ScalarParts;
  struct BlockParts;
  std::shared_ptr<const ScalarParts> scalar_;
  std::shared_ptr<BlockParts> block_;  // holds the mutable Gram cache
  QuadratureOptions quad_;
};

KMSystem make_km_system(const EhrenfestFamily& family,
                        const KMOptions& opts = KMOptions());
KMSystem make_km_system(const ChebyshevWalkFamily& family,
                        const KMOptions& opts = KMOptions());
KMSystem make_km_system(const BernoulliLaplaceFamily& family,
                        const KMOptions& opts = KMOptions());
KMSystem make_km_system(const JacobiBlockFamily& family,
                        const KMOptions& opts = KMOptions());
KMSystem make_km_system(const ChebyshevBlockFamily& family,
                        const KMOptions& opts = KMOptions());
KMSystem make_km_system(const Family& family,
                        const KMOptions& opts = KMOptions());

/// (P^n)_{ij} = pi_j * integral of x^n Q_i(x) Q_j(x) dpsi(x); an exact finite
/// sum for discrete measures. Scalar systems only.
double km_entry(const KMSystem& sys, std::int64_t n, std::int64_t i, std::int64_t j);

/// Block version: [integral of x^n Q_i W Q_j^*] (Q_j, Q_j)^{-1}.
DenseMatrix km_block_entry(const KMSystem& sys, std::int64_t n, std::int64_t i, std::int64_t j);

struct VerificationReport {
  std::int64_t n_max = 0;
  std::int64_t index_max = 0;
  double max_abs_err = 0.0;
  std::int64_t worst_n = 0;
  std::int64_t worst_i = 0;
  std::int64_t worst_j = 0;
  std::vector<double> max_err_per_n;  // indexed by n
};

/// Exhaustive comparison of the representation against the truncated-power
/// oracle over n <= n_max, i, j <= index_max. Failures are reported in the
/// table, never thrown.
VerificationReport verify_representation(const KMSystem& sys, std::int64_t n_max,
                                         std::int64_t index_max);

}  // namespace kmrep

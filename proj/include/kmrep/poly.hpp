#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kmrep/chain.hpp"
#include "kmrep/matrix.hpp"

namespace kmrep {

/// Scalar orthogonal polynomial sequence defined by the chain recursion
/// P Q(x) = x Q(x), i.e.
///
///   Q_{-1} = 0,  Q_0 = 1,
///   Q_{n+1} = ((x - r_n) Q_n - q_n Q_{n-1}) / p_n.
///
/// The index-shifted companion sequence q_n uses the same recursion with all
/// coefficient indices moved up by one (q_0 = 1, q_1 = (x - r_1)/p_1).
class ScalarPolySequence {
 public:
  explicit ScalarPolySequence(TridiagonalChain chain);

  /// Q_0(x) .. Q_{n_max}(x). Throws when a needed coefficient is undefined or
  /// p_n = 0 (error names the index).
  std::vector<double> eval_sequence(double x, std::int64_t n_max) const;

  /// Shifted sequence q_0(x) .. q_{n_max}(x).
  std::vector<double> eval_shifted_sequence(double x, std::int64_t n_max) const;

  const TridiagonalChain& chain() const { return chain_; }

 private:
  TridiagonalChain chain_;
};

/// Matrix-valued sequence from a block three-term recursion
///
///   A_n Q_{n-1} + B_n Q_n + C_n Q_{n+1} = x Q_n,   Q_{-1} = 0, Q_0 = I,
///
/// solved forward as Q_{n+1} = C_n^{-1}((x I - B_n) Q_n - A_n Q_{n-1}).
/// C_n must be nonsingular; a singular one raises an error naming n.
class MatrixPolySequence {
 public:
  using Block = std::function<DenseMatrix(std::int64_t)>;

  static MatrixPolySequence from_chain(const BlockChain& chain);
  static MatrixPolySequence from_coefficients(int dim, Block A, Block B, Block C);

  std::vector<DenseMatrix> eval_sequence(double x, std::int64_t n_max) const;

  /// Same sequence, as explicit polynomial coefficient arrays:
  /// result[n][k] is the k-th coefficient matrix of Q_n.
  std::vector<std::vector<DenseMatrix>> eval_coefficients(std::int64_t n_max) const;

  int dim() const { return dim_; }

  MatrixPolySequence() = default;

 private:
  int dim_ = 0;
  Block a_, b_, c_;
};

/// Generalized hypergeometric sum truncated at `truncation` (inclusive):
///   sum_{n=0}^{trunc} prod (a_i)_n / (n! prod (b_j)_n) * z^n
/// with rising factorials (a)_n = a(a+1)...(a+n-1).
struct HypergeomSpec {
  std::vector<double> numerator;
  std::vector<double> denominator;
  double z = 0.0;
  std::int64_t truncation = 0;
};

/// Throws std::domain_error when a denominator Pochhammer factor hits zero
/// within the retained range.
double hypergeom_truncated(const HypergeomSpec& spec);

/// Convergents q_{n-1}(x)/Q_n(x) for n = 1..n_max, evaluated as determinant
/// ratios p_0 det(xI - P[1..n-1]) / det(xI - P[0..n-1]) so that the shared
/// p-factors cancel. For a finite chain of M+1 states the continued fraction
/// terminates at n = M+1 (where the convergent equals p_0 (xI-P)^{-1}_{00}
/// exactly); later entries repeat the terminal value.
std::vector<double> ratio_convergents(const TridiagonalChain& chain, double x,
                                      std::int64_t n_max);

}  // namespace kmrep

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "kmrep/chain.hpp"
#include "kmrep/measure.hpp"
#include "kmrep/poly.hpp"

namespace kmrep {

/// Ehrenfest urn chain on states 0..2N. Eigenvalues are e(x) = 1 - x/N at
/// x = 0..2N, with Krawtchouk eigenvectors; the spectral measure puts weight
/// binom(2N, x)/2^{2N} on the node e(x).
struct EhrenfestFamily {
  int N = 1;
  TridiagonalChain chain;
  DiscreteMeasure measure;

  double eigenvalue(std::int64_t x) const;  // e(x) = 1 - x/N
  double weight(std::int64_t x) const;      // binom(2N, x) / 2^{2N}
  double pi(std::int64_t j) const;          // binom(2N, j)
  /// K_i(x): truncated Gauss series 2F1(-i, -x; -2N; 2), cut at 2N terms.
  double krawtchouk(std::int64_t i, double x) const;
};

EhrenfestFamily make_ehrenfest(int N);

/// Nearest-neighbour walk with reflecting-ish first row (0, 1, 0, ...) and
/// interior rows (q, 0, p). Polynomials have a closed form in Chebyshev T/U;
/// the measure has density sqrt(4pq - x^2)/(1 - x^2) on [-sqrt(4pq),
/// sqrt(4pq)] and, for p < 1/2, one atom at each of +-1. The measure is kept
/// unnormalized exactly as the orthogonality constants are stated.
struct ChebyshevWalkFamily {
  double p = 0.5;
  double q = 0.5;
  TridiagonalChain chain;
  SpectralMeasure measure;

  double support_radius() const;  // sqrt(4 p q)
  /// Q_j(x) = (q/p)^{j/2} [ (2-2p) T_j(x-hat) + (2p-1) U_j(x-hat) ],
  /// x-hat = x / (2 sqrt(pq)).
  double closed_form(std::int64_t j, double x) const;
  double scaling(std::int64_t n) const;                // (p/(1-p))^n
  double orthogonality_constant(std::int64_t n) const; // 2(1-p)pi, 2p(1-p)pi
  /// Combined mass of the two atoms, (2-4p)pi (0 for p >= 1/2); each atom
  /// carries half of it.
  double atom_pair_total_mass() const;
  double pi(std::int64_t j) const;
};

ChebyshevWalkFamily make_chebyshev_walk(double p);

/// Bernoulli-Laplace two-urn chain on w = 0..W (W white, B black balls,
/// W <= B), diagonalized by dual Hahn polynomials R_n(lambda(x)) with
/// lambda(x) = x(x - W - B - 1) and eigenvalues e(x) = 1 - x(B+W-x+1)/(BW).
struct BernoulliLaplaceFamily {
  int W = 1;
  int B = 1;
  TridiagonalChain chain;
  DiscreteMeasure measure;

  double eigenvalue(std::int64_t x) const;
  double lambda(std::int64_t x) const;
  double mu(std::int64_t x) const;  // node weight
  double pi(std::int64_t j) const;  // binom(W, j) binom(B, W-j)
  /// R_n(lambda(x)): truncated 3F2(-n, -x, x-W-B-1; -W, -W; 1), cut at W.
  double dual_hahn(std::int64_t n, std::int64_t x) const;
};

BernoulliLaplaceFamily make_bernoulli_laplace(int W, int B);

/// 2x2 block family with Jacobi-type matrix weight
///   W(x) = Psi0(x) diag((1-x)^beta x^{alpha+1}, (1-x)^beta x^alpha) Psi0*(x)
/// on [0, 1]. A_n is upper and C_n lower triangular. The polynomials are
/// eigenfunctions of a second order differential operator F with eigenvalue
/// matrices Lambda_n. Whether the pentadiagonal scalar matrix is stochastic
/// is a numerical property of (alpha, beta); it is probed row by row and
/// exposed through chain().stochastic().
struct JacobiBlockFamily {
  double alpha = 0.0;
  double beta = 0.0;
  BlockChain chain;
  MatrixWeight weight;
  MatrixPolySequence sequence;

  DenseMatrix psi0(double x) const;
  DenseMatrix lambda_n(std::int64_t n) const;
  /// Coefficients of F = x(1-x) d^2/dx^2 + (A1c + x A1x) d/dx + A0.
  DenseMatrix f_first_order_const() const;
  DenseMatrix f_first_order_linear() const;
  DenseMatrix f_zeroth_order() const;
};

JacobiBlockFamily make_jacobi_block(double alpha, double beta);

/// Row-sum/nonnegativity probe of the first `block_rows` block rows; this is
/// an empirical check per (alpha, beta), not a theorem.
bool jacobi_block_is_stochastic(double alpha, double beta, std::int64_t block_rows = 24);

struct OperatorResidual {
  double residual = 0.0;  // max abs coefficient of F Phi_n^* - Phi_n^* Lambda_n
  double scale = 0.0;     // max abs coefficient of Phi_n^* Lambda_n (>= 1)
};

/// Exact polynomial-coefficient evaluation of the eigenfunction relation.
OperatorResidual apply_operator_F(const JacobiBlockFamily& family, std::int64_t n);

/// 2x2 block chain with B_0 = (1/2) * exchange matrix, B_n = 0 for n >= 1,
/// A_n = (1/4) I, super-diagonal blocks I. Closed form
///   P_n(x) = 2^{-n} [[U_n, -U_{n-1}], [-U_{n-1}, U_n]],
/// orthogonal for (1/sqrt(1-x^2)) [[1, x], [x, 1]] on [-1, 1] with Gram
/// blocks (pi/4^i) I. The scalar pentadiagonal view is NOT stochastic.
struct ChebyshevBlockFamily {
  BlockChain chain;
  MatrixWeight weight;
  MatrixPolySequence sequence;

  DenseMatrix closed_form(std::int64_t n, double x) const;
  double gram_scale(std::int64_t i) const;  // pi / 4^i
};

ChebyshevBlockFamily make_chebyshev_block();

using Family = std::variant<EhrenfestFamily, ChebyshevWalkFamily, BernoulliLaplaceFamily,
                            JacobiBlockFamily, ChebyshevBlockFamily>;

/// Families addressable by name: "ehrenfest" {N}, "chebyshev_walk" {p},
/// "bernoulli_laplace" {W, B}, "jacobi_block" {alpha, beta},
/// "chebyshev_block" {}. Throws std::invalid_argument naming the offending
/// parameter.
Family make_family(const std::string& name, const std::map<std::string, double>& params);

const char* family_name(const Family& family);
bool family_is_block(const Family& family);

}  // namespace kmrep

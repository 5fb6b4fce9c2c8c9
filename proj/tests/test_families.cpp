#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "kmrep/families.hpp"

using namespace kmrep;

namespace {

const double kPi = std::acos(-1.0);

// independent spectrum oracle
std::vector<double> eigenvalues_of(const DenseMatrix& m) {
  Eigen::MatrixXd a(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  std::vector<double> out;
  for (int k = 0; k < a.rows(); ++k) {
    REQUIRE(std::fabs(solver.eigenvalues()[k].imag()) < 1e-12);
    out.push_back(solver.eigenvalues()[k].real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("ehrenfest: chain, weights and spectrum for N = 1") {
  const auto fam = make_ehrenfest(1);
  const DenseMatrix expected{{0.0, 1.0, 0.0}, {0.5, 0.0, 0.5}, {0.0, 1.0, 0.0}};
  CHECK(realize(fam.chain, 3).max_abs_diff(expected) == 0.0);

  CHECK(fam.weight(0) == 0.25);
  CHECK(fam.weight(1) == 0.5);
  CHECK(fam.weight(2) == 0.25);

  const auto spectrum = eigenvalues_of(realize(fam.chain, 3));
  const std::vector<double> want = {-1.0, 0.0, 1.0};
  for (size_t k = 0; k < want.size(); ++k)
    CHECK(spectrum[k] == doctest::Approx(want[k]).epsilon(1e-12));
}

TEST_CASE("ehrenfest: Krawtchouk vectors are eigenvectors") {
  for (int N : {1, 3}) {
    const auto fam = make_ehrenfest(N);
    const DenseMatrix p = realize(fam.chain, 2 * N + 1);
    for (int x = 0; x <= 2 * N; ++x) {
      std::vector<double> k(2 * N + 1);
      for (int i = 0; i <= 2 * N; ++i) k[i] = fam.krawtchouk(i, x);
      const double e = fam.eigenvalue(x);
      for (int i = 0; i <= 2 * N; ++i) {
        double lhs = 0.0;
        for (int j = 0; j <= 2 * N; ++j) lhs += p(i, j) * k[j];
        CHECK(std::fabs(lhs - e * k[i]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("ehrenfest: hypergeometric and chain polynomials coincide") {
  const auto fam = make_ehrenfest(2);
  const ScalarPolySequence seq(fam.chain);
  for (int x = 0; x <= 4; ++x) {
    const auto q = seq.eval_sequence(fam.eigenvalue(x), 4);
    for (int i = 0; i <= 4; ++i)
      CHECK(q[i] == doctest::Approx(fam.krawtchouk(i, x)).epsilon(1e-12));
  }
}

TEST_CASE("ehrenfest: parameter validation") {
  CHECK_THROWS_AS(make_ehrenfest(0), std::invalid_argument);
  CHECK_THROWS_AS(make_ehrenfest(-2), std::invalid_argument);
}

TEST_CASE("chebyshev walk: p = 1/2 reduces to first-kind Chebyshev") {
  const auto fam = make_chebyshev_walk(0.5);
  for (double x : {-0.9, -0.2, 0.1, 0.8}) {
    CHECK(fam.closed_form(0, x) == doctest::Approx(1.0));
    CHECK(fam.closed_form(1, x) == doctest::Approx(x).epsilon(1e-14));
    CHECK(fam.closed_form(2, x) == doctest::Approx(2 * x * x - 1).epsilon(1e-13));
    CHECK(fam.closed_form(5, x) ==
          doctest::Approx(std::cos(5 * std::acos(x))).epsilon(1e-11));
  }
}

TEST_CASE("chebyshev walk: closed form matches the chain recursion") {
  for (double p : {0.3, 0.5, 0.7}) {
    const auto fam = make_chebyshev_walk(p);
    const ScalarPolySequence seq(fam.chain);
    const double s = fam.support_radius();
    for (int k = 0; k <= 20; ++k) {
      const double x = -s + 2.0 * s * k / 20.0;
      const auto q = seq.eval_sequence(x, 30);
      for (int j = 0; j <= 30; ++j) {
        const double closed = fam.closed_form(j, x);
        CHECK(std::fabs(q[j] - closed) <= 1e-10 * (1.0 + std::fabs(closed)));
      }
    }
  }
}

TEST_CASE("chebyshev walk: closed form satisfies P Q = x Q row by row") {
  for (double p : {0.3, 0.7}) {
    const auto fam = make_chebyshev_walk(p);
    const double s = fam.support_radius();
    for (int k = 0; k <= 20; ++k) {
      const double x = -s + 2.0 * s * k / 20.0;
      std::vector<double> q(33);
      for (int j = 0; j < 33; ++j) q[j] = fam.closed_form(j, x);
      // row 0: p_0 Q_1 = x Q_0
      CHECK(std::fabs(q[1] - x * q[0]) <= 1e-9);
      for (int row = 1; row <= 30; ++row) {
        const double resid =
            fam.chain.q(row) * q[row - 1] + fam.chain.p(row) * q[row + 1] - x * q[row];
        CHECK(std::fabs(resid) <= 1e-9 * (1.0 + std::fabs(q[row])));
      }
    }
  }
}

TEST_CASE("chebyshev walk: atoms exist exactly when p < 1/2") {
  CHECK(make_chebyshev_walk(0.3).measure.atoms.size() == 2);
  CHECK(make_chebyshev_walk(0.5).measure.atoms.empty());
  CHECK(make_chebyshev_walk(0.7).measure.atoms.empty());
  CHECK(make_chebyshev_walk(0.3).atom_pair_total_mass() ==
        doctest::Approx(0.8 * kPi).epsilon(1e-15));
  CHECK(make_chebyshev_walk(0.49).support_radius() < 1.0);
  CHECK(make_chebyshev_walk(0.5).support_radius() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("chebyshev walk: parameter validation") {
  CHECK_THROWS_AS(make_chebyshev_walk(0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_chebyshev_walk(1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_chebyshev_walk(-0.5), std::invalid_argument);
}

TEST_CASE("bernoulli-laplace: W = B = 2 chain and spectrum") {
  const auto fam = make_bernoulli_laplace(2, 2);
  const DenseMatrix expected{{0.0, 1.0, 0.0}, {0.25, 0.5, 0.25}, {0.0, 1.0, 0.0}};
  CHECK(realize(fam.chain, 3).max_abs_diff(expected) <= 1e-15);

  const auto spectrum = eigenvalues_of(realize(fam.chain, 3));
  std::vector<double> want = {fam.eigenvalue(0), fam.eigenvalue(1), fam.eigenvalue(2)};
  std::sort(want.begin(), want.end());
  CHECK(want[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(want[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(want[2] == doctest::Approx(1.0).epsilon(1e-15));
  for (size_t k = 0; k < want.size(); ++k)
    CHECK(spectrum[k] == doctest::Approx(want[k]).epsilon(1e-10));
}

TEST_CASE("bernoulli-laplace: dual Hahn vectors are eigenvectors") {
  for (auto [w, b] : {std::pair{2, 2}, {2, 5}, {5, 5}}) {
    const auto fam = make_bernoulli_laplace(w, b);
    const DenseMatrix p = realize(fam.chain, w + 1);
    for (int x = 0; x <= w; ++x) {
      std::vector<double> rv(w + 1);
      for (int n = 0; n <= w; ++n) rv[n] = fam.dual_hahn(n, x);
      const double e = fam.eigenvalue(x);
      for (int i = 0; i <= w; ++i) {
        double lhs = 0.0;
        for (int j = 0; j <= w; ++j) lhs += p(i, j) * rv[j];
        CHECK(std::fabs(lhs - e * rv[i]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("bernoulli-laplace: printed orthogonality constants hold as read") {
  for (auto [w, b] : {std::pair{2, 2}, {3, 4}, {1, 2}}) {
    const auto fam = make_bernoulli_laplace(w, b);
    for (int x = 0; x <= w; ++x) CHECK(fam.mu(x) > 0.0);
    for (int i = 0; i <= w; ++i) {
      for (int j = 0; j <= w; ++j) {
        double acc = 0.0;
        for (int x = 0; x <= w; ++x) acc += fam.dual_hahn(i, x) * fam.dual_hahn(j, x) * fam.mu(x);
        acc *= fam.pi(j);
        CHECK(std::fabs(acc - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("bernoulli-laplace: trivial values and parameter errors") {
  const auto fam = make_bernoulli_laplace(2, 5);
  CHECK(fam.eigenvalue(0) == 1.0);
  for (int x = 0; x <= 2; ++x) CHECK(fam.dual_hahn(0, x) == 1.0);
  CHECK_THROWS_WITH_AS(make_bernoulli_laplace(3, 2), doctest::Contains("W <= B"),
                       std::invalid_argument);
  CHECK_THROWS_AS(make_bernoulli_laplace(0, 2), std::invalid_argument);
}

TEST_CASE("bernoulli-laplace: dual Hahn equals the chain polynomial in e(x)") {
  const auto fam = make_bernoulli_laplace(3, 5);
  const ScalarPolySequence seq(fam.chain);
  for (int x = 0; x <= 3; ++x) {
    const auto q = seq.eval_sequence(fam.eigenvalue(x), 3);
    for (int n = 0; n <= 3; ++n)
      CHECK(q[n] == doctest::Approx(fam.dual_hahn(n, x)).epsilon(1e-12));
  }
}

TEST_CASE("jacobi block: triangular structure is exact") {
  for (auto [a, b] : {std::pair{1.0, 2.0}, {0.5, 0.5}, {0.3, 1.7}}) {
    const auto fam = make_jacobi_block(a, b);
    for (int n = 0; n <= 8; ++n) {
      CHECK(fam.chain.A(n)(1, 0) == 0.0);
      CHECK(fam.chain.C(n)(0, 1) == 0.0);
    }
  }
}

TEST_CASE("jacobi block: stochasticity observations at the test points") {
  for (auto [a, b] : {std::pair{1.0, 2.0}, {0.5, 0.5}, {0.0, 0.0}}) {
    const auto fam = make_jacobi_block(a, b);
    CHECK(fam.chain.stochastic());
    CHECK(jacobi_block_is_stochastic(a, b));
    const DenseMatrix m = realize(fam.chain, 7);  // 14 scalar rows
    for (int row = 0; row < 12; ++row) {
      CHECK(std::fabs(m.row_sum(row) - 1.0) <= 1e-12);
      for (int col = 0; col < m.cols(); ++col) CHECK(m(row, col) >= -1e-14);
    }
  }
}

TEST_CASE("jacobi block: parameter domain and zero denominators") {
  CHECK_THROWS_AS(make_jacobi_block(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_jacobi_block(0.0, -1.5), std::invalid_argument);
  // beta + 2 alpha + 1 = 0 kills the A^{11} denominator at n = 0
  CHECK_THROWS_WITH_AS(make_jacobi_block(-0.4, -0.2), doctest::Contains("A^{11}"),
                       std::invalid_argument);
}

TEST_CASE("jacobi block: operator eigenvalue relation via exact coefficients") {
  // Lambda_0 = diag(alpha + 1 + (beta+1)/2, 0) makes the n = 0 residual vanish
  {
    const auto fam = make_jacobi_block(1.0, 2.0);
    CHECK(apply_operator_F(fam, 0).residual == 0.0);
    CHECK(apply_operator_F(fam, 1).residual < 1e-10);
  }
  {
    const auto fam = make_jacobi_block(0.5, 0.0);
    CHECK(apply_operator_F(fam, 5).residual < 1e-8);
  }
  for (auto [a, b] : {std::pair{1.0, 2.0}, {0.5, 0.5}}) {
    const auto fam = make_jacobi_block(a, b);
    for (int n = 0; n <= 10; ++n) {
      const auto res = apply_operator_F(fam, n);
      CHECK(res.residual <= 1e-8 * res.scale);
    }
  }
}

TEST_CASE("chebyshev block: closed form against the recursion") {
  const auto fam = make_chebyshev_block();
  for (int k = 0; k <= 20; ++k) {
    const double x = -1.0 + 2.0 * k / 20.0;
    const auto p = fam.sequence.eval_sequence(x, 20);
    for (int n = 0; n <= 20; ++n)
      CHECK(p[n].max_abs_diff(fam.closed_form(n, x)) <= 1e-12);
  }
}

TEST_CASE("chebyshev block: P_1, realized row, weight at zero") {
  const auto fam = make_chebyshev_block();
  const auto p = fam.sequence.eval_sequence(0.4, 1);
  CHECK(p[1].max_abs_diff(DenseMatrix{{0.4, -0.5}, {-0.5, 0.4}}) <= 1e-15);

  const DenseMatrix m = realize(fam.chain, 3);
  const double row2[6] = {0.25, 0.0, 0.0, 0.0, 1.0, 0.0};
  for (int col = 0; col < 6; ++col) CHECK(m(2, col) == row2[col]);

  CHECK(fam.weight.weight(0.0).max_abs_diff(DenseMatrix::identity(2)) == 0.0);
}

TEST_CASE("chebyshev block: B_0 must be the half exchange matrix") {
  const auto fam = make_chebyshev_block();
  // exchange reading: recursion equals (1/2)[[U_1, -U_0], [-U_0, U_1]] exactly
  for (double x : {0.0, -0.6, 0.8}) {
    const DenseMatrix closed{{x, -0.5}, {-0.5, x}};
    CHECK(fam.sequence.eval_sequence(x, 1)[1].max_abs_diff(closed) == 0.0);
  }
  // the (1/2) I reading contradicts the closed form by 0.5 at x = 0
  const BlockChain id_variant = BlockChain::from_blocks(
      2, [](std::int64_t) { return DenseMatrix::identity(2) * 0.25; },
      [](std::int64_t n) { return n == 0 ? DenseMatrix::identity(2) * 0.5 : DenseMatrix(2, 2); },
      [](std::int64_t) { return DenseMatrix::identity(2); }, false);
  const auto p1 = MatrixPolySequence::from_chain(id_variant).eval_sequence(0.0, 1)[1];
  CHECK(p1.max_abs_diff(fam.closed_form(1, 0.0)) >= 0.5);
}

TEST_CASE("family registry resolves names and rejects bad parameters") {
  CHECK(family_name(make_family("ehrenfest", {{"N", 3.0}})) == std::string("ehrenfest"));
  CHECK(family_name(make_family("chebyshev_block", {})) == std::string("chebyshev_block"));
  CHECK(family_is_block(make_family("jacobi_block", {{"alpha", 1.0}, {"beta", 2.0}})));
  CHECK_FALSE(family_is_block(make_family("chebyshev_walk", {{"p", 0.4}})));

  CHECK_THROWS_WITH_AS(make_family("ehrenfest", {{"N", 2.5}}), doctest::Contains("N"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_family("ehrenfest", {}), doctest::Contains("missing"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_family("ehrenfest", {{"N", 1.0}, {"p", 0.5}}),
                       doctest::Contains("unknown parameter"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_family("frobnicate", {}), doctest::Contains("unknown family"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_family("bernoulli_laplace", {{"W", 2.0}}), doctest::Contains("B"),
                       std::invalid_argument);
}

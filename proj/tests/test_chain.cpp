#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kmrep/chain.hpp"
#include "kmrep/families.hpp"

using namespace kmrep;

TEST_CASE("ehrenfest realization matches the 2N = 2 display") {
  const auto fam = make_ehrenfest(1);
  const DenseMatrix m = realize(fam.chain, 3);
  const DenseMatrix expected{{0.0, 1.0, 0.0}, {0.5, 0.0, 0.5}, {0.0, 1.0, 0.0}};
  CHECK(m.max_abs_diff(expected) == 0.0);
}

TEST_CASE("degenerate all-stay chain is rejected") {
  CHECK_THROWS_WITH_AS(
      TridiagonalChain::from_vectors({0.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}),
      doctest::Contains("p must be > 0"), std::invalid_argument);
  CHECK_THROWS_AS(TridiagonalChain::from_generators([](std::int64_t) { return 0.0; },
                                                    [](std::int64_t) { return 0.0; },
                                                    [](std::int64_t) { return 1.0; }),
                  std::invalid_argument);
}

TEST_CASE("row-sum violations are construction errors") {
  CHECK_THROWS_WITH_AS(
      TridiagonalChain::from_vectors({0.5, 0.3, 0.0}, {0.0, 0.3, 0.5}, {0.5, 0.3, 0.5}),
      doctest::Contains("state 1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      TridiagonalChain::from_vectors({0.9, 0.0}, {0.0, 0.5}, {0.2, 0.5}),
      doctest::Contains("p_0 + r_0"), std::invalid_argument);
}

TEST_CASE("chebyshev block corner equals the printed pentadiagonal display") {
  const auto fam = make_chebyshev_block();
  const DenseMatrix m = realize(fam.chain, 3);
  const DenseMatrix expected{{0.0, 0.5, 1.0, 0.0, 0.0, 0.0},  {0.5, 0.0, 0.0, 1.0, 0.0, 0.0},
                             {0.25, 0.0, 0.0, 0.0, 1.0, 0.0}, {0.0, 0.25, 0.0, 0.0, 0.0, 1.0},
                             {0.0, 0.0, 0.25, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.25, 0.0, 0.0}};
  CHECK(m.max_abs_diff(expected) == 0.0);
}

TEST_CASE("truncated powers against hand-multiplied values") {
  const auto ehrenfest = make_ehrenfest(1);
  CHECK(truncated_power(ehrenfest.chain, 2, 0, 0) == 0.5);
  CHECK(truncated_power(ehrenfest.chain, 0, 0, 0) == 1.0);
  CHECK(truncated_power(ehrenfest.chain, 0, 0, 1) == 0.0);

  const auto bl = make_bernoulli_laplace(2, 2);
  CHECK(truncated_power(bl.chain, 1, 1, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(truncated_power(bl.chain, 1, 1, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(truncated_power(bl.chain, 1, 1, 2) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("truncated power is corner-size independent") {
  const auto walk = make_chebyshev_walk(0.3);
  for (std::int64_t n : {3, 6, 11}) {
    for (std::int64_t i : {0, 2}) {
      for (std::int64_t j : {1, 4}) {
        const double narrow = truncated_power(walk.chain, n, i, j);
        // widen the corner by 3 states by shifting the result out of a power
        // of a larger realization
        const std::int64_t corner = std::max(i, j) + n + 5;
        DenseMatrix power = DenseMatrix::identity(static_cast<int>(corner));
        const DenseMatrix p = realize(walk.chain, corner);
        for (std::int64_t k = 0; k < n; ++k) power = power * p;
        CHECK(std::fabs(narrow - power(static_cast<int>(i), static_cast<int>(j))) <= 1e-15);
      }
    }
  }
}

TEST_CASE("one-step truncated power equals the realized entry exactly") {
  const auto walk = make_chebyshev_walk(0.61);
  const DenseMatrix m = realize(walk.chain, 8);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(truncated_power(walk.chain, 1, i, j) == m(i, j));
}

TEST_CASE("realized row sums are 1 for stochastic built-ins") {
  auto check_rows = [](const DenseMatrix& m, int complete_rows) {
    for (int i = 0; i < complete_rows; ++i) CHECK(std::fabs(m.row_sum(i) - 1.0) <= 1e-12);
  };
  // finite chains realize completely
  check_rows(realize(make_ehrenfest(5).chain, 11), 11);
  check_rows(realize(make_bernoulli_laplace(3, 5).chain, 4), 4);
  // semi-infinite chains: the last realized row loses its up-step to the cut
  check_rows(realize(make_chebyshev_walk(0.3).chain, 64), 63);
  const auto jacobi = make_jacobi_block(1.0, 2.0);
  CHECK(jacobi.chain.stochastic());
  check_rows(realize(jacobi.chain, 32), 62);  // 64 scalar states, last block cut
}

TEST_CASE("chebyshev block chain is not stochastic and says so") {
  const auto fam = make_chebyshev_block();
  CHECK_FALSE(fam.chain.stochastic());
  const DenseMatrix m = realize(fam.chain, 4);
  bool some_row_off = false;
  for (int i = 0; i < 4; ++i) some_row_off = some_row_off || std::fabs(m.row_sum(i) - 1.0) > 0.1;
  CHECK(some_row_off);
}

TEST_CASE("stochastic block chains reject bad rows hard") {
  auto identity_like = [](std::int64_t) { return DenseMatrix::identity(2) * 0.5; };
  auto zero = [](std::int64_t) { return DenseMatrix(2, 2); };
  // rows sum to 0.5: rejected at construction (block row 0 is validated there)
  CHECK_THROWS_WITH_AS(BlockChain::from_blocks(2, zero, identity_like, zero, true),
                       doctest::Contains("row sum"), std::invalid_argument);

  // negative entry in a later block row: rejected when materialized
  auto bad_b = [](std::int64_t n) {
    DenseMatrix m(2, 2);
    if (n == 0) return DenseMatrix::identity(2) * 0.75;  // row 0 has no A block
    m(0, 0) = 0.6;
    m(0, 1) = -0.1;  // sums still 1, sign violated
    m(1, 1) = 0.5;
    return m;
  };
  auto half = [](std::int64_t) { return DenseMatrix::identity(2) * 0.25; };
  const BlockChain chain = BlockChain::from_blocks(2, half, bad_b, half, true);
  CHECK_THROWS_WITH_AS(realize(chain, 3), doctest::Contains("negative"), std::invalid_argument);
}

TEST_CASE("block truncated power: scalar view agrees with block view") {
  const auto fam = make_chebyshev_block();
  const DenseMatrix blk = truncated_power_block(fam.chain, 3, 1, 0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(truncated_power(fam.chain, 3, 2 + a, b) == blk(a, b));
}

TEST_CASE("realize and power preconditions") {
  const auto fam = make_ehrenfest(1);
  CHECK_THROWS_AS(realize(fam.chain, 0), std::invalid_argument);
  CHECK_THROWS_AS(truncated_power(fam.chain, -1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(truncated_power(fam.chain, 1, 0, 5), std::invalid_argument);
}

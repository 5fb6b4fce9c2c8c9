#include "kmrep/families.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kmrep {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double acc = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) acc *= static_cast<double>(n - k + i) / i;
  return acc;
}

// rising factorial (a)_n
double pochhammer(double a, std::int64_t n) {
  double acc = 1.0;
  for (std::int64_t i = 0; i < n; ++i) acc *= a + static_cast<double>(i);
  return acc;
}

double chebyshev_t(std::int64_t n, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (std::int64_t k = 2; k <= n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double chebyshev_u(std::int64_t n, double x) {
  if (n < 0) return 0.0;
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 2.0 * x;
  for (std::int64_t k = 2; k <= n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ehrenfest

double EhrenfestFamily::eigenvalue(std::int64_t x) const {
  return 1.0 - static_cast<double>(x) / N;
}

double EhrenfestFamily::weight(std::int64_t x) const {
  return binom(2 * N, x) * std::pow(0.5, 2 * N);
}

double EhrenfestFamily::pi(std::int64_t j) const { return binom(2 * N, j); }

double EhrenfestFamily::krawtchouk(std::int64_t i, double x) const {
  HypergeomSpec spec;
  spec.numerator = {-static_cast<double>(i), -x};
  spec.denominator = {-2.0 * N};
  spec.z = 2.0;
  spec.truncation = 2 * N;
  return hypergeom_truncated(spec);
}

EhrenfestFamily make_ehrenfest(int N) {
  if (N < 1) fail("ehrenfest: N must be an integer >= 1");
  const std::int64_t states = 2 * static_cast<std::int64_t>(N) + 1;
  const double twoN = 2.0 * N;
  auto p = [twoN](std::int64_t j) { return (twoN - j) / twoN; };
  auto q = [twoN](std::int64_t j) { return j / twoN; };
  auto r = [](std::int64_t) { return 0.0; };

  EhrenfestFamily fam;
  fam.N = N;
  fam.chain = TridiagonalChain::from_generators(p, q, r, states);
  DiscreteMeasure measure;
  for (std::int64_t x = 0; x <= 2 * N; ++x) {
    measure.nodes.push_back(fam.eigenvalue(x));
    measure.weights.push_back(fam.weight(x));
  }
  measure.validate();
  fam.measure = std::move(measure);
  return fam;
}

// ---------------------------------------------------------------------------
// Chebyshev walk

double ChebyshevWalkFamily::support_radius() const { return 2.0 * std::sqrt(p * q); }

double ChebyshevWalkFamily::closed_form(std::int64_t j, double x) const {
  const double xhat = x / (2.0 * std::sqrt(p * q));
  const double ratio = std::pow(q / p, 0.5 * static_cast<double>(j));
  return ratio * ((2.0 - 2.0 * p) * chebyshev_t(j, xhat) + (2.0 * p - 1.0) * chebyshev_u(j, xhat));
}

double ChebyshevWalkFamily::scaling(std::int64_t n) const {
  return std::pow(p / (1.0 - p), static_cast<double>(n));
}

double ChebyshevWalkFamily::orthogonality_constant(std::int64_t n) const {
  return n == 0 ? 2.0 * (1.0 - p) * M_PI : 2.0 * p * (1.0 - p) * M_PI;
}

double ChebyshevWalkFamily::atom_pair_total_mass() const {
  return p < 0.5 ? (2.0 - 4.0 * p) * M_PI : 0.0;
}

double ChebyshevWalkFamily::pi(std::int64_t j) const {
  return std::pow(p / q, static_cast<double>(j)) / orthogonality_constant(j);
}

ChebyshevWalkFamily make_chebyshev_walk(double p) {
  if (!(p > 0.0 && p < 1.0)) fail("chebyshev_walk: p must lie in (0, 1)");
  const double q = 1.0 - p;

  ChebyshevWalkFamily fam;
  fam.p = p;
  fam.q = q;
  fam.chain = TridiagonalChain::from_generators(
      [p](std::int64_t j) { return j == 0 ? 1.0 : p; },
      [q](std::int64_t j) { return j == 0 ? 0.0 : q; }, [](std::int64_t) { return 0.0; });

  const double s = fam.support_radius();
  const double s2 = s * s;
  // (1 - x^2) at x = s sin(theta), rearranged as (1 - s^2) + s^2 cos^2(theta)
  // with 1 - s^2 = (p - q)^2 exact; no cancellation at the edges.
  const double pq_gap = (p - q) * (p - q);
  auto density = [s2](double x) {
    const double num = s2 - x * x;
    return num <= 0.0 ? 0.0 : std::sqrt(num) / (1.0 - x * x);
  };
  auto theta_form = [s2, pq_gap](double theta) {
    const double c = std::cos(theta);
    return s2 * c * c / (pq_gap + s2 * c * c);
  };

  SpectralMeasure measure;
  measure.continuous = ContinuousPart::trig_edge(-s, s, density, theta_form);
  const double atom_total = fam.atom_pair_total_mass();
  if (atom_total > 0.0) {
    measure.atoms.push_back({1.0, atom_total / 2.0});
    measure.atoms.push_back({-1.0, atom_total / 2.0});
  }
  measure.validate();
  fam.measure = std::move(measure);
  return fam;
}

// ---------------------------------------------------------------------------
// Bernoulli-Laplace

double BernoulliLaplaceFamily::eigenvalue(std::int64_t x) const {
  return 1.0 - static_cast<double>(x) * (B + W - x + 1) / (static_cast<double>(B) * W);
}

double BernoulliLaplaceFamily::lambda(std::int64_t x) const {
  return static_cast<double>(x) * (x - W - B - 1);
}

double BernoulliLaplaceFamily::mu(std::int64_t x) const {
  // Node weight of the dual Hahn orthogonality sum. The printed sign
  // (-1)^{x+1} makes every weight negative (the pi_j display carries the
  // compensating (-1)^W); stored here with both sign factors folded in so
  // that mu > 0 and pi_j > 0.
  double numer = pochhammer(-static_cast<double>(W), x);
  numer *= numer;
  numer *= 2.0 * x - W - B - 1.0;
  for (std::int64_t i = 1; i <= W; ++i) numer *= static_cast<double>(i);  // W!
  double denom = 1.0;
  for (std::int64_t i = 1; i <= x; ++i) denom *= static_cast<double>(i);  // x!
  denom *= pochhammer(-static_cast<double>(B), x);
  denom *= pochhammer(static_cast<double>(x - W - B - 1), W + 1);
  denom *= ((x + W) % 2 == 0) ? 1.0 : -1.0;  // (-1)^{x+W}
  return numer / denom;
}

double BernoulliLaplaceFamily::pi(std::int64_t j) const { return binom(W, j) * binom(B, W - j); }

double BernoulliLaplaceFamily::dual_hahn(std::int64_t n, std::int64_t x) const {
  HypergeomSpec spec;
  spec.numerator = {-static_cast<double>(n), -static_cast<double>(x),
                    static_cast<double>(x - W - B - 1)};
  spec.denominator = {-static_cast<double>(W), -static_cast<double>(W)};
  spec.z = 1.0;
  spec.truncation = W;
  return hypergeom_truncated(spec);
}

BernoulliLaplaceFamily make_bernoulli_laplace(int W, int B) {
  if (W < 1) fail("bernoulli_laplace: W must be an integer >= 1");
  if (W > B) fail("bernoulli_laplace: the transition formulas require W <= B");
  const double dW = W, dB = B;
  auto up = [dW, dB](std::int64_t w) { return (dW - w) / dW * (dW - w) / dB; };
  auto down = [dW, dB](std::int64_t w) { return w / dW * (dB - dW + w) / dB; };
  auto stay = [dW, dB](std::int64_t w) {
    return w / dW * (dW - w) / dB + (dW - w) / dW * (dB - dW + w) / dB;
  };

  BernoulliLaplaceFamily fam;
  fam.W = W;
  fam.B = B;
  fam.chain = TridiagonalChain::from_generators(up, down, stay, W + 1);
  DiscreteMeasure measure;
  for (std::int64_t x = 0; x <= W; ++x) {
    measure.nodes.push_back(fam.eigenvalue(x));
    measure.weights.push_back(fam.mu(x));
  }
  measure.validate();
  fam.measure = std::move(measure);
  return fam;
}

// ---------------------------------------------------------------------------
// Jacobi-type block family

namespace {

struct JacobiBlocks {
  double a;  // alpha
  double b;  // beta

  double entry(double numer, double denom, std::int64_t n, const char* name) const {
    if (denom == 0.0)
      fail(std::string("jacobi_block: zero denominator in ") + name + " at n = " +
           std::to_string(n));
    return numer / denom;
  }

  DenseMatrix A(std::int64_t n) const {
    const double dn = static_cast<double>(n);
    DenseMatrix m(2, 2);
    m(0, 0) = entry(dn * (a + dn) * (b + 2 * a + 2 * dn + 3),
                    (b + a + 2 * dn + 1) * (b + a + 2 * dn + 2) * (b + 2 * a + 2 * dn + 1), n,
                    "A^{11}");
    m(0, 1) = entry(2 * dn * (b + 1),
                    (b + 2 * dn + 1) * (b + a + 2 * dn + 2) * (b + 2 * a + 2 * dn + 1), n,
                    "A^{12}");
    m(1, 0) = 0.0;
    m(1, 1) = entry(dn * (a + dn + 1) * (b + 2 * dn + 3),
                    (b + 2 * dn + 1) * (b + a + 2 * dn + 2) * (b + a + 2 * dn + 3), n, "A^{22}");
    return m;
  }

  DenseMatrix B(std::int64_t n) const {
    const double dn = static_cast<double>(n);
    DenseMatrix m(2, 2);
    m(0, 0) = 1.0 +
              entry(dn * (b + dn + 1) * (b + 2 * dn - 1),
                    (b + 2 * dn + 1) * (b + a + 2 * dn + 1), n, "B^{11}") -
              entry((dn + 1) * (b + dn + 2) * (b + 2 * dn + 1),
                    (b + 2 * dn + 3) * (b + a + 2 * dn + 3), n, "B^{11}") -
              entry(2 * (b + 1) * (b + 1),
                    (b + 2 * dn + 1) * (b + 2 * dn + 3) * (b + 2 * a + 2 * dn + 3), n, "B^{11}");
    m(0, 1) = entry(2 * (b + 1) * (a + b + dn + 2),
                    (b + 2 * dn + 3) * (b + a + 2 * dn + 2) * (b + 2 * a + 2 * dn + 3), n,
                    "B^{12}");
    m(1, 0) = entry(2 * (a + dn + 1) * (b + 1),
                    (b + 2 * dn + 1) * (b + a + 2 * dn + 3) * (b + 2 * a + 2 * dn + 3), n,
                    "B^{21}");
    m(1, 1) = 1.0 +
              entry(dn * (b + dn + 1) * (b + 2 * dn + 3),
                    (b + 2 * dn + 1) * (b + a + 2 * dn + 2), n, "B^{22}") -
              entry((dn + 1) * (b + dn + 2) * (b + 2 * dn + 5),
                    (b + 2 * dn + 3) * (b + a + 2 * dn + 4), n, "B^{22}") +
              entry(2 * (b + 1) * (b + 1),
                    (b + 2 * dn + 1) * (b + 2 * dn + 3) * (b + 2 * a + 2 * dn + 3), n, "B^{22}");
    return m;
  }

  DenseMatrix C(std::int64_t n) const {
    const double dn = static_cast<double>(n);
    DenseMatrix m(2, 2);
    m(0, 0) = entry((b + dn + 2) * (b + 2 * dn + 1) * (b + a + dn + 2),
                    (b + 2 * dn + 3) * (b + a + 2 * dn + 2) * (b + a + 2 * dn + 3), n, "C^{11}");
    m(0, 1) = 0.0;
    m(1, 0) = entry(2 * (b + 1) * (b + dn + 2),
                    (b + 2 * dn + 3) * (b + a + 2 * dn + 3) * (b + 2 * a + 2 * dn + 5), n,
                    "C^{21}");
    m(1, 1) = entry((b + dn + 2) * (b + a + dn + 3) * (b + 2 * a + 2 * dn + 3),
                    (b + a + 2 * dn + 3) * (b + a + 2 * dn + 4) * (b + 2 * a + 2 * dn + 5), n,
                    "C^{22}");
    return m;
  }
};

}  // namespace

DenseMatrix JacobiBlockFamily::psi0(double x) const {
  DenseMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = ((beta + 2 * alpha + 3) * x - 2 * (alpha + 1)) / (beta + 1);
  return m;
}

DenseMatrix JacobiBlockFamily::lambda_n(std::int64_t n) const {
  const double dn = static_cast<double>(n);
  DenseMatrix m(2, 2);
  m(0, 0) = -dn * dn - (alpha + beta + 2) * dn + alpha + 1 + (beta + 1) / 2.0;
  m(1, 1) = -dn * dn - (alpha + beta + 3) * dn;
  return m;
}

DenseMatrix JacobiBlockFamily::f_first_order_const() const {
  DenseMatrix m(2, 2);
  m(0, 0) = (alpha + 1) * (beta + 2 * alpha + 5) / (beta + 2 * alpha + 3);
  m(0, 1) = (2 * alpha + 2) / (2 * alpha + beta + 3);
  m(1, 0) = (beta + 1) / (beta + 2 * alpha + 3);
  m(1, 1) = ((alpha + 2) * beta + 2 * alpha * alpha + 5 * alpha + 4) / (beta + 2 * alpha + 3);
  return m;
}

DenseMatrix JacobiBlockFamily::f_first_order_linear() const {
  DenseMatrix m(2, 2);
  m(0, 0) = -(alpha + beta + 3);
  m(0, 1) = 1.0;
  m(1, 0) = 0.0;
  m(1, 1) = -(alpha + beta + 4);
  return m;
}

DenseMatrix JacobiBlockFamily::f_zeroth_order() const {
  DenseMatrix m(2, 2);
  m(0, 0) = alpha + 1 + (beta + 1) / 2.0;
  return m;
}

bool jacobi_block_is_stochastic(double alpha, double beta, std::int64_t block_rows) {
  const JacobiBlocks blocks{alpha, beta};
  for (std::int64_t n = 0; n < block_rows; ++n) {
    const DenseMatrix a = n == 0 ? DenseMatrix(2, 2) : blocks.A(n);
    const DenseMatrix b = blocks.B(n);
    const DenseMatrix c = blocks.C(n);
    for (int i = 0; i < 2; ++i) {
      double sum = 0.0;
      for (int j = 0; j < 2; ++j) {
        for (const DenseMatrix* blk : {&a, &b, &c}) {
          if ((*blk)(i, j) < -1e-14) return false;
          sum += (*blk)(i, j);
        }
      }
      if (std::fabs(sum - 1.0) > 1e-12) return false;
    }
  }
  return true;
}

JacobiBlockFamily make_jacobi_block(double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    fail("jacobi_block: alpha and beta must both exceed -1");
  const JacobiBlocks blocks{alpha, beta};
  // surface zero-denominator parameter errors up front
  (void)blocks.A(0);
  (void)blocks.B(0);
  (void)blocks.C(0);

  JacobiBlockFamily fam;
  fam.alpha = alpha;
  fam.beta = beta;
  const bool stochastic = jacobi_block_is_stochastic(alpha, beta);
  fam.chain = BlockChain::from_blocks(
      2, [blocks](std::int64_t n) { return blocks.A(n); },
      [blocks](std::int64_t n) { return blocks.B(n); },
      [blocks](std::int64_t n) { return blocks.C(n); }, stochastic);
  fam.sequence = MatrixPolySequence::from_chain(fam.chain);

  MatrixWeight weight;
  weight.dim = 2;
  weight.a = 0.0;
  weight.b = 1.0;
  const double al = alpha, be = beta;
  auto psi0 = [al, be](double x) {
    DenseMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    m(1, 1) = ((be + 2 * al + 3) * x - 2 * (al + 1)) / (be + 1);
    return m;
  };
  weight.weight = [al, be, psi0](double x) {
    DenseMatrix d(2, 2);
    d(0, 0) = std::pow(1.0 - x, be) * std::pow(x, al + 1.0);
    d(1, 1) = std::pow(1.0 - x, be) * std::pow(x, al);
    const DenseMatrix v = psi0(x);
    return v * d * v.transpose();
  };
  // x = sin^2(theta): dx = 2 sin cos dtheta; the Jacobi edge factors become
  // pure powers of sin and cos, smooth for the half-integer alpha, beta used
  // in practice.
  weight.t0 = 0.0;
  weight.t1 = M_PI / 2.0;
  weight.pullback = [al, be, psi0](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double x = s * s;
    DenseMatrix d(2, 2);
    d(0, 0) = 2.0 * std::pow(s, 2 * al + 3) * std::pow(c, 2 * be + 1);
    d(1, 1) = 2.0 * std::pow(s, 2 * al + 1) * std::pow(c, 2 * be + 1);
    const DenseMatrix v = psi0(x);
    return std::make_pair(x, v * d * v.transpose());
  };
  fam.weight = std::move(weight);
  return fam;
}

OperatorResidual apply_operator_F(const JacobiBlockFamily& family, std::int64_t n) {
  if (n < 0) fail("apply_operator_F: n must be >= 0");
  const auto coeffs = family.sequence.eval_coefficients(n);
  const auto& phi = coeffs.back();

  // Psi = Phi_n^* as coefficient list (real entries: transpose blocks)
  std::vector<DenseMatrix> psi;
  psi.reserve(phi.size());
  for (const DenseMatrix& m : phi) psi.push_back(m.transpose());

  const size_t deg = psi.size() - 1;
  const DenseMatrix zero(2, 2);
  std::vector<DenseMatrix> result(deg + 2, zero);  // degree can grow by 1 via x * Psi'

  // x(1-x) Psi'' = sum_k k(k-1) Psi_k (x^{k-1} - x^k)
  for (size_t k = 2; k <= deg; ++k) {
    const double f = static_cast<double>(k) * (k - 1.0);
    result[k - 1] += psi[k] * f;
    result[k] -= psi[k] * f;
  }
  // (A1c + x A1x) Psi'
  const DenseMatrix a1c = family.f_first_order_const();
  const DenseMatrix a1x = family.f_first_order_linear();
  for (size_t k = 1; k <= deg; ++k) {
    const double f = static_cast<double>(k);
    result[k - 1] += a1c * psi[k] * f;
    result[k] += a1x * psi[k] * f;
  }
  // A0 Psi - Psi Lambda_n
  const DenseMatrix a0 = family.f_zeroth_order();
  const DenseMatrix lam = family.lambda_n(n);
  double scale = 1.0;
  for (size_t k = 0; k <= deg; ++k) {
    result[k] += a0 * psi[k];
    const DenseMatrix rhs = psi[k] * lam;
    result[k] -= rhs;
    scale = std::max(scale, rhs.max_abs());
  }

  OperatorResidual out;
  out.scale = scale;
  for (const DenseMatrix& m : result) out.residual = std::max(out.residual, m.max_abs());
  return out;
}

// ---------------------------------------------------------------------------
// Chebyshev block family

DenseMatrix ChebyshevBlockFamily::closed_form(std::int64_t n, double x) const {
  const double scale = std::pow(0.5, static_cast<double>(n));
  DenseMatrix m(2, 2);
  m(0, 0) = scale * chebyshev_u(n, x);
  m(0, 1) = -scale * chebyshev_u(n - 1, x);
  m(1, 0) = m(0, 1);
  m(1, 1) = m(0, 0);
  return m;
}

double ChebyshevBlockFamily::gram_scale(std::int64_t i) const {
  return M_PI / std::pow(4.0, static_cast<double>(i));
}

ChebyshevBlockFamily make_chebyshev_block() {
  ChebyshevBlockFamily fam;
  fam.chain = BlockChain::from_blocks(
      2, [](std::int64_t) { return DenseMatrix::identity(2) * 0.25; },
      [](std::int64_t n) {
        return n == 0 ? DenseMatrix::exchange(2) * 0.5 : DenseMatrix(2, 2);
      },
      [](std::int64_t) { return DenseMatrix::identity(2); }, /*stochastic=*/false);
  fam.sequence = MatrixPolySequence::from_chain(fam.chain);

  MatrixWeight weight;
  weight.dim = 2;
  weight.a = -1.0;
  weight.b = 1.0;
  weight.weight = [](double x) {
    DenseMatrix m(2, 2);
    const double f = 1.0 / std::sqrt(1.0 - x * x);
    m(0, 0) = f;
    m(0, 1) = f * x;
    m(1, 0) = f * x;
    m(1, 1) = f;
    return m;
  };
  // x = sin(theta) turns (1 - x^2)^{-1/2} dx into dtheta exactly
  weight.t0 = -M_PI / 2.0;
  weight.t1 = M_PI / 2.0;
  weight.pullback = [](double theta) {
    const double x = std::sin(theta);
    DenseMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = x;
    m(1, 0) = x;
    m(1, 1) = 1.0;
    return std::make_pair(x, m);
  };
  fam.weight = std::move(weight);
  return fam;
}

// ---------------------------------------------------------------------------
// Registry

namespace {

double require_param(const std::map<std::string, double>& params, const std::string& family,
                     const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) fail(family + ": missing parameter '" + key + "'");
  return it->second;
}

int require_int_param(const std::map<std::string, double>& params, const std::string& family,
                      const std::string& key) {
  const double v = require_param(params, family, key);
  if (v != std::floor(v) || std::fabs(v) > 1e9)
    fail(family + ": parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

void reject_unknown(const std::map<std::string, double>& params, const std::string& family,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : params) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(family + ": unknown parameter '" + key + "'");
  }
}

}  // namespace

Family make_family(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "ehrenfest") {
    reject_unknown(params, name, {"N"});
    return make_ehrenfest(require_int_param(params, name, "N"));
  }
  if (name == "chebyshev_walk") {
    reject_unknown(params, name, {"p"});
    return make_chebyshev_walk(require_param(params, name, "p"));
  }
  if (name == "bernoulli_laplace") {
    reject_unknown(params, name, {"W", "B"});
    return make_bernoulli_laplace(require_int_param(params, name, "W"),
                                  require_int_param(params, name, "B"));
  }
  if (name == "jacobi_block") {
    reject_unknown(params, name, {"alpha", "beta"});
    return make_jacobi_block(require_param(params, name, "alpha"),
                             require_param(params, name, "beta"));
  }
  if (name == "chebyshev_block") {
    reject_unknown(params, name, {});
    return make_chebyshev_block();
  }
  fail("unknown family '" + name + "' (expected ehrenfest, chebyshev_walk, bernoulli_laplace, "
       "jacobi_block, or chebyshev_block)");
}

const char* family_name(const Family& family) {
  struct Visitor {
    const char* operator()(const EhrenfestFamily&) const { return "ehrenfest"; }
    const char* operator()(const ChebyshevWalkFamily&) const { return "chebyshev_walk"; }
    const char* operator()(const BernoulliLaplaceFamily&) const { return "bernoulli_laplace"; }
    const char* operator()(const JacobiBlockFamily&) const { return "jacobi_block"; }
    const char* operator()(const ChebyshevBlockFamily&) const { return "chebyshev_block"; }
  };
  return std::visit(Visitor{}, family);
}

bool family_is_block(const Family& family) {
  return std::holds_alternative<JacobiBlockFamily>(family) ||
         std::holds_alternative<ChebyshevBlockFamily>(family);
}

}  // namespace kmrep

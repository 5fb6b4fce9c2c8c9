#include "kmrep/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kmrep {

namespace {

constexpr double kAtomTol = 1e-9;

void check_scalar_state(const KMSystem& sys, std::int64_t state) {
  if (sys.is_block())
    throw std::invalid_argument("analysis: block systems are not supported here");
  if (state < 0) throw std::invalid_argument("analysis: state must be >= 0");
  const auto& chain = sys.scalar_chain();
  if (chain.finite() && state >= *chain.states())
    throw std::invalid_argument("analysis: state out of range");
}

double q_at(const KMSystem& sys, std::int64_t state, double x) {
  return sys.sequence().eval_sequence(x, state).back();
}

/// pi_i * integral of Q_i^2 * kernel(x) dpsi; infinity when the quadrature
/// diverges (support touching the kernel singularity).
double weighted_integral(const KMSystem& sys, std::int64_t state,
                         const std::function<double(double)>& kernel) {
  auto f = [&](double x) {
    const double q = q_at(sys, state, x);
    return q * q * kernel(x);
  };
  auto one = [](double) { return 1.0; };
  try {
    const double value = sys.pi(state) * inner_product(sys.measure(), f, one, sys.quad());
    if (!std::isfinite(value)) return std::numeric_limits<double>::infinity();
    return value;
  } catch (const QuadratureError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

double u_series(const KMSystem& sys, std::int64_t state, double z) {
  check_scalar_state(sys, state);
  if (!(std::fabs(z) < 1.0))
    throw std::domain_error("u_series: |z| must be < 1 (use return_probability at z = 1)");
  auto kernel = [z](double x) { return 1.0 / (1.0 - z * x); };
  const double value = weighted_integral(sys, state, kernel);
  if (!std::isfinite(value)) throw std::runtime_error("u_series: integral did not converge");
  return value;
}

double f_series(const KMSystem& sys, std::int64_t state, double z) {
  return 1.0 - 1.0 / u_series(sys, state, z);
}

double return_probability(const KMSystem& sys, std::int64_t state) {
  check_scalar_state(sys, state);
  if (atom_mass_at(sys.measure(), 1.0, kAtomTol) > 0.0) return 1.0;
  auto kernel = [](double x) { return 1.0 / (1.0 - x); };
  const double u1 = weighted_integral(sys, state, kernel);
  if (!std::isfinite(u1)) return 1.0;  // U(1) = infinity: recurrent
  return 1.0 - 1.0 / u1;
}

double expected_return_time(const KMSystem& sys, std::int64_t state) {
  check_scalar_state(sys, state);
  const double f1 = return_probability(sys, state);
  if (f1 < 1.0 - kAtomTol)
    throw std::domain_error(
        "expected_return_time: state is transient (return probability " + std::to_string(f1) +
        " < 1); use return_probability instead");
  const double m1 = atom_mass_at(sys.measure(), 1.0, kAtomTol);
  if (m1 <= 0.0) return std::numeric_limits<double>::infinity();  // null recurrent
  const double q1 = q_at(sys, state, 1.0);
  return 1.0 / (sys.pi(state) * m1 * q1 * q1);
}

double expected_return_time_diagnostic(const KMSystem& sys, std::int64_t state, double z) {
  check_scalar_state(sys, state);
  if (!(z > 0.0 && z < 1.0))
    throw std::domain_error("expected_return_time_diagnostic: z must lie in (0, 1)");
  const double u = u_series(sys, state, z);
  auto kernel = [z](double x) { return x / ((1.0 - z * x) * (1.0 - z * x)); };
  const double uprime = weighted_integral(sys, state, kernel);
  return uprime / (u * u);
}

Classification classify(const KMSystem& sys, std::int64_t state) {
  check_scalar_state(sys, state);
  const double m_pos = atom_mass_at(sys.measure(), 1.0, kAtomTol);
  const double m_neg = atom_mass_at(sys.measure(), -1.0, kAtomTol);
  const double pi_i = sys.pi(state);
  const double q_pos = m_pos > 0.0 ? q_at(sys, state, 1.0) : 0.0;
  const double q_neg = m_neg > 0.0 ? q_at(sys, state, -1.0) : 0.0;

  Classification out;
  out.limit_exists = m_neg == 0.0;
  const double head = pi_i * m_pos * q_pos * q_pos;
  const double tail = pi_i * m_neg * q_neg * q_neg;
  out.even_limit = head + tail;
  out.odd_limit = head - tail;
  out.limit_value = out.limit_exists ? head : 0.0;
  return out;
}

std::vector<double> first_return_series(const KMSystem& sys, std::int64_t state,
                                        std::int64_t order) {
  check_scalar_state(sys, state);
  if (order < 1 || order > 64)
    throw std::invalid_argument("first_return_series: order must lie in [1, 64]");
  std::vector<double> u(static_cast<size_t>(order) + 1);
  for (std::int64_t n = 0; n <= order; ++n) u[static_cast<size_t>(n)] = km_entry(sys, n, state, state);
  if (std::fabs(u[0] - 1.0) > 1e-9)
    throw std::runtime_error("first_return_series: u_0 != 1");

  // 1/U(z) as a power series v, then F = 1 - 1/U, so f_n = -v_n for n >= 1.
  std::vector<double> v(u.size(), 0.0);
  v[0] = 1.0 / u[0];
  for (size_t n = 1; n < u.size(); ++n) {
    double acc = 0.0;
    for (size_t k = 1; k <= n; ++k) acc += u[k] * v[n - k];
    v[n] = -acc / u[0];
  }
  std::vector<double> f(u.size() - 1);
  for (size_t n = 1; n < u.size(); ++n) f[n - 1] = -v[n];
  return f;
}

}  // namespace kmrep

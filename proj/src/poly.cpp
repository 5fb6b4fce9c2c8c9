#include "kmrep/poly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kmrep {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

ScalarPolySequence::ScalarPolySequence(TridiagonalChain chain) : chain_(std::move(chain)) {}

std::vector<double> ScalarPolySequence::eval_sequence(double x, std::int64_t n_max) const {
  if (n_max < 0) fail("eval_sequence: n_max must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n_max) + 1);
  out.push_back(1.0);
  double prev = 0.0;  // Q_{-1}
  for (std::int64_t n = 0; n < n_max; ++n) {
    if (chain_.finite() && n >= *chain_.states())
      fail("eval_sequence: coefficient undefined at index " + std::to_string(n));
    const double pn = chain_.p(n);
    if (pn == 0.0) fail("eval_sequence: p = 0 at index " + std::to_string(n));
    const double qn = n == 0 ? 0.0 : chain_.q(n);
    const double next = ((x - chain_.r(n)) * out.back() - qn * prev) / pn;
    prev = out.back();
    out.push_back(next);
  }
  return out;
}

std::vector<double> ScalarPolySequence::eval_shifted_sequence(double x, std::int64_t n_max) const {
  if (n_max < 0) fail("eval_shifted_sequence: n_max must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n_max) + 1);
  out.push_back(1.0);
  double prev = 0.0;
  for (std::int64_t n = 0; n < n_max; ++n) {
    const std::int64_t s = n + 1;  // shifted coefficient index
    if (chain_.finite() && s >= *chain_.states())
      fail("eval_shifted_sequence: coefficient undefined at index " + std::to_string(s));
    const double ps = chain_.p(s);
    if (ps == 0.0) fail("eval_shifted_sequence: p = 0 at index " + std::to_string(s));
    const double qs = n == 0 ? 0.0 : chain_.q(s);
    const double next = ((x - chain_.r(s)) * out.back() - qs * prev) / ps;
    prev = out.back();
    out.push_back(next);
  }
  return out;
}

MatrixPolySequence MatrixPolySequence::from_chain(const BlockChain& chain) {
  MatrixPolySequence seq;
  seq.dim_ = chain.block_dim();
  seq.a_ = [chain](std::int64_t n) { return chain.A(n); };
  seq.b_ = [chain](std::int64_t n) { return chain.B(n); };
  seq.c_ = [chain](std::int64_t n) { return chain.C(n); };
  return seq;
}

MatrixPolySequence MatrixPolySequence::from_coefficients(int dim, Block A, Block B, Block C) {
  if (dim < 1) fail("MatrixPolySequence: dim must be positive");
  if (!A || !B || !C) fail("MatrixPolySequence: missing coefficient callback");
  MatrixPolySequence seq;
  seq.dim_ = dim;
  seq.a_ = std::move(A);
  seq.b_ = std::move(B);
  seq.c_ = std::move(C);
  return seq;
}

std::vector<DenseMatrix> MatrixPolySequence::eval_sequence(double x, std::int64_t n_max) const {
  if (n_max < 0) fail("eval_sequence: n_max must be >= 0");
  std::vector<DenseMatrix> out;
  out.reserve(static_cast<size_t>(n_max) + 1);
  out.push_back(DenseMatrix::identity(dim_));
  DenseMatrix prev(dim_, dim_);  // Q_{-1} = 0
  for (std::int64_t n = 0; n < n_max; ++n) {
    const DenseMatrix cn = c_(n);
    Inverse ci;
    try {
      ci = invert_small(cn, "C[" + std::to_string(n) + "]");
    } catch (const std::runtime_error&) {
      fail("eval_sequence: singular C at index " + std::to_string(n));
    }
    DenseMatrix rhs = out.back() * x - b_(n) * out.back();
    if (n > 0) rhs -= a_(n) * prev;
    prev = out.back();
    out.push_back(ci.inverse * rhs);
  }
  return out;
}

std::vector<std::vector<DenseMatrix>> MatrixPolySequence::eval_coefficients(
    std::int64_t n_max) const {
  if (n_max < 0) fail("eval_coefficients: n_max must be >= 0");
  const DenseMatrix zero(dim_, dim_);
  std::vector<std::vector<DenseMatrix>> out;
  out.push_back({DenseMatrix::identity(dim_)});
  std::vector<DenseMatrix> prev;  // Q_{-1} = 0 (empty coefficient list)
  for (std::int64_t n = 0; n < n_max; ++n) {
    const DenseMatrix cn = c_(n);
    Inverse ci;
    try {
      ci = invert_small(cn, "C[" + std::to_string(n) + "]");
    } catch (const std::runtime_error&) {
      fail("eval_coefficients: singular C at index " + std::to_string(n));
    }
    const auto& cur = out.back();
    const DenseMatrix bn = b_(n);
    const DenseMatrix an = a_(n);
    std::vector<DenseMatrix> next(cur.size() + 1, zero);
    for (size_t k = 0; k < cur.size(); ++k) {
      next[k + 1] += cur[k];       // x * Q_n
      next[k] -= bn * cur[k];      // - B_n Q_n
    }
    if (n > 0)
      for (size_t k = 0; k < prev.size(); ++k) next[k] -= an * prev[k];
    for (auto& coeff : next) coeff = ci.inverse * coeff;
    prev = cur;
    out.push_back(std::move(next));
  }
  return out;
}

double hypergeom_truncated(const HypergeomSpec& spec) {
  if (spec.truncation < 0) fail("hypergeom_truncated: truncation must be >= 0");
  double sum = 1.0;
  double term = 1.0;
  for (std::int64_t n = 0; n < spec.truncation; ++n) {
    double factor = spec.z / static_cast<double>(n + 1);
    for (double a : spec.numerator) factor *= a + static_cast<double>(n);
    for (double b : spec.denominator) {
      const double f = b + static_cast<double>(n);
      if (f == 0.0)
        throw std::domain_error("hypergeom_truncated: zero denominator Pochhammer factor at term " +
                                std::to_string(n + 1));
      factor /= f;
    }
    term *= factor;
    if (term == 0.0) break;  // a numerator Pochhammer terminated the series
    sum += term;
  }
  return sum;
}

std::vector<double> ratio_convergents(const TridiagonalChain& chain, double x,
                                      std::int64_t n_max) {
  if (n_max < 1) fail("ratio_convergents: n_max must be >= 1");
  // D_n = det(xI - P over states 0..n-1), E_n = det(xI - P over states 1..n).
  // q_{n-1}/Q_n = p_0 E_{n-1} / D_n; both determinant recursions stay defined
  // through the full matrix of a finite chain.
  const std::int64_t last_n =
      chain.finite() ? std::min<std::int64_t>(n_max, *chain.states()) : n_max;
  const double p0 = chain.p(0);

  std::vector<double> out;
  out.reserve(static_cast<size_t>(n_max));
  double d_prev = 1.0;            // D_0
  double d_cur = x - chain.r(0);  // D_1
  double e_prev = 0.0;            // unused until E_1 exists
  double e_cur = 1.0;             // E_0
  out.push_back(p0 * e_cur / d_cur);  // n = 1: q_0 / Q_1

  for (std::int64_t n = 2; n <= last_n; ++n) {
    const double diag = x - chain.r(n - 1);
    const double cross = chain.p(n - 2) * chain.q(n - 1);
    const double d_next = diag * d_cur - cross * d_prev;  // D_n
    d_prev = d_cur;
    d_cur = d_next;
    const double e_next = n == 2 ? x - chain.r(1)               // E_1
                                 : diag * e_cur - cross * e_prev;  // E_{n-1}
    e_prev = e_cur;
    e_cur = e_next;
    out.push_back(p0 * e_cur / d_cur);
  }
  // finite chain: continued fraction has terminated; repeat the exact value
  while (static_cast<std::int64_t>(out.size()) < n_max) out.push_back(out.back());
  return out;
}

}  // namespace kmrep

#include "kmrep/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kmrep {

DenseMatrix::DenseMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("DenseMatrix: dimensions must be positive");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("DenseMatrix: dimensions must be positive");
  data_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_)
      throw std::invalid_argument("DenseMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::exchange(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, n - 1 - i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::row_sum(int i) const {
  double s = 0.0;
  for (int j = 0; j < cols_; ++j) s += (*this)(i, j);
  return s;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

bool DenseMatrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("DenseMatrix: shape mismatch in +=");
  for (size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("DenseMatrix: shape mismatch in -=");
  for (size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in *");
  DenseMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

double DenseMatrix::max_abs_diff(const DenseMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("DenseMatrix: shape mismatch in max_abs_diff");
  double m = 0.0;
  for (size_t k = 0; k < data_.size(); ++k) m = std::max(m, std::fabs(data_[k] - other.data_[k]));
  return m;
}

std::string DenseMatrix::to_string(int precision) const {
  std::string out;
  char buf[64];
  for (int i = 0; i < rows_; ++i) {
    out += i == 0 ? "[" : " ";
    for (int j = 0; j < cols_; ++j) {
      std::snprintf(buf, sizeof buf, "% .*g", precision, (*this)(i, j));
      out += buf;
      if (j + 1 < cols_) out += " ";
    }
    out += i + 1 < rows_ ? "\n" : "]";
  }
  return out;
}

namespace {

double inf_norm(const DenseMatrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += std::fabs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

Inverse invert_small(const DenseMatrix& m, const std::string& label) {
  if (m.rows() != m.cols()) throw std::invalid_argument("invert_small: matrix not square: " + label);
  const int n = m.rows();
  const double norm = inf_norm(m);

  if (n == 1) {
    if (m(0, 0) == 0.0) throw std::runtime_error("singular matrix: " + label);
    DenseMatrix inv(1, 1);
    inv(0, 0) = 1.0 / m(0, 0);
    return {inv, norm * std::fabs(inv(0, 0))};
  }
  if (n == 2) {
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (det == 0.0 || !std::isfinite(1.0 / det))
      throw std::runtime_error("singular matrix: " + label);
    DenseMatrix inv(2, 2);
    inv(0, 0) = m(1, 1) / det;
    inv(0, 1) = -m(0, 1) / det;
    inv(1, 0) = -m(1, 0) / det;
    inv(1, 1) = m(0, 0) / det;
    const double cond = norm * inf_norm(inv);
    if (!std::isfinite(cond)) throw std::runtime_error("singular matrix: " + label);
    return {inv, cond};
  }

  // Gauss-Jordan with partial pivoting for the (rare) d > 2 case.
  DenseMatrix a = m;
  DenseMatrix inv = DenseMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::fabs(a(i, col)) > std::fabs(a(piv, col))) piv = i;
    if (a(piv, col) == 0.0) throw std::runtime_error("singular matrix: " + label);
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const double d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const double f = a(i, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return {inv, norm * inf_norm(inv)};
}

double determinant(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const int n = m.rows();
  DenseMatrix a = m;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::fabs(a(i, col)) > std::fabs(a(piv, col))) piv = i;
    if (a(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (int i = col + 1; i < n; ++i) {
      const double f = a(i, col) / a(col, col);
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

}  // namespace kmrep

#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace kmrep {

/// Small dense row-major real matrix. Sized for blocks and truncated chain
/// corners (a few thousand rows at most), not for large-scale linear algebra.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, double fill = 0.0);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(int n);
  /// Anti-diagonal identity (ones on the anti-diagonal).
  static DenseMatrix exchange(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  DenseMatrix transpose() const;
  double row_sum(int i) const;
  double max_abs() const;
  bool all_finite() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }
  friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

  /// Largest absolute entry of (*this - other); matrices must share shape.
  double max_abs_diff(const DenseMatrix& other) const;

  std::string to_string(int precision = 6) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct Inverse {
  DenseMatrix inverse;
  double condition;  // infinity-norm condition estimate
};

/// Inverts a small matrix (closed form for 1x1/2x2, Gauss-Jordan with partial
/// pivoting otherwise). Throws std::runtime_error mentioning `label` when the
/// matrix is numerically singular.
Inverse invert_small(const DenseMatrix& m, const std::string& label);

/// det(m) by LU with partial pivoting; independent of any recurrence shortcut.
double determinant(const DenseMatrix& m);

}  // namespace kmrep

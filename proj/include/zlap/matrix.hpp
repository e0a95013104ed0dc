#pragma once

#include <vector>

namespace zlap {

using Vec = std::vector<double>;

// Dense row-major square-friendly matrix. Everything in this toolkit is
// dense by design; the workloads are dominated by eigendecompositions and
// full matrix products at n <= ~2000.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);

  static Matrix identity(int n);
  static Matrix diagonal(const Vec& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

// Row-signal convention: signals are row vectors multiplied on the right
// by operators.
Vec operator*(const Vec& x, const Matrix& a);

Matrix transpose(const Matrix& a);

// diag(s) * a  (scales row i by s[i])
Matrix scale_rows(const Vec& s, const Matrix& a);
// a * diag(s)  (scales column j by s[j])
Matrix scale_cols(const Matrix& a, const Vec& s);

double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const Vec& a, const Vec& b);

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& v);
double sum(const Vec& v);
double norm1(const Vec& v);

// Largest absolute row sum; submultiplicative, used for exponential scaling.
double inf_norm(const Matrix& a);

}  // namespace zlap

#pragma once

#include <cstddef>
#include <vector>

namespace bousslyap {

/// Dense square matrix, row-major. Doubles both as a linear operator
/// (stencil matrices) and as a grid function of nodal values; entry (j, m)
/// of a field is the value at (x_j, y_m).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0)
      : n_(n), data_(n * n, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t side() const { return n_; }
  std::size_t count() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  /// this += s * other
  Matrix& add_scaled(const Matrix& other, double s);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

/// Max absolute row sum (operator infinity norm).
double inf_norm(const Matrix& a);

/// Largest absolute entry (sup norm of the grid function).
double max_abs(const Matrix& a);

double max_abs_diff(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& a);

/// Grid function of nodal values U_{j,m} or V_{j,m}.
using Field = Matrix;

}  // namespace bousslyap

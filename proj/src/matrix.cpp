#include "bousslyap/matrix.hpp"

#include <cmath>

#include "bousslyap/errors.hpp"
#include "bousslyap/kernels.hpp"

namespace bousslyap {
namespace {

void require_same_side(const Matrix& a, const Matrix& b, const char* op) {
  if (a.side() != b.side())
    throw ValidationError(std::string(op) + ": dimension mismatch (" +
                          std::to_string(a.side()) + " vs " +
                          std::to_string(b.side()) + ")");
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_side(*this, other, "matrix add");
  kernels::axpy(1.0, other.data(), data(), count());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_side(*this, other, "matrix subtract");
  kernels::axpy(-1.0, other.data(), data(), count());
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  kernels::scale(s, data(), count());
  return *this;
}

Matrix& Matrix::add_scaled(const Matrix& other, double s) {
  require_same_side(*this, other, "matrix add_scaled");
  kernels::axpy(s, other.data(), data(), count());
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) {
  a += b;
  return a;
}

Matrix operator-(Matrix a, const Matrix& b) {
  a -= b;
  return a;
}

Matrix operator*(double s, Matrix a) {
  a *= s;
  return a;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require_same_side(a, b, "matrix multiply");
  Matrix c(a.side());
  kernels::matmul(a.data(), b.data(), c.data(), a.side());
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.side());
  for (std::size_t i = 0; i < a.side(); ++i)
    for (std::size_t j = 0; j < a.side(); ++j) t(j, i) = a(i, j);
  return t;
}

double inf_norm(const Matrix& a) {
  return kernels::inf_norm(a.data(), a.side());
}

double max_abs(const Matrix& a) {
  return kernels::max_abs(a.data(), a.count());
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_side(a, b, "max_abs_diff");
  double best = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::size_t i = 0; i < a.count(); ++i) {
    const double d = std::fabs(pa[i] - pb[i]);
    if (d > best) best = d;
  }
  return best;
}

bool all_finite(const Matrix& a) {
  return kernels::all_finite(a.data(), a.count());
}

}  // namespace bousslyap

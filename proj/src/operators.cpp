#include "bousslyap/operators.hpp"

#include <cstddef>

#include "bousslyap/errors.hpp"
#include "bousslyap/kernels.hpp"

namespace bousslyap {
namespace {

/// Tridiagonal with constant diagonal/off-diagonal and the Neumann ghost
/// doubling in the first and last rows.
Matrix neumann_tridiagonal(std::size_t n, double diag, double off) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = diag;
    if (i > 0) m(i, i - 1) = off;
    if (i + 1 < n) m(i, i + 1) = off;
  }
  m(0, 1) = 2.0 * off;
  m(n - 1, n - 2) = 2.0 * off;
  return m;
}

void require_square_pair(const Matrix& p, const Matrix& x, const char* op) {
  if (p.side() != x.side())
    throw ValidationError(std::string(op) + ": dimension mismatch (" +
                          std::to_string(p.side()) + " vs " +
                          std::to_string(x.side()) + ")");
  if (p.side() < 1) throw ValidationError(std::string(op) + ": empty matrix");
}

}  // namespace

CoefficientSet coefficients(const GridSpec& grid) {
  const double alpha = grid.alpha;
  const double sigma = grid.sigma;
  const double delta = grid.delta;
  CoefficientSet c;
  c.a1 = 0.5 + 2.0 * alpha * sigma;
  c.a2 = -alpha * sigma;
  c.b1 = 1.0 - 2.0 * (1.0 - 2.0 * alpha) * sigma;
  c.b2 = (1.0 - 2.0 * alpha) * sigma;
  c.c1 = (1.0 - 2.0 * alpha) * delta;
  c.c2 = alpha * delta;
  c.omega = 2.0 * c.a2 * c.c2;
  c.omega1 = c.a1 + 6.0 * c.omega;
  c.omega1_bar = c.omega1 + c.omega;
  c.omega2 = c.a2 - 4.0 * c.omega;
  return c;
}

SchemeMatrices build_matrices(const GridSpec& grid, bool right_transpose) {
  const auto n = static_cast<std::size_t>(grid.J) + 1;
  SchemeMatrices m;
  m.coeffs = coefficients(grid);
  m.right_transpose = right_transpose;
  m.A = neumann_tridiagonal(n, m.coeffs.a1, m.coeffs.a2);
  m.B = neumann_tridiagonal(n, m.coeffs.b1, m.coeffs.b2);
  m.R = neumann_tridiagonal(n, -2.0, 1.0);
  const Matrix R2 = multiply(m.R, m.R);
  m.W = m.A;
  m.W.add_scaled(R2, 2.0 * m.coeffs.a2 * m.coeffs.c2);
  m.B_tilde = m.B;
  m.B_tilde.add_scaled(R2, -2.0 * m.coeffs.a2 * m.coeffs.c1);
  return m;
}

Matrix lyapunov_apply(const Matrix& Q, const Matrix& X) {
  return sylvester_apply(Q, Q, X, false);
}

Matrix sylvester_apply(const Matrix& P, const Matrix& Q, const Matrix& X,
                       bool right_transpose) {
  require_square_pair(P, X, "sylvester_apply");
  require_square_pair(Q, X, "sylvester_apply");
  Matrix out = multiply(P, X);
  if (right_transpose)
    kernels::matmul_nt_acc(X.data(), Q.data(), out.data(), X.side());
  else
    kernels::matmul_acc(X.data(), Q.data(), out.data(), X.side());
  return out;
}

double lyapunov_deviation(const GridSpec& grid) {
  const SchemeMatrices m = build_matrices(grid, false);
  const auto n = m.A.side();
  Matrix w_shift = m.W;
  Matrix a_shift = m.A;
  for (std::size_t i = 0; i < n; ++i) {
    w_shift(i, i) -= 0.5;
    a_shift(i, i) -= 0.5;
  }
  return inf_norm(w_shift) + inf_norm(a_shift);
}

}  // namespace bousslyap

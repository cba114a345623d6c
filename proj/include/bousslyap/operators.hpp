#pragma once

#include "bousslyap/grid.hpp"
#include "bousslyap/matrix.hpp"

namespace bousslyap {

/// Scheme coefficients as functions of (alpha, sigma, delta):
///   a1 = 1/2 + 2*alpha*sigma          a2 = -alpha*sigma
///   b1 = 1 - 2*(1-2*alpha)*sigma      b2 = (1-2*alpha)*sigma
///   c1 = (1-2*alpha)*delta            c2 = alpha*delta
/// and the derived pentadiagonal weights of W = A + 2*a2*c2*R^2:
///   omega = 2*a2*c2, omega1 = a1 + 6*omega, omega1_bar = omega1 + omega,
///   omega2 = a2 - 4*omega.
struct CoefficientSet {
  double a1 = 0.0, a2 = 0.0;
  double b1 = 0.0, b2 = 0.0;
  double c1 = 0.0, c2 = 0.0;
  double omega = 0.0, omega1 = 0.0, omega1_bar = 0.0, omega2 = 0.0;
};

CoefficientSet coefficients(const GridSpec& grid);

/// The five structural matrices of the scheme, all (J+1) x (J+1):
///   A, B  tridiagonal time-level weights (diag a1/b1, off-diag a2/b2),
///   R     the second-difference stencil (diag -2, off-diag 1),
/// each with the first and last off-diagonal entry doubled -- the ghost-point
/// elimination of the homogeneous Neumann condition. W and B_tilde are the
/// operators of the reduced one-unknown update,
///   W = A + 2*a2*c2*R^2 and B_tilde = B - 2*a2*c1*R^2,
/// assembled by matrix arithmetic (the omega pattern is used only as a test
/// oracle, so a transcription slip in either route is caught).
struct SchemeMatrices {
  Matrix A, B, R, W, B_tilde;
  CoefficientSet coeffs;
  bool right_transpose = false;
};

SchemeMatrices build_matrices(const GridSpec& grid, bool right_transpose);

/// Q*X + X*Q, the Lyapunov operator in its literal form.
Matrix lyapunov_apply(const Matrix& Q, const Matrix& X);

/// Sylvester form P*X + X*Q, or P*X + X*Q^T when right_transpose is set.
/// The transpose variant re-applies the ghost stencil along the y direction
/// and is the one that preserves constant fields exactly.
Matrix sylvester_apply(const Matrix& P, const Matrix& Q, const Matrix& X,
                       bool right_transpose);

/// q = ||W - I/2|| + ||A - I/2|| in the infinity norm: how far the per-step
/// operator L_{W,A} sits from the identity. Contraction factor of the
/// fixed-point solver; decays like h^(2s) under the coupled time step.
double lyapunov_deviation(const GridSpec& grid);

}  // namespace bousslyap

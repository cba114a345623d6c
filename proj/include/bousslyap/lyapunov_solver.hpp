#pragma once

#include <vector>

#include "bousslyap/grid.hpp"
#include "bousslyap/matrix.hpp"

namespace bousslyap {

enum class SolveMethod { fixed_point, kronecker };

struct SolverOptions {
  SolveMethod method = SolveMethod::fixed_point;
  double tol = 1e-12;  // residual infinity-norm target
  int max_iter = 200;
  bool right_transpose = false;
  int kron_cap = 33;                  // largest side the dense path accepts
  double pivot_rel_threshold = 1e-12;  // relative to the assembled system's norm
};

/// What the solve actually did; residual_norm is recomputed from the
/// returned X, and contraction_factor is ||W - I/2|| + ||A - I/2|| of the
/// arguments as given (the computable surrogate for the distance of the
/// per-step operator from the identity).
struct SolveCertificate {
  int iterations = 0;
  double contraction_factor = 0.0;
  double residual_norm = 0.0;
  SolveMethod method_used = SolveMethod::fixed_point;
  std::vector<double> residual_history;
};

struct SolveResult {
  Matrix X;
  SolveCertificate cert;
};

/// Solves W*X + X*A = C (or W*X + X*A^T = C) by the fixed-point iteration
///   X_{k+1} = C - (W - I/2) X_k - X_k (A(^T) - I/2),
/// which contracts with factor q = ||W - I/2|| + ||A(^T) - I/2|| < 1.
/// Throws ContractionError when q >= 1 and NonConvergenceError when
/// max_iter runs out.
SolveResult solve_fixed_point(const Matrix& W, const Matrix& A,
                              const Matrix& C, const SolverOptions& opts);

/// Exact dense route: vectorizes to (I (x) W + A^T (x) I) vec(X) = vec(C)
/// with column-major vec (A (x) I for the transpose variant) and solves by
/// pivoted elimination. Oracle for the fixed-point path; throws
/// SingularMatrixError on a sub-threshold pivot and ValidationError when the
/// side exceeds the cap.
Matrix solve_kronecker(const Matrix& W, const Matrix& A, const Matrix& C,
                       bool right_transpose, int cap = 33,
                       double pivot_rel_threshold = 1e-12);

/// Routes to the configured method and always fills a certificate.
SolveResult solve(const Matrix& W, const Matrix& A, const Matrix& C,
                  const SolverOptions& opts);

/// Numerical check that the vectorized per-step operator is invertible on
/// this grid: runs pivoted elimination and reports the smallest pivot.
struct SolvabilityReport {
  bool invertible = false;
  double min_pivot = 0.0;
};

SolvabilityReport solvability_check(const GridSpec& grid, bool right_transpose,
                                    int cap = 33,
                                    double pivot_rel_threshold = 1e-12);

}  // namespace bousslyap

#include "bousslyap/lyapunov_solver.hpp"

#include <cstddef>
#include <string>
#include <utility>

#include "bousslyap/dense_lu.hpp"
#include "bousslyap/errors.hpp"
#include "bousslyap/kernels.hpp"
#include "bousslyap/operators.hpp"

namespace bousslyap {
namespace {

void require_compatible(const Matrix& W, const Matrix& A, const Matrix& C) {
  if (W.side() != A.side() || W.side() != C.side())
    throw ValidationError("lyapunov solve: W, A, C must share one side (got " +
                          std::to_string(W.side()) + ", " +
                          std::to_string(A.side()) + ", " +
                          std::to_string(C.side()) + ")");
  if (W.side() == 0) throw ValidationError("lyapunov solve: empty system");
}

Matrix shifted_by_minus_half(const Matrix& m) {
  Matrix out = m;
  for (std::size_t i = 0; i < out.side(); ++i) out(i, i) -= 0.5;
  return out;
}

double residual_norm(const Matrix& W, const Matrix& A, const Matrix& X,
                     const Matrix& C, bool right_transpose) {
  Matrix r = sylvester_apply(W, A, X, right_transpose);
  r -= C;
  return inf_norm(r);
}

/// vec is column-major: vec(X)[j*n + i] = X(i, j).
std::vector<double> vectorize(const Matrix& X) {
  const std::size_t n = X.side();
  std::vector<double> v(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) v[j * n + i] = X(i, j);
  return v;
}

Matrix unvectorize(const std::vector<double>& v, std::size_t n) {
  Matrix X(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) X(i, j) = v[j * n + i];
  return X;
}

/// I (x) W + A^T (x) I, or I (x) W + A (x) I under the transpose variant.
std::vector<double> assemble_kronecker(const Matrix& W, const Matrix& A,
                                       bool right_transpose) {
  const std::size_t n = W.side();
  const std::size_t N = n * n;
  std::vector<double> M(N * N, 0.0);
  for (std::size_t jb = 0; jb < n; ++jb) {
    for (std::size_t i = 0; i < n; ++i) {
      double* row = &M[(jb * n + i) * N];
      for (std::size_t ip = 0; ip < n; ++ip) row[jb * n + ip] += W(i, ip);
      for (std::size_t jp = 0; jp < n; ++jp)
        row[jp * n + i] += right_transpose ? A(jb, jp) : A(jp, jb);
    }
  }
  return M;
}

void check_cap(std::size_t side, int cap) {
  if (side > static_cast<std::size_t>(cap))
    throw ValidationError("kronecker solve: side " + std::to_string(side) +
                          " exceeds the dense cap " + std::to_string(cap) +
                          " ((J+1)^2 unknowns)");
}

double kron_scale(const std::vector<double>& M, std::size_t N) {
  return kernels::inf_norm(M.data(), N);
}

}  // namespace

SolveResult solve_fixed_point(const Matrix& W, const Matrix& A,
                              const Matrix& C, const SolverOptions& opts) {
  require_compatible(W, A, C);
  if (!(opts.tol > 0.0))
    throw ValidationError("solver tol must be > 0");
  if (opts.max_iter < 1)
    throw ValidationError("solver max_iter must be >= 1");

  const std::size_t n = W.side();
  const Matrix w_shift = shifted_by_minus_half(W);
  const Matrix a_right = opts.right_transpose ? transpose(A) : A;
  const Matrix a_shift = shifted_by_minus_half(a_right);

  const double q_paper = inf_norm(w_shift) + inf_norm(shifted_by_minus_half(A));
  const double q_eff = inf_norm(w_shift) + inf_norm(a_shift);
  if (q_eff >= 1.0)
    throw ContractionError(
        q_eff, "lyapunov solve: contraction factor q=" + std::to_string(q_eff) +
                   " >= 1; the time step is too coarse relative to h^(2+s) "
                   "for this grid");

  SolveResult out;
  out.cert.contraction_factor = q_paper;
  out.cert.method_used = SolveMethod::fixed_point;
  out.X = C;

  Matrix tmp(n);
  for (int k = 1; k <= opts.max_iter; ++k) {
    // tmp = (W - I/2) X + X (A(^T) - I/2); the residual of the current
    // iterate is X + tmp - C, and the next iterate is C - tmp.
    kernels::matmul(w_shift.data(), out.X.data(), tmp.data(), n);
    kernels::matmul_acc(out.X.data(), a_shift.data(), tmp.data(), n);

    Matrix resid = out.X;
    resid += tmp;
    resid -= C;
    const double res = inf_norm(resid);
    out.cert.residual_history.push_back(res);
    out.cert.iterations = k;
    if (res <= opts.tol) {
      out.cert.residual_norm =
          residual_norm(W, A, out.X, C, opts.right_transpose);
      return out;
    }
    Matrix next = C;
    next -= tmp;
    out.X = std::move(next);
  }
  throw NonConvergenceError(
      opts.max_iter, out.cert.residual_history.back(),
      "lyapunov solve: no convergence to tol=" + std::to_string(opts.tol) +
          " within " + std::to_string(opts.max_iter) + " iterations");
}

Matrix solve_kronecker(const Matrix& W, const Matrix& A, const Matrix& C,
                       bool right_transpose, int cap,
                       double pivot_rel_threshold) {
  require_compatible(W, A, C);
  check_cap(W.side(), cap);
  const std::size_t n = W.side();
  const std::size_t N = n * n;
  std::vector<double> M = assemble_kronecker(W, A, right_transpose);
  const double floor = pivot_rel_threshold * kron_scale(M, N);
  LuFactorization f = lu_factor(std::move(M), N, floor);
  if (f.singular)
    throw SingularMatrixError(
        f.min_pivot,
        "kronecker solve: pivot " + std::to_string(f.min_pivot) +
            " under threshold " + std::to_string(floor) +
            "; the vectorized operator is numerically singular");
  return unvectorize(lu_solve(f, vectorize(C)), n);
}

SolveResult solve(const Matrix& W, const Matrix& A, const Matrix& C,
                  const SolverOptions& opts) {
  if (opts.method == SolveMethod::fixed_point)
    return solve_fixed_point(W, A, C, opts);

  SolveResult out;
  out.X = solve_kronecker(W, A, C, opts.right_transpose, opts.kron_cap,
                          opts.pivot_rel_threshold);
  out.cert.method_used = SolveMethod::kronecker;
  out.cert.iterations = 1;
  out.cert.contraction_factor =
      inf_norm(shifted_by_minus_half(W)) + inf_norm(shifted_by_minus_half(A));
  out.cert.residual_norm = residual_norm(W, A, out.X, C, opts.right_transpose);
  return out;
}

SolvabilityReport solvability_check(const GridSpec& grid, bool right_transpose,
                                    int cap, double pivot_rel_threshold) {
  const SchemeMatrices m = build_matrices(grid, right_transpose);
  check_cap(m.W.side(), cap);
  const std::size_t N = m.W.side() * m.W.side();
  std::vector<double> M = assemble_kronecker(m.W, m.A, right_transpose);
  const double floor = pivot_rel_threshold * kron_scale(M, N);
  const LuFactorization f = lu_factor(std::move(M), N, floor);
  return {!f.singular, f.min_pivot};
}

}  // namespace bousslyap

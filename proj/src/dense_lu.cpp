#include "bousslyap/dense_lu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bousslyap/errors.hpp"
#include "bousslyap/kernels.hpp"

namespace bousslyap {

LuFactorization lu_factor(std::vector<double> m, std::size_t n,
                          double abs_pivot_floor) {
  if (m.size() != n * n)
    throw ValidationError("lu_factor: buffer size does not match n*n");
  LuFactorization f;
  f.n = n;
  f.perm.resize(n);
  f.min_pivot = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    double best_abs = std::fabs(m[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::fabs(m[i * n + k]);
      if (v > best_abs) {
        best_abs = v;
        best = i;
      }
    }
    f.perm[k] = best;
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(m[k * n + j], m[best * n + j]);
    }
    f.min_pivot = std::min(f.min_pivot, best_abs);
    if (best_abs < abs_pivot_floor) {
      f.singular = true;
      break;
    }
    const double pivot = m[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = m[i * n + k] / pivot;
      m[i * n + k] = factor;
      if (factor != 0.0 && k + 1 < n)
        kernels::axpy(-factor, &m[k * n + k + 1], &m[i * n + k + 1],
                      n - k - 1);
    }
  }
  f.lu = std::move(m);
  return f;
}

std::vector<double> lu_solve(const LuFactorization& f,
                             std::vector<double> rhs) {
  if (f.singular)
    throw SingularMatrixError(f.min_pivot,
                              "lu_solve: factorization is singular");
  const std::size_t n = f.n;
  if (rhs.size() != n)
    throw ValidationError("lu_solve: rhs size " + std::to_string(rhs.size()) +
                          " does not match n=" + std::to_string(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (f.perm[k] != k) std::swap(rhs[k], rhs[f.perm[k]]);
  }
  // Ly = Pb
  for (std::size_t i = 1; i < n; ++i) {
    double acc = rhs[i];
    const double* row = &f.lu[i * n];
    for (std::size_t j = 0; j < i; ++j) acc -= row[j] * rhs[j];
    rhs[i] = acc;
  }
  // Ux = y
  for (std::size_t ii = n; ii-- > 0;) {
    double acc = rhs[ii];
    const double* row = &f.lu[ii * n];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= row[j] * rhs[j];
    rhs[ii] = acc / row[ii];
  }
  return rhs;
}

}  // namespace bousslyap

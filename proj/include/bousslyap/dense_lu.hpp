#pragma once

#include <cstddef>
#include <vector>

namespace bousslyap {

/// Partial-pivoting LU of a dense row-major n x n matrix. min_pivot is the
/// smallest absolute pivot met; singular is set (and elimination stops) when
/// a pivot falls under the caller's floor.
struct LuFactorization {
  std::size_t n = 0;
  std::vector<double> lu;       // L strictly below the diagonal (unit), U on and above
  std::vector<std::size_t> perm;  // perm[k] = row swapped into position k at step k
  double min_pivot = 0.0;
  bool singular = false;
};

LuFactorization lu_factor(std::vector<double> m, std::size_t n,
                          double abs_pivot_floor);

/// Back/forward substitution; factorization must not be singular.
std::vector<double> lu_solve(const LuFactorization& f,
                             std::vector<double> rhs);

}  // namespace bousslyap

#include <cmath>
#include <cstring>

#include "kernels_impl.hpp"

// Reference kernels: straightforward loops, kept branch-free in the hot
// paths. These define the semantics the SIMD variants are tested against.
namespace bousslyap::kernels {
namespace {

void matmul_acc_scalar(const double* a, const double* b, double* c,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + i * n;
    double* crow = c + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = arow[k];
      const double* brow = b + k * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void matmul_scalar(const double* a, const double* b, double* c,
                   std::size_t n) {
  std::memset(c, 0, n * n * sizeof(double));
  matmul_acc_scalar(a, b, c, n);
}

void matmul_nt_acc_scalar(const double* a, const double* b, double* c,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + i * n;
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double* brow = b + j * n;
      double dot = 0.0;
      for (std::size_t k = 0; k < n; ++k) dot += arow[k] * brow[k];
      crow[j] += dot;
    }
  }
}

double inf_norm_scalar(const double* a, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + i * n;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += std::fabs(arow[j]);
    if (sum > best) best = sum;
  }
  return best;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, double* x, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) x[i] *= alpha;
}

void square_scalar(const double* x, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] = x[i] * x[i];
}

void average_scalar(const double* x, const double* y, double* z,
                    std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) z[i] = 0.5 * (x[i] + y[i]);
}

double max_abs_scalar(const double* x, std::size_t len) {
  double best = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double v = std::fabs(x[i]);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      matmul_scalar,  matmul_acc_scalar, matmul_nt_acc_scalar,
      inf_norm_scalar, axpy_scalar,      scale_scalar,
      square_scalar,  average_scalar,    max_abs_scalar,
  };
  return table;
}

}  // namespace bousslyap::kernels

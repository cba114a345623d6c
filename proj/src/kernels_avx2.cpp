#include "kernels_impl.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>
#include <cstring>

namespace bousslyap::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  const __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

inline __m256d abs_pd(__m256d v) {
  const __m256d mask =
      _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(v, mask);
}

void matmul_acc_avx2(const double* a, const double* b, double* c,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + i * n;
    double* crow = c + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const __m256d aik = _mm256_set1_pd(arow[k]);
      const double* brow = b + k * n;
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        __m256d cj = _mm256_loadu_pd(crow + j);
        cj = _mm256_fmadd_pd(aik, _mm256_loadu_pd(brow + j), cj);
        _mm256_storeu_pd(crow + j, cj);
      }
      for (; j < n; ++j) crow[j] += arow[k] * brow[j];
    }
  }
}

void matmul_avx2(const double* a, const double* b, double* c, std::size_t n) {
  std::memset(c, 0, n * n * sizeof(double));
  matmul_acc_avx2(a, b, c, n);
}

void matmul_nt_acc_avx2(const double* a, const double* b, double* c,
                        std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + i * n;
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double* brow = b + j * n;
      __m256d acc = _mm256_setzero_pd();
      std::size_t k = 0;
      for (; k + 4 <= n; k += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(arow + k),
                              _mm256_loadu_pd(brow + k), acc);
      }
      double dot = hsum(acc);
      for (; k < n; ++k) dot += arow[k] * brow[k];
      crow[j] += dot;
    }
  }
}

double inf_norm_avx2(const double* a, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + i * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      acc = _mm256_add_pd(acc, abs_pd(_mm256_loadu_pd(arow + j)));
    }
    double sum = hsum(acc);
    for (; j < n; ++j) sum += std::fabs(arow[j]);
    if (sum > best) best = sum;
  }
  return best;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t len) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d yi = _mm256_loadu_pd(y + i);
    yi = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), yi);
    _mm256_storeu_pd(y + i, yi);
  }
  for (; i < len; ++i) y[i] += alpha * x[i];
}

void scale_avx2(double alpha, double* x, std::size_t len) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < len; ++i) x[i] *= alpha;
}

void square_avx2(const double* x, double* y, std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_mul_pd(xi, xi));
  }
  for (; i < len; ++i) y[i] = x[i] * x[i];
}

void average_avx2(const double* x, const double* y, double* z,
                  std::size_t len) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d s =
        _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(z + i, _mm256_mul_pd(half, s));
  }
  for (; i < len; ++i) z[i] = 0.5 * (x[i] + y[i]);
}

double max_abs_avx2(const double* x, std::size_t len) {
  __m256d vbest = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    vbest = _mm256_max_pd(vbest, abs_pd(_mm256_loadu_pd(x + i)));
  }
  __m128d lo = _mm256_castpd256_pd128(vbest);
  const __m128d hi = _mm256_extractf128_pd(vbest, 1);
  lo = _mm_max_pd(lo, hi);
  double best = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < len; ++i) {
    const double v = std::fabs(x[i]);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{
      matmul_avx2,  matmul_acc_avx2, matmul_nt_acc_avx2,
      inf_norm_avx2, axpy_avx2,      scale_avx2,
      square_avx2,  average_avx2,    max_abs_avx2,
  };
  return &table;
}

}  // namespace bousslyap::kernels

#else  // no AVX2 at compile time

namespace bousslyap::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace bousslyap::kernels

#endif

#pragma once

#include <cstddef>

// Dense arithmetic kernels behind the whole artifact. Every routine has a
// scalar reference implementation and (on x86-64) an AVX2+FMA variant; the
// active backend is chosen at runtime from CPUID, overridable through
// set_backend() or the BOUSSLYAP_BACKEND environment variable
// ("scalar"/"avx2"). The two backends are equivalence-tested against each
// other; results may differ by rounding only.
namespace bousslyap::kernels {

enum class Backend { scalar, avx2 };

/// True when this binary carries AVX2 code and the CPU can run it.
bool avx2_supported();

Backend active_backend();
const char* backend_name(Backend b);

/// Force a backend. Throws ValidationError if it is not available here.
void set_backend(Backend b);

// ---- n x n row-major matrix kernels -------------------------------------

/// c = a * b
void matmul(const double* a, const double* b, double* c, std::size_t n);

/// c += a * b
void matmul_acc(const double* a, const double* b, double* c, std::size_t n);

/// c += a * b^T
void matmul_nt_acc(const double* a, const double* b, double* c, std::size_t n);

/// Operator infinity norm: max absolute row sum.
double inf_norm(const double* a, std::size_t n);

// ---- flat array kernels --------------------------------------------------

/// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t len);

/// x *= alpha
void scale(double alpha, double* x, std::size_t len);

/// y = x * x, entrywise
void square(const double* x, double* y, std::size_t len);

/// z = (x + y) / 2, entrywise
void average(const double* x, const double* y, double* z, std::size_t len);

double max_abs(const double* x, std::size_t len);

bool all_finite(const double* x, std::size_t len);

}  // namespace bousslyap::kernels

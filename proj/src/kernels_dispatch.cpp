#include "bousslyap/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "bousslyap/errors.hpp"
#include "kernels_impl.hpp"

namespace bousslyap::kernels {
namespace {

struct Dispatch {
  Backend backend;
  const KernelTable* table;
};

Dispatch make_default() {
  const char* env = std::getenv("BOUSSLYAP_BACKEND");
  if (env != nullptr) {
    const std::string want(env);
    if (want == "scalar") return {Backend::scalar, &scalar_table()};
    if (want == "avx2") {
      if (avx2_table() != nullptr && cpu_has_avx2())
        return {Backend::avx2, avx2_table()};
      throw ValidationError(
          "BOUSSLYAP_BACKEND=avx2 requested but AVX2 is unavailable");
    }
    throw ValidationError("BOUSSLYAP_BACKEND must be 'scalar' or 'avx2', got '" +
                          want + "'");
  }
  if (avx2_table() != nullptr && cpu_has_avx2())
    return {Backend::avx2, avx2_table()};
  return {Backend::scalar, &scalar_table()};
}

Dispatch& dispatch() {
  static Dispatch d = make_default();
  return d;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

bool avx2_supported() { return avx2_table() != nullptr && cpu_has_avx2(); }

Backend active_backend() { return dispatch().backend; }

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void set_backend(Backend b) {
  if (b == Backend::avx2) {
    if (!avx2_supported())
      throw ValidationError("AVX2 backend is unavailable on this machine");
    dispatch() = {Backend::avx2, avx2_table()};
  } else {
    dispatch() = {Backend::scalar, &scalar_table()};
  }
}

void matmul(const double* a, const double* b, double* c, std::size_t n) {
  dispatch().table->matmul(a, b, c, n);
}

void matmul_acc(const double* a, const double* b, double* c, std::size_t n) {
  dispatch().table->matmul_acc(a, b, c, n);
}

void matmul_nt_acc(const double* a, const double* b, double* c,
                   std::size_t n) {
  dispatch().table->matmul_nt_acc(a, b, c, n);
}

double inf_norm(const double* a, std::size_t n) {
  return dispatch().table->inf_norm(a, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
  dispatch().table->axpy(alpha, x, y, len);
}

void scale(double alpha, double* x, std::size_t len) {
  dispatch().table->scale(alpha, x, len);
}

void square(const double* x, double* y, std::size_t len) {
  dispatch().table->square(x, y, len);
}

void average(const double* x, const double* y, double* z, std::size_t len) {
  dispatch().table->average(x, y, z, len);
}

double max_abs(const double* x, std::size_t len) {
  return dispatch().table->max_abs(x, len);
}

bool all_finite(const double* x, std::size_t len) {
  // Scalar on purpose: called on every step's output, cost is negligible
  // next to the matmuls, and NaN semantics stay obvious.
  for (std::size_t i = 0; i < len; ++i) {
    if (!std::isfinite(x[i])) return false;
  }
  return true;
}

}  // namespace bousslyap::kernels

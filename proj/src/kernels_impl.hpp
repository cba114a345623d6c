#pragma once

#include <cstddef>

// Internal: per-backend entry points wired up by kernels_dispatch.cpp.
namespace bousslyap::kernels {

struct KernelTable {
  void (*matmul)(const double*, const double*, double*, std::size_t);
  void (*matmul_acc)(const double*, const double*, double*, std::size_t);
  void (*matmul_nt_acc)(const double*, const double*, double*, std::size_t);
  double (*inf_norm)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  void (*square)(const double*, double*, std::size_t);
  void (*average)(const double*, const double*, double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
};

const KernelTable& scalar_table();

// Null when this translation unit was built without AVX2 support.
const KernelTable* avx2_table();

// True when the running CPU reports AVX2.
bool cpu_has_avx2();

}  // namespace bousslyap::kernels

#pragma once

#include <cstdint>
#include <random>

namespace bousslyap {

/// mt19937_64 with a fixed bits-to-double mapping, so seeded streams are
/// identical across standard libraries (std distributions are
/// implementation-defined and would break byte-identical reruns).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1), 53 random bits.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Uniform integer in [lo, hi], both inclusive.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace bousslyap

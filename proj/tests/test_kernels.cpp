#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bousslyap/kernels.hpp"
#include "bousslyap/matrix.hpp"
#include "bousslyap/rng.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bousslyap;

namespace {

/// Runs fn under each available backend and returns the results.
template <typename Fn>
auto under_backends(Fn&& fn) {
  using Result = decltype(fn());
  std::vector<Result> results;
  const kernels::Backend original = kernels::active_backend();
  kernels::set_backend(kernels::Backend::scalar);
  results.push_back(fn());
  if (kernels::avx2_supported()) {
    kernels::set_backend(kernels::Backend::avx2);
    results.push_back(fn());
  }
  kernels::set_backend(original);
  return results;
}

}  // namespace

TEST_CASE("matmul matches the naive triple-loop oracle on every backend") {
  Rng rng(101);
  for (const std::size_t n : {1u, 2u, 3u, 5u, 8u, 17u, 33u}) {
    const Matrix a = testutil::random_matrix(n, rng);
    const Matrix b = testutil::random_matrix(n, rng);
    const Matrix expect = testutil::naive_matmul(a, b);
    const auto results = under_backends([&] { return multiply(a, b); });
    const double tol = 1e-12 * static_cast<double>(n);
    for (const auto& got : results) CHECK(max_abs_diff(got, expect) <= tol);
  }
}

TEST_CASE("matmul_acc and matmul_nt_acc agree across backends") {
  Rng rng(202);
  for (const std::size_t n : {2u, 7u, 16u, 31u, 65u}) {
    const Matrix a = testutil::random_matrix(n, rng);
    const Matrix b = testutil::random_matrix(n, rng);
    const Matrix c0 = testutil::random_matrix(n, rng);

    const auto acc = under_backends([&] {
      Matrix c = c0;
      kernels::matmul_acc(a.data(), b.data(), c.data(), n);
      return c;
    });
    const auto nt = under_backends([&] {
      Matrix c = c0;
      kernels::matmul_nt_acc(a.data(), b.data(), c.data(), n);
      return c;
    });

    // Independent checks against Matrix-level compositions.
    const Matrix expect_acc = c0 + testutil::naive_matmul(a, b);
    const Matrix expect_nt = c0 + testutil::naive_matmul(a, transpose(b));
    const double tol = 1e-12 * static_cast<double>(n);
    for (const auto& got : acc) CHECK(max_abs_diff(got, expect_acc) <= tol);
    for (const auto& got : nt) CHECK(max_abs_diff(got, expect_nt) <= tol);
  }
}

TEST_CASE("norms and elementwise kernels are backend-equivalent") {
  Rng rng(303);
  for (const std::size_t n : {3u, 12u, 33u}) {
    const Matrix a = testutil::random_matrix(n, rng, -3.0, 3.0);
    const auto inf_norms = under_backends([&] { return inf_norm(a); });
    for (const double v : inf_norms)
      CHECK(v == doctest::Approx(testutil::naive_inf_norm(a)).epsilon(1e-13));

    const auto maxabs = under_backends([&] { return max_abs(a); });
    for (const double v : maxabs) CHECK(v == maxabs.front());

    const auto squared = under_backends([&] {
      Matrix out(n);
      kernels::square(a.data(), out.data(), a.count());
      return out;
    });
    for (const auto& out : squared) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          CHECK(out(i, j) == a(i, j) * a(i, j));
    }

    const Matrix b = testutil::random_matrix(n, rng);
    const auto axpyed = under_backends([&] {
      Matrix out = a;
      kernels::axpy(0.75, b.data(), out.data(), out.count());
      return out;
    });
    for (const auto& out : axpyed)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          CHECK(out(i, j) == doctest::Approx(a(i, j) + 0.75 * b(i, j))
                                 .epsilon(1e-15));

    const auto averaged = under_backends([&] {
      Matrix out(n);
      kernels::average(a.data(), b.data(), out.data(), a.count());
      return out;
    });
    for (const auto& out : averaged)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          CHECK(out(i, j) == 0.5 * (a(i, j) + b(i, j)));
  }
}

TEST_CASE("all_finite flags NaN and infinity") {
  Matrix m(4, 1.0);
  CHECK(all_finite(m));
  m(2, 3) = std::nan("");
  CHECK_FALSE(all_finite(m));
  m(2, 3) = 1.0;
  m(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_FALSE(all_finite(m));
}

TEST_CASE("backend selection is reported and reversible") {
  const kernels::Backend original = kernels::active_backend();
  kernels::set_backend(kernels::Backend::scalar);
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
  CHECK(std::string(kernels::backend_name(kernels::active_backend())) ==
        "scalar");
  if (kernels::avx2_supported()) {
    kernels::set_backend(kernels::Backend::avx2);
    CHECK(kernels::active_backend() == kernels::Backend::avx2);
  }
  kernels::set_backend(original);
}

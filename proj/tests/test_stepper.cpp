#include <cmath>
#include <cstddef>

#include "bousslyap/errors.hpp"
#include "bousslyap/stepper.hpp"
#include "bousslyap/rng.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bousslyap;

namespace {

State random_state(const GridSpec& grid, Rng& rng) {
  const std::size_t n = static_cast<std::size_t>(grid.J) + 1;
  State s;
  s.n = 1;
  s.t = grid.t0 + grid.l;
  s.U_curr = testutil::random_matrix(n, rng);
  s.U_prev = testutil::random_matrix(n, rng);
  s.V_curr = testutil::random_matrix(n, rng);
  s.V_prev = testutil::random_matrix(n, rng);
  return s;
}

}  // namespace

TEST_CASE("nonlinearity squares entrywise") {
  Field U(2);
  U(0, 0) = 2.0;
  U(0, 1) = -3.0;
  U(1, 0) = 0.5;
  U(1, 1) = 0.0;
  const Field F = nonlinearity(U);
  CHECK(F(0, 0) == 4.0);
  CHECK(F(0, 1) == 9.0);
  CHECK(F(1, 0) == 0.25);
  CHECK(F(1, 1) == 0.0);
}

TEST_CASE("fhat averages and validates") {
  const Field a(3, 4.0);
  const Field b(3, 16.0);
  CHECK(max_abs_diff(fhat(a, b), Field(3, 10.0)) == 0.0);
  CHECK(max_abs_diff(fhat(a, a), a) == 0.0);
  CHECK(max_abs_diff(fhat(Field(3), b), Field(3, 8.0)) == 0.0);
  CHECK_THROWS_AS(fhat(Field(3), Field(4)), ValidationError);
}

TEST_CASE("discrete_v: constants, quadratic stencil exactness, zero") {
  const GridSpec g = build_grid(0.0, 1.0, 4, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, false);

  const Field Uc(5, 0.7);
  const Field Vc = discrete_v(Uc, g, m.R);
  CHECK(max_abs_diff(Vc, Field(5, 0.49)) <= 1e-15);

  // U = x_j^2: the three-point stencil reproduces u_xx = 2 exactly on
  // interior rows.
  Field Ux(5);
  for (int j = 0; j <= 4; ++j)
    for (int mcol = 0; mcol <= 4; ++mcol) {
      const auto [x, y] = node_coordinates(g, j, mcol);
      (void)y;
      Ux(j, mcol) = x * x;
    }
  Field RU = multiply(m.R, Ux);
  RU *= g.delta;
  for (std::size_t j = 1; j < 4; ++j)
    for (std::size_t mcol = 0; mcol < 5; ++mcol)
      CHECK(RU(j, mcol) == doctest::Approx(2.0).epsilon(1e-11));

  CHECK(max_abs(discrete_v(Field(5), g, m.R)) == 0.0);
}

TEST_CASE("initialize: constants are fixed, zero stays zero") {
  const GridSpec g = build_grid(0.0, 1.0, 6, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, true);
  const Profile constant = make_profile("constant", 0.8, g);
  const State s = initialize(g, constant, m);
  CHECK(s.n == 1);
  CHECK(s.t == doctest::Approx(g.t0 + g.l).epsilon(1e-15));
  CHECK(max_abs_diff(s.U_curr, s.U_prev) <= 1e-14);
  CHECK(max_abs_diff(s.V_curr, Field(s.V_curr.side(), 0.64)) <= 1e-13);

  const State z = initialize(g, make_profile("zero", 1.0, g), m);
  CHECK(max_abs(z.U_curr) == 0.0);
  CHECK(max_abs(z.V_curr) == 0.0);
}

TEST_CASE("initialize: first level obeys the Taylor bound for the cosine") {
  const GridSpec g = build_grid(0.0, 1.0, 16, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, false);
  const Profile p = make_profile("cosine", 1.0, g);
  const State s = initialize(g, p, m);
  const double max_lap = max_abs(sample(g, p.lap_u0));
  const double max_vxx = max_abs(sample(g, p.v0_xx));
  const double bound = 0.5 * g.l * g.l * (max_lap + max_vxx) * 1.05 + 1e-12;
  CHECK(max_abs_diff(s.U_curr, s.U_prev) <= bound);
  // V fields are discrete_v of their U fields by construction.
  CHECK(max_abs_diff(s.V_prev, discrete_v(s.U_prev, g, m.R)) == 0.0);
  CHECK(max_abs_diff(s.V_curr, discrete_v(s.U_curr, g, m.R)) == 0.0);
}

TEST_CASE("legacy first level matches its printed formula and differs from "
          "the Taylor start at order one") {
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, false);
  const Profile p = make_profile("cosine", 1.0, g);
  const State legacy = initialize(g, p, m, true);
  const State taylor = initialize(g, p, m, false);
  for (int j = 0; j <= 8; j += 4) {
    for (int mcol = 0; mcol <= 8; mcol += 4) {
      const auto [x, y] = node_coordinates(g, j, mcol);
      const double expect = p.u0(x, y) + g.l * p.phi(x, y) +
                            0.5 * g.l * g.l * p.lap_u0(x, y) +
                            0.5 * p.v0_xx(x, y);
      CHECK(legacy.U_curr(j, mcol) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
  // The printed start misses the l^2 factor on (v0)_xx, so the two differ
  // at O(1) of that term, not at O(l^2).
  const double vxx_scale = max_abs(sample(g, p.v0_xx));
  CHECK(max_abs_diff(legacy.U_curr, taylor.U_curr) >= 0.1 * vxx_scale);

  Profile incomplete;
  incomplete.name = "bare";
  incomplete.u0 = [](double, double) { return 1.0; };
  incomplete.phi = [](double, double) { return 0.0; };
  CHECK_THROWS_AS(initialize(g, incomplete, m, true), ValidationError);
}

TEST_CASE("constant state is a fixed point under the transpose variant") {
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, true);
  const double c = 0.5;
  const State s0 = initialize(g, make_profile("constant", c, g), m);
  SolverOptions opts;
  State s = s0;
  for (int k = 0; k < 20; ++k) s = step(s, m, g, opts);
  CHECK(max_abs_diff(s.U_curr, Field(s.U_curr.side(), c)) <= 1e-11);
  CHECK(max_abs_diff(s.V_curr, Field(s.V_curr.side(), c * c)) <= 1e-11);
  CHECK(s.n == 21);
  CHECK(s.t == doctest::Approx(g.t0 + 21 * g.l).epsilon(1e-14));
}

TEST_CASE("paper-literal variant drifts only at the sigma corner-defect "
          "scale on constants") {
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, false);
  const double c = 0.5;
  const State s0 = initialize(g, make_profile("constant", c, g), m);
  SolverOptions opts;
  State s = s0;
  const int steps = 5;
  for (int k = 0; k < steps; ++k) s = step(s, m, g, opts);
  const double bound = 20.0 * g.sigma * (c + c * c) * steps;
  CHECK(max_abs_diff(s.U_curr, Field(s.U_curr.side(), c)) <= bound);
  CHECK(max_abs_diff(s.U_curr, Field(s.U_curr.side(), c)) > 0.0);
}

TEST_CASE("zero state steps to zero") {
  const GridSpec g = build_grid(0.0, 1.0, 6, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, true);
  State s = initialize(g, make_profile("zero", 1.0, g), m);
  SolverOptions opts;
  s = step(s, m, g, opts);
  CHECK(max_abs(s.U_curr) == 0.0);
  CHECK(max_abs(s.V_curr) == 0.0);
}

TEST_CASE("fixed-point and kronecker stepping agree over five steps") {
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  for (const bool rt : {false, true}) {
    const SchemeMatrices m = build_matrices(g, rt);
    const Profile p = make_profile("cosine", 1.0, g);
    SolverOptions fp;
    SolverOptions kr;
    kr.method = SolveMethod::kronecker;
    State a = initialize(g, p, m);
    State b = a;
    for (int k = 0; k < 5; ++k) {
      a = step(a, m, g, fp);
      b = step(b, m, g, kr);
    }
    CHECK(max_abs_diff(a.U_curr, b.U_curr) <= 1e-9);
    CHECK(max_abs_diff(a.V_curr, b.V_curr) <= 1e-9);
  }
}

TEST_CASE("step outputs satisfy the original coupled pair on random states") {
  Rng rng(31415);
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  for (const bool rt : {false, true}) {
    const SchemeMatrices m = build_matrices(g, rt);
    const auto& c = m.coeffs;
    SolverOptions opts;
    for (int trial = 0; trial < 5; ++trial) {
      const State s = random_state(g, rng);
      const State next = step(s, m, g, opts);
      const Field F_prev = nonlinearity(s.U_prev);
      const Field F_curr = nonlinearity(s.U_curr);

      // First equation of the coupled pair.
      Field lhs1 = sylvester_apply(m.A, m.A, next.U_curr, rt);
      lhs1.add_scaled(multiply(m.R, next.V_curr), c.a2);
      Field rhs1 = sylvester_apply(m.B, m.B, s.U_curr, rt);
      rhs1 -= sylvester_apply(m.A, m.A, s.U_prev, rt);
      Field vmix = s.V_curr;
      vmix *= c.b2;
      vmix.add_scaled(s.V_prev, -c.a2);
      rhs1 += multiply(m.R, vmix);
      CHECK(inf_norm(lhs1 - rhs1) <= 10.0 * opts.tol);

      // Second equation.
      Field lhs2 = next.V_curr;
      lhs2 *= 0.5;
      lhs2.add_scaled(multiply(m.R, next.U_curr), -c.c2);
      Field umix = s.U_curr;
      umix *= c.c1;
      umix.add_scaled(s.U_prev, c.c2);
      Field rhs2 = multiply(m.R, umix);
      rhs2.add_scaled(s.V_prev, -0.5);
      rhs2 += fhat(F_prev, F_curr);
      CHECK(inf_norm(lhs2 - rhs2) <= 10.0 * opts.tol);
    }
  }
}

TEST_CASE("reflection-symmetric data stays symmetric") {
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, true);
  const Profile p = make_profile("cosine", 0.5, g, {{"k1", 2.0}, {"k2", 2.0}});
  SolverOptions opts;
  State s = initialize(g, p, m);
  for (int k = 0; k < 3; ++k) s = step(s, m, g, opts);
  const std::size_t n = s.U_curr.side();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t mcol = 0; mcol < n; ++mcol) {
      CHECK(s.U_curr(j, mcol) ==
            doctest::Approx(s.U_curr(n - 1 - j, mcol)).epsilon(1e-10));
      CHECK(s.U_curr(j, mcol) ==
            doctest::Approx(s.U_curr(j, n - 1 - mcol)).epsilon(1e-10));
    }
}

TEST_CASE("run: zero steps returns the initial window, observer sees levels") {
  const GridSpec g = build_grid(0.0, 1.0, 6, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, true);
  const Profile p = make_profile("cosine", 1.0, g);
  SolverOptions opts;
  const State init = initialize(g, p, m);
  const State same = run(g, p, m, opts, 0);
  CHECK(max_abs_diff(same.U_curr, init.U_curr) == 0.0);
  CHECK(same.n == 1);

  int calls = 0;
  int last_n = 0;
  const State end = run(g, p, m, opts, 4, [&](const StepRecord& rec) {
    ++calls;
    last_n = rec.n;
    CHECK(rec.norm_u == inf_norm(*rec.U));
    CHECK(rec.norm_v == inf_norm(*rec.V));
    CHECK(rec.t == doctest::Approx(g.t0 + rec.n * g.l).epsilon(1e-14));
  });
  CHECK(calls == 6);  // levels 0 and 1 from initialization plus four steps
  CHECK(last_n == end.n);
  CHECK_THROWS_AS(run(g, p, m, opts, -1), ValidationError);
}

TEST_CASE("coupled cosine run stays finite for fifty steps") {
  const GridSpec g = build_grid(0.0, 1.0, 16, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, true);
  const Profile p = make_profile("cosine", 1.0, g);
  SolverOptions opts;
  bool all_finite_norms = true;
  run(g, p, m, opts, 50, [&](const StepRecord& rec) {
    all_finite_norms =
        all_finite_norms && std::isfinite(rec.norm_u) && std::isfinite(rec.norm_v);
  });
  CHECK(all_finite_norms);
}

TEST_CASE("uncoupled explicit grid blows up and is reported") {
  // l = h with alpha = 0: the solver is exact (q = 0), and the explicit
  // update amplifies high modes until a non-finite value appears.
  const GridSpec g = build_grid_explicit(0.0, 1.0, 8, 0.0, 0.125, 0.0);
  const SchemeMatrices m = build_matrices(g, false);
  const Profile p = make_profile("cosine", 5.0, g);
  SolverOptions opts;
  bool blew_up = false;
  try {
    run(g, p, m, opts, 200);
  } catch (const BlowUpError& e) {
    blew_up = true;
    CHECK(e.step > 0);
    CHECK(e.step <= 200 + 1);
  }
  CHECK(blew_up);
}

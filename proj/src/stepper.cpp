#include "bousslyap/stepper.hpp"

#include <cstddef>
#include <string>
#include <utility>

#include "bousslyap/errors.hpp"
#include "bousslyap/kernels.hpp"

namespace bousslyap {

Field nonlinearity(const Field& U) {
  Field F(U.side());
  kernels::square(U.data(), F.data(), U.count());
  return F;
}

Field fhat(const Field& F_prev, const Field& F_curr) {
  if (F_prev.side() != F_curr.side())
    throw ValidationError("fhat: dimension mismatch (" +
                          std::to_string(F_prev.side()) + " vs " +
                          std::to_string(F_curr.side()) + ")");
  Field out(F_prev.side());
  kernels::average(F_prev.data(), F_curr.data(), out.data(), out.count());
  return out;
}

Field discrete_v(const Field& U, const GridSpec& grid, const Matrix& R) {
  if (R.side() != U.side())
    throw ValidationError("discrete_v: R side " + std::to_string(R.side()) +
                          " does not match field side " +
                          std::to_string(U.side()));
  Field V = multiply(R, U);
  V *= grid.delta;
  Field F = nonlinearity(U);
  V += F;
  return V;
}

Field discrete_laplacian(const Field& U, const GridSpec& grid,
                         const Matrix& R) {
  Field L = multiply(R, U);
  kernels::matmul_nt_acc(U.data(), R.data(), L.data(), U.side());
  L *= grid.delta;
  return L;
}

Field sample(const GridSpec& grid, const SpaceFn& f) {
  const auto n = static_cast<std::size_t>(grid.J) + 1;
  Field out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid.L0 + static_cast<double>(j) * grid.h;
    for (std::size_t m = 0; m < n; ++m) {
      const double y = grid.L0 + static_cast<double>(m) * grid.h;
      out(j, m) = f(x, y);
    }
  }
  return out;
}

State initialize(const GridSpec& grid, const Profile& profile,
                 const SchemeMatrices& mats, bool legacy_first_level) {
  const Field U0 = sample(grid, profile.u0);
  const Field V0 = discrete_v(U0, grid, mats.R);
  const double l = grid.l;

  Field U1(U0.side());
  if (!legacy_first_level) {
    const Field Phi = sample(grid, profile.phi);
    const Field lap = discrete_laplacian(U0, grid, mats.R);
    Field vxx = multiply(mats.R, V0);
    vxx *= grid.delta;
    U1 = U0;
    U1.add_scaled(Phi, l);
    U1.add_scaled(lap, 0.5 * l * l);
    U1.add_scaled(vxx, 0.5 * l * l);
  } else {
    if (!profile.lap_u0 || !profile.v0_xx)
      throw ValidationError(
          "initialize: profile '" + profile.name +
          "' lacks the analytic derivatives required by the legacy first "
          "level");
    const auto n = U0.side();
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t m = 0; m < n; ++m) {
        const auto [x, y] =
            node_coordinates(grid, static_cast<int>(j), static_cast<int>(m));
        U1(j, m) = profile.u0(x, y) + l * profile.phi(x, y) +
                   0.5 * l * l * profile.lap_u0(x, y) +
                   0.5 * profile.v0_xx(x, y);
      }
    }
  }
  const Field V1 = discrete_v(U1, grid, mats.R);
  return State{1, grid.t0 + l, U1, U0, V1, V0};
}

State step(const State& state, const SchemeMatrices& mats,
           const GridSpec& grid, const SolverOptions& opts) {
  const CoefficientSet& c = mats.coeffs;
  const bool rt = mats.right_transpose;

  const Field F_prev = nonlinearity(state.U_prev);
  Field F_sum = F_prev;
  F_sum += nonlinearity(state.U_curr);

  Field C = sylvester_apply(mats.B_tilde, mats.B, state.U_curr, rt);
  C.add_scaled(multiply(mats.R, state.V_curr), c.b2);
  C -= sylvester_apply(mats.W, mats.A, state.U_prev, rt);
  C.add_scaled(multiply(mats.R, F_sum), -c.a2);

  SolverOptions solve_opts = opts;
  solve_opts.right_transpose = rt;
  SolveResult sol = solve(mats.W, mats.A, C, solve_opts);
  Field U_next = std::move(sol.X);

  const int n_next = state.n + 1;
  if (!all_finite(U_next))
    throw BlowUpError(n_next, "step " + std::to_string(n_next) +
                                  ": non-finite entry in U (blow-up)");

  Field V_next = multiply(mats.R, U_next);
  V_next *= 2.0 * c.c2;
  Field combo = state.U_curr;
  combo *= c.c1;
  combo.add_scaled(state.U_prev, c.c2);
  V_next.add_scaled(multiply(mats.R, combo), 2.0);
  V_next -= state.V_prev;
  V_next += F_sum;
  if (!all_finite(V_next))
    throw BlowUpError(n_next, "step " + std::to_string(n_next) +
                                  ": non-finite entry in V (blow-up)");

  return State{n_next, grid.t0 + n_next * grid.l, std::move(U_next),
               state.U_curr, std::move(V_next), state.V_curr};
}

State run(const GridSpec& grid, const Profile& profile,
          const SchemeMatrices& mats, const SolverOptions& opts, int n_steps,
          const Observer& observer, bool legacy_first_level) {
  if (n_steps < 0)
    throw ValidationError("run: n_steps must be >= 0, got " +
                          std::to_string(n_steps));
  State state = initialize(grid, profile, mats, legacy_first_level);
  if (observer) {
    observer({0, grid.t0, inf_norm(state.U_prev), inf_norm(state.V_prev),
              &state.U_prev, &state.V_prev});
    observer({state.n, state.t, inf_norm(state.U_curr),
              inf_norm(state.V_curr), &state.U_curr, &state.V_curr});
  }
  for (int k = 0; k < n_steps; ++k) {
    state = step(state, mats, grid, opts);
    if (observer) {
      observer({state.n, state.t, inf_norm(state.U_curr),
                inf_norm(state.V_curr), &state.U_curr, &state.V_curr});
    }
  }
  return state;
}

}  // namespace bousslyap

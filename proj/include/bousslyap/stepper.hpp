#pragma once

#include <functional>

#include "bousslyap/grid.hpp"
#include "bousslyap/lyapunov_solver.hpp"
#include "bousslyap/matrix.hpp"
#include "bousslyap/operators.hpp"
#include "bousslyap/profiles.hpp"

namespace bousslyap {

/// Rolling three-level window of the order-reduced pair (U, V).
struct State {
  int n = 0;        // step index of the current level
  double t = 0.0;   // t0 + n*l
  Field U_curr, U_prev;
  Field V_curr, V_prev;
};

/// F(U) = U^2, entrywise.
Field nonlinearity(const Field& U);

/// (F_prev + F_curr) / 2, entrywise.
Field fhat(const Field& F_prev, const Field& F_curr);

/// V = delta * R * U + U^2: the discrete counterpart of v = u_xx + u^2.
/// R acts on the left because v carries only x derivatives.
Field discrete_v(const Field& U, const GridSpec& grid, const Matrix& R);

/// Five-point Laplacian with ghost reflection: delta * (R*U + U*R^T).
Field discrete_laplacian(const Field& U, const GridSpec& grid,
                         const Matrix& R);

/// Samples f at the grid nodes.
Field sample(const GridSpec& grid, const SpaceFn& f);

/// Builds the starting window. U0 samples u0; the default first level is the
/// second-order Taylor start
///   U1 = U0 + l*Phi + (l^2/2) * (Lap_h U0 + delta*R*V0),
/// consistent with u_tt = Lap(u) + v_xx at t0. With legacy_first_level the
/// printed one-line start U1 = u0 + l*phi + (l^2/2)*Lap(u0) + (v0)_xx/2 is
/// used instead (analytic derivatives required); it is first order in the
/// (v0)_xx term and is kept only for comparison runs.
State initialize(const GridSpec& grid, const Profile& profile,
                 const SchemeMatrices& mats, bool legacy_first_level = false);

/// One step of the reduced scheme: assembles
///   C = L_{Bt,B}(U^n) + b2*R*V^n - L_{W,A}(U^{n-1}) - a2*R*(F^{n-1}+F^n),
/// solves W*U^{n+1} + U^{n+1}*A(^T) = C, then updates
///   V^{n+1} = 2*c2*R*U^{n+1} + 2*R*(c1*U^n + c2*U^{n-1}) - V^{n-1}
///             + F^{n-1} + F^n.
/// Aborts with BlowUpError on any non-finite entry.
State step(const State& state, const SchemeMatrices& mats,
           const GridSpec& grid, const SolverOptions& opts);

struct StepRecord {
  int n;
  double t;
  double norm_u;  // infinity norm of U^n
  double norm_v;
  const Field* U;
  const Field* V;
};

using Observer = std::function<void(const StepRecord&)>;

/// initialize + n_steps applications of step; the observer (if any) sees
/// every level, the initial data included, with read-only views of the
/// fields.
State run(const GridSpec& grid, const Profile& profile,
          const SchemeMatrices& mats, const SolverOptions& opts, int n_steps,
          const Observer& observer = {}, bool legacy_first_level = false);

}  // namespace bousslyap

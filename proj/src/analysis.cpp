#include "bousslyap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "bousslyap/errors.hpp"
#include "bousslyap/rng.hpp"
#include "bousslyap/stepper.hpp"

namespace bousslyap {
namespace {

Field sample_at_time(const GridSpec& grid, const SpaceTimeFn& f, double t) {
  const auto n = static_cast<std::size_t>(grid.J) + 1;
  Field out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid.L0 + static_cast<double>(j) * grid.h;
    for (std::size_t m = 0; m < n; ++m) {
      const double y = grid.L0 + static_cast<double>(m) * grid.h;
      out(j, m) = f(x, y, t);
    }
  }
  return out;
}

Matrix random_unit_matrix(std::size_t n, Rng& rng) {
  Matrix X(n);
  double norm = 0.0;
  do {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) X(i, j) = rng.uniform(-1.0, 1.0);
    norm = inf_norm(X);
  } while (norm < 1e-12);
  X *= 1.0 / norm;
  return X;
}

std::vector<double> order_ratios(const std::vector<double>& values) {
  std::vector<double> orders;
  for (std::size_t k = 0; k + 1 < values.size(); ++k)
    orders.push_back(std::log2(values[k] / values[k + 1]));
  return orders;
}

/// Scales the variant so the initial pair norm lands in [0.995a, a]; returns
/// the state and the achieved norm. Scaling by c turns U0 into c*U0 and V0
/// into c*(delta R U0) + c^2*U0^2, so the norm is cheap to evaluate from two
/// precomputed fields. Expansion is capped, so a degenerate (zero) shape
/// yields a smaller-than-target start, which is still a sound trial: the
/// claim being probed is an upper bound on initial data.
struct ScaledStart {
  State state;
  double pair0 = 0.0;
};

ScaledStart scaled_start(const Profile& shape, double target,
                         const GridSpec& grid, const SchemeMatrices& mats) {
  const Field U0s = sample(grid, shape.u0);
  Field D = multiply(mats.R, U0s);
  D *= grid.delta;
  const Field Q = nonlinearity(U0s);
  const double norm_u = inf_norm(U0s);

  auto pair0_of = [&](double c) {
    Field V = D;
    V *= c;
    V.add_scaled(Q, c * c);
    return std::max(c * norm_u, inf_norm(V));
  };

  double lo = 0.0, hi = 1.0;
  int expansions = 0;
  while (pair0_of(hi) < target && expansions < 60) {
    hi *= 2.0;
    ++expansions;
  }
  double c = hi;
  if (pair0_of(hi) >= target) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double p = pair0_of(mid);
      if (p >= 0.995 * target && p <= target) {
        c = mid;
        break;
      }
      if (p > target)
        hi = mid;
      else
        lo = mid;
      c = lo;
    }
  }

  Profile scaled = shape;
  const SpaceFn base = shape.u0;
  const double cc = c;
  scaled.u0 = [base, cc](double x, double y) { return cc * base(x, y); };
  State st = initialize(grid, scaled, mats);
  const double achieved = pair_norm(st.U_prev, st.V_prev);
  return {std::move(st), achieved};
}

}  // namespace

double pair_norm(const Field& U, const Field& V) {
  return std::max(inf_norm(U), inf_norm(V));
}

std::pair<double, double> truncation_residual(const Profile& profile,
                                              const GridSpec& grid,
                                              const SchemeMatrices& mats,
                                              double t) {
  if (!profile.has_time_extension())
    throw ValidationError("truncation_residual: profile '" + profile.name +
                          "' lacks the manufactured space-time closures");
  (void)mats;
  const double l = grid.l;
  const double alpha = grid.alpha;
  const double delta = grid.delta;

  const Field Um = sample_at_time(grid, profile.u, t - l);
  const Field Uc = sample_at_time(grid, profile.u, t);
  const Field Up = sample_at_time(grid, profile.u, t + l);
  const Field Vm = sample_at_time(grid, profile.v, t - l);
  const Field Vc = sample_at_time(grid, profile.v, t);
  const Field Vp = sample_at_time(grid, profile.v, t + l);
  const Field Fm = nonlinearity(Um);
  const Field Fc = nonlinearity(Uc);

  const auto J = static_cast<std::size_t>(grid.J);
  double worst1 = 0.0, worst2 = 0.0;

  auto five_point = [](const Field& X, std::size_t j, std::size_t m) {
    return X(j - 1, m) + X(j + 1, m) + X(j, m - 1) + X(j, m + 1) -
           4.0 * X(j, m);
  };
  auto second_x = [](const Field& X, std::size_t j, std::size_t m) {
    return X(j - 1, m) - 2.0 * X(j, m) + X(j + 1, m);
  };

  for (std::size_t j = 1; j < J; ++j) {
    for (std::size_t m = 1; m < J; ++m) {
      const double x = grid.L0 + static_cast<double>(j) * grid.h;
      const double y = grid.L0 + static_cast<double>(m) * grid.h;

      const double time2 =
          (Up(j, m) - 2.0 * Uc(j, m) + Um(j, m)) / (l * l);
      const double lap_avg = alpha * five_point(Up, j, m) +
                             (1.0 - 2.0 * alpha) * five_point(Uc, j, m) +
                             alpha * five_point(Um, j, m);
      const double vxx_avg = alpha * second_x(Vp, j, m) +
                             (1.0 - 2.0 * alpha) * second_x(Vc, j, m) +
                             alpha * second_x(Vm, j, m);
      const double d1 =
          time2 - delta * lap_avg - delta * vxx_avg - profile.r1(x, y, t);
      worst1 = std::max(worst1, std::fabs(d1));

      const double v_pair = 0.5 * (Vp(j, m) + Vm(j, m));
      const double uxx_avg = alpha * second_x(Up, j, m) +
                             (1.0 - 2.0 * alpha) * second_x(Uc, j, m) +
                             alpha * second_x(Um, j, m);
      const double f_hat = 0.5 * (Fm(j, m) + Fc(j, m));
      const double d2 =
          v_pair - delta * uxx_avg - f_hat - profile.r2(x, y, t);
      worst2 = std::max(worst2, std::fabs(d2));
    }
  }
  return {worst1, worst2};
}

RefinementStudy consistency_study(const Profile& profile,
                                  const GridSpec& grid_base, int levels,
                                  double t_eval) {
  if (levels < 2)
    throw ValidationError("consistency_study: levels must be >= 2, got " +
                          std::to_string(levels));
  RefinementStudy study;
  std::vector<double> r1s, r2s;
  for (int k = 0; k < levels; ++k) {
    const int J = grid_base.J << k;
    const GridSpec grid =
        build_grid(grid_base.L0, grid_base.L1, J, grid_base.alpha,
                   grid_base.s, grid_base.eps, grid_base.t0);
    const SchemeMatrices mats = build_matrices(grid, false);
    const auto [r1, r2] = truncation_residual(profile, grid, mats, t_eval);
    study.levels.push_back({J, grid.l, 0, r1, r2, 0.0});
    r1s.push_back(r1);
    r2s.push_back(r2);
  }
  const double scale = std::max(
      1.0, std::fabs(t_eval) + std::fabs(profile.amplitude));
  study.all_zero = std::all_of(r1s.begin(), r1s.end(),
                               [&](double r) { return r < 1e-10 * scale; }) &&
                   std::all_of(r2s.begin(), r2s.end(),
                               [&](double r) { return r < 1e-10 * scale; });
  if (!study.all_zero) {
    study.orders_eq1 = order_ratios(r1s);
    study.orders_eq2 = order_ratios(r2s);
  }
  return study;
}

OperatorReport operator_report(const GridSpec& grid,
                               const SchemeMatrices& mats, int samples,
                               std::uint64_t seed) {
  if (samples < 1)
    throw ValidationError("operator_report: samples must be >= 1");
  OperatorReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.deviation = lyapunov_deviation(grid);
  const auto& c = mats.coeffs;
  rep.bound_ltbb = 2.0 * std::max(std::fabs(c.b1), 2.0 * std::fabs(c.b2)) +
                   4.0 * std::fabs(c.a2 * c.c1);

  Rng rng(seed);
  double min_lwa = 0.0, max_lwa = 0.0, max_ltbb = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Matrix X = random_unit_matrix(mats.W.side(), rng);
    const double lwa = inf_norm(sylvester_apply(mats.W, mats.A, X, false));
    const double ltbb =
        inf_norm(sylvester_apply(mats.B_tilde, mats.B, X, false));
    if (i == 0) {
      min_lwa = max_lwa = lwa;
      max_ltbb = ltbb;
    } else {
      min_lwa = std::min(min_lwa, lwa);
      max_lwa = std::max(max_lwa, lwa);
      max_ltbb = std::max(max_ltbb, ltbb);
    }
  }
  rep.min_lwa = min_lwa;
  rep.max_lwa = max_lwa;
  rep.max_ltbb = max_ltbb;
  const double slack = 1e-10;
  rep.lwa_within_band = min_lwa >= 1.0 - rep.deviation - slack &&
                        max_lwa <= 1.0 + rep.deviation + slack;
  rep.lwa_within_half_to_3half = min_lwa >= 0.5 && max_lwa <= 1.5;
  rep.ltbb_within_six = max_ltbb <= 6.0;
  return rep;
}

EtaBounds theoretical_eta(double epsilon, double l, double phi_norm,
                          const CoefficientSet& coeffs, double h) {
  if (!(epsilon > 0.0))
    throw ValidationError("theoretical_eta: epsilon must be > 0");
  EtaBounds out;

  // 8 eta^2 + b eta + c < 0 with b = 19 + 8 l ||phi||.
  const double b_first = 19.0 + 8.0 * l * phi_norm;
  const double c_first =
      3.0 * l * phi_norm + 4.0 * l * l * phi_norm * phi_norm - epsilon;
  const double disc1 = b_first * b_first - 32.0 * c_first;
  if (disc1 >= 0.0) {
    const double root = (std::sqrt(disc1) - b_first) / 16.0;
    out.eta1 = std::max(root, 0.0);
    out.eta1_admissible = root > 0.0;
    out.backsub1 = 8.0 * root * root + b_first * root + c_first;
  }

  // Aq eta^2 + (Bq + 16|c2|) eta + Cq - eps <= 0.
  const double ac2 = std::fabs(coeffs.c2);
  const double ac1 = std::fabs(coeffs.c1);
  const double inv_h2 = 1.0 / (h * h);
  const double Aq = 3.0 + 32.0 * ac2;
  const double Bq =
      4.0 * (ac1 + 8.0 * ac2 * (2.0 + l * phi_norm) + l * phi_norm + inv_h2);
  const double Cq = 2.0 * (1.0 + 8.0 * ac2) * l * l * phi_norm * phi_norm +
                    4.0 * l * (4.0 * ac2 + inv_h2) * phi_norm;
  const double b_second = Bq + 16.0 * ac2;
  const double disc2 = b_second * b_second - 4.0 * Aq * (Cq - epsilon);
  if (disc2 >= 0.0) {
    const double root = (std::sqrt(disc2) - b_second) / (2.0 * Aq);
    out.eta1_prime = std::max(root, 0.0);
    out.eta1_prime_admissible = root > 0.0;
    out.backsub2 = Aq * root * root + b_second * root + Cq - epsilon;
  }

  // Induction constants: 8 e^2 + 19 e - eps <= 0 and
  // (32|c2|+2) e^2 + (4|c1|+80|c2|+1) e - eps <= 0.
  out.eps1 = (std::sqrt(361.0 + 32.0 * epsilon) - 19.0) / 16.0;
  const double lin = 4.0 * ac1 + 80.0 * ac2 + 1.0;
  const double quad = 32.0 * ac2 + 2.0;
  out.eps1_prime =
      (std::sqrt(lin * lin + 4.0 * quad * epsilon) - lin) / (2.0 * quad);
  return out;
}

StabilityProbeResult stability_probe(const GridSpec& grid,
                                     const SchemeMatrices& mats,
                                     const SolverOptions& opts, double epsilon,
                                     int n_steps, int trials,
                                     const Profile& family,
                                     std::uint64_t seed) {
  if (!(epsilon > 0.0))
    throw ValidationError("stability_probe: epsilon must be > 0");
  if (n_steps < 1)
    throw ValidationError("stability_probe: n_steps must be >= 1");
  if (trials < 1)
    throw ValidationError("stability_probe: trials must be >= 1");

  StabilityProbeResult result;
  result.epsilon = epsilon;
  result.steps = n_steps;
  result.trials = trials;
  const double phi_norm = inf_norm(sample(grid, family.phi));
  result.eta_detail =
      theoretical_eta(epsilon, grid.l, phi_norm, mats.coeffs, grid.h);
  if (result.eta_detail.eta1_admissible &&
      result.eta_detail.eta1_prime_admissible) {
    result.eta_theoretical =
        std::min(result.eta_detail.eta1, result.eta_detail.eta1_prime);
  }

  auto run_trial = [&](double amplitude, int index) {
    ProbeTrial trial;
    trial.seed = seed + static_cast<std::uint64_t>(index);
    trial.amplitude = amplitude;
    Rng rng(trial.seed);
    const Profile variant = randomized_variant(family, grid, rng);
    ScaledStart start = scaled_start(variant, amplitude, grid, mats);
    trial.initial_pair_norm = start.pair0;
    double worst = std::max(start.pair0,
                            pair_norm(start.state.U_curr, start.state.V_curr));
    State state = std::move(start.state);
    trial.steps_completed = 1;
    try {
      while (state.n < n_steps && worst <= epsilon) {
        state = step(state, mats, grid, opts);
        worst = std::max(worst, pair_norm(state.U_curr, state.V_curr));
        trial.steps_completed = state.n;
      }
      trial.max_pair_norm = worst;
      trial.passed = worst <= epsilon && state.n >= n_steps;
    } catch (const NumericalError&) {
      trial.max_pair_norm = worst;
      trial.passed = false;
    }
    return trial;
  };

  auto accept = [&](double amplitude) {
    bool all_passed = true;
    for (int i = 0; i < trials; ++i) {
      const ProbeTrial trial = run_trial(amplitude, i);
      result.log.push_back(trial);
      if (!trial.passed) all_passed = false;
    }
    return all_passed;
  };

  double lo = 0.0, hi = epsilon, best = 0.0;
  for (int it = 0; it < 14; ++it) {
    const double mid = it == 0 ? hi : 0.5 * (lo + hi);
    if (accept(mid)) {
      best = std::max(best, mid);
      lo = mid;
      if (it == 0) break;  // the whole interval is admissible
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-3 * epsilon) break;
  }
  result.eta_found = best;
  return result;
}

RefinementStudy convergence_study(const Profile& profile,
                                  const GridSpec& grid_base, int levels,
                                  int n_steps_base, const SolverOptions& opts) {
  if (levels < 3)
    throw ValidationError("convergence_study: levels must be >= 3, got " +
                          std::to_string(levels));
  if (n_steps_base < 1)
    throw ValidationError("convergence_study: n_steps_base must be >= 1");

  const double T = n_steps_base * grid_base.l;
  RefinementStudy study;
  std::vector<Field> on_base;  // each level's final U restricted to the base grid

  for (int k = 0; k < levels; ++k) {
    const int J = grid_base.J << k;
    const GridSpec grid =
        build_grid(grid_base.L0, grid_base.L1, J, grid_base.alpha,
                   grid_base.s, grid_base.eps, grid_base.t0);
    const SchemeMatrices mats = build_matrices(grid, true);
    const int n_steps = std::max(1, static_cast<int>(std::lround(T / grid.l)));
    const State final_state = run(grid, profile, mats, opts, n_steps - 1);
    // run() ends at level n_steps (initialize already provides n=1).

    const int stride = 1 << k;
    Field restricted(static_cast<std::size_t>(grid_base.J) + 1);
    for (int j = 0; j <= grid_base.J; ++j)
      for (int m = 0; m <= grid_base.J; ++m)
        restricted(j, m) = final_state.U_curr(
            static_cast<std::size_t>(j) * stride,
            static_cast<std::size_t>(m) * stride);
    on_base.push_back(std::move(restricted));
    study.levels.push_back({J, grid.l, n_steps, 0.0, 0.0, 0.0});
  }

  std::vector<double> diffs;
  for (std::size_t k = 0; k + 1 < on_base.size(); ++k) {
    const double d = max_abs_diff(on_base[k], on_base[k + 1]);
    study.levels[k].solution_diff = d;
    diffs.push_back(d);
  }
  // Sentinel threshold: per-step roundoff enters V through the c2 ~ delta
  // coupling, so degenerate (constant/zero) runs accumulate O(delta*n*eps)
  // drift, ~1e-11 at these sizes; real refinement signals sit above 1e-7.
  const double scale = std::max(1.0, std::fabs(profile.amplitude));
  study.all_zero = std::all_of(diffs.begin(), diffs.end(),
                               [&](double d) { return d < 1e-9 * scale; });
  if (!study.all_zero) study.orders_solution = order_ratios(diffs);
  return study;
}

}  // namespace bousslyap

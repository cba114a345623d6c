#include "bousslyap/cli_main.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bousslyap/analysis.hpp"
#include "bousslyap/config.hpp"
#include "bousslyap/errors.hpp"
#include "bousslyap/kernels.hpp"
#include "bousslyap/report.hpp"
#include "bousslyap/snapshot.hpp"
#include "bousslyap/stepper.hpp"

namespace bousslyap {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct CliArgs {
  std::string config_path;
  int levels = 3;
  double epsilon = 0.1;
  int steps = -1;  // -1: use the subcommand default / config value
  int trials = -1;
  std::uint64_t seed = 20240817;
  int J = -1;
  std::string out;  // empty: keep the config's output.directory
  double l = 0.0;
  double phi_norm = 0.0;
};

std::string zero_pad(int n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06d", n);
  return buf;
}

const char* numerical_error_type(const NumericalError& e) {
  if (dynamic_cast<const ContractionError*>(&e) != nullptr)
    return "contraction_violation";
  if (dynamic_cast<const BlowUpError*>(&e) != nullptr) return "blow_up";
  if (dynamic_cast<const SingularMatrixError*>(&e) != nullptr)
    return "singular_system";
  if (dynamic_cast<const NonConvergenceError*>(&e) != nullptr)
    return "non_convergence";
  return "numerical";
}

RunConfig effective_config(const CliArgs& args) {
  RunConfig cfg;
  if (!args.config_path.empty()) cfg = load_config_file(args.config_path);
  if (args.J > 0) cfg.J = args.J;
  if (args.steps >= 0) cfg.n_steps = args.steps;
  if (!args.out.empty()) cfg.out_dir = args.out;
  return cfg;
}

/// Numerical failures still leave a machine-readable record: the report is
/// written with an error payload and the exit code becomes 2.
int report_guarded(const std::string& kind, const RunConfig& cfg,
                   std::uint64_t seed,
                   const std::function<ordered_json()>& body) {
  fs::create_directories(cfg.out_dir);
  ordered_json payload;
  int exit_code = 0;
  try {
    payload = body();
  } catch (const NumericalError& e) {
    payload["status"] = "error";
    payload["error"] = {{"type", numerical_error_type(e)},
                        {"message", e.what()}};
    exit_code = 2;
    std::cerr << "numerical failure: " << e.what() << "\n";
  }
  write_report(make_report(kind, payload, echo_config(cfg), seed),
               cfg.out_dir + "/report_" + kind + ".json");
  return exit_code;
}

ordered_json study_levels_json(const RefinementStudy& study) {
  ordered_json levels = ordered_json::array();
  for (const auto& lv : study.levels) {
    levels.push_back({{"J", lv.J},
                      {"l", lv.l},
                      {"n_steps", lv.n_steps},
                      {"res1", lv.res1},
                      {"res2", lv.res2},
                      {"solution_diff", lv.solution_diff}});
  }
  return levels;
}

ordered_json eta_json(const EtaBounds& eta) {
  return {{"eta1", eta.eta1},
          {"eta1_prime", eta.eta1_prime},
          {"eps1", eta.eps1},
          {"eps1_prime", eta.eps1_prime},
          {"eta1_admissible", eta.eta1_admissible},
          {"eta1_prime_admissible", eta.eta1_prime_admissible},
          {"backsub1", eta.backsub1},
          {"backsub2", eta.backsub2}};
}

int handle_run(const CliArgs& args) {
  const RunConfig cfg = effective_config(args);
  const GridSpec grid = make_grid(cfg);
  const SchemeMatrices mats = build_matrices(grid, cfg.right_transpose);
  const SolverOptions opts = make_solver_options(cfg);
  const Profile profile =
      make_profile(cfg.profile, cfg.amplitude, grid, cfg.profile_params);

  fs::create_directories(cfg.out_dir);
  std::vector<NormsRow> rows;
  const Observer observer = [&](const StepRecord& rec) {
    rows.push_back({rec.n, rec.t, rec.norm_u, rec.norm_v});
    if (cfg.snapshot_every > 0 && rec.n % cfg.snapshot_every == 0) {
      write_snapshot(*rec.U, rec.t, grid,
                     cfg.out_dir + "/u_" + zero_pad(rec.n) + ".csv",
                     cfg.precision);
      write_snapshot(*rec.V, rec.t, grid,
                     cfg.out_dir + "/v_" + zero_pad(rec.n) + ".csv",
                     cfg.precision);
    }
  };

  ordered_json payload;
  int exit_code = 0;
  try {
    const State final_state = run(grid, profile, mats, opts, cfg.n_steps,
                                  observer, cfg.legacy_cid2);
    write_snapshot(final_state.U_curr, final_state.t, grid,
                   cfg.out_dir + "/u_final.csv", cfg.precision);
    write_snapshot(final_state.V_curr, final_state.t, grid,
                   cfg.out_dir + "/v_final.csv", cfg.precision);
    payload["status"] = "ok";
    payload["final"] = {{"n", final_state.n},
                        {"t", final_state.t},
                        {"normU", inf_norm(final_state.U_curr)},
                        {"normV", inf_norm(final_state.V_curr)}};
  } catch (const NumericalError& e) {
    payload["status"] = "error";
    payload["error"] = {{"type", numerical_error_type(e)},
                        {"message", e.what()}};
    exit_code = 2;
    std::cerr << "numerical failure: " << e.what() << "\n";
  }
  payload["steps_recorded"] = rows.size();
  payload["backend"] = kernels::backend_name(kernels::active_backend());
  write_norms_csv(cfg.out_dir + "/norms.csv", rows);
  write_report(make_report("run", payload, echo_config(cfg), args.seed),
               cfg.out_dir + "/report_run.json");
  if (exit_code == 0)
    std::cout << "run: " << rows.size() << " levels recorded, outputs in "
              << cfg.out_dir << "\n";
  return exit_code;
}

int handle_converge(const CliArgs& args) {
  const RunConfig cfg = effective_config(args);
  if (cfg.coupling != RunConfig::Coupling::coupled)
    throw ValidationError(
        "converge: refinement studies need coupling.mode=coupled");
  const GridSpec grid = make_grid(cfg);
  const Profile profile =
      make_profile(cfg.profile, cfg.amplitude, grid, cfg.profile_params);
  const SolverOptions opts = make_solver_options(cfg);

  const double t_eval = grid.t0 + 0.5;
  const int consistency_rc =
      report_guarded("consistency", cfg, args.seed, [&] {
        const RefinementStudy cons =
            consistency_study(profile, grid, args.levels, t_eval);
        ordered_json payload;
        payload["t_eval"] = t_eval;
        payload["levels"] = study_levels_json(cons);
        payload["orders_eq1"] = cons.orders_eq1;
        payload["orders_eq2"] = cons.orders_eq2;
        payload["all_zero"] = cons.all_zero;
        std::cout << "consistency orders eq1:";
        for (double o : cons.orders_eq1) std::cout << ' ' << o;
        std::cout << "\nconsistency orders eq2:";
        for (double o : cons.orders_eq2) std::cout << ' ' << o;
        std::cout << "\n";
        return payload;
      });

  const int steps_base = args.steps >= 1 ? args.steps : 2;
  const int convergence_rc =
      report_guarded("convergence", cfg, args.seed, [&] {
        const RefinementStudy conv =
            convergence_study(profile, grid, args.levels, steps_base, opts);
        ordered_json payload;
        payload["n_steps_base"] = steps_base;
        payload["levels"] = study_levels_json(conv);
        payload["orders_solution"] = conv.orders_solution;
        payload["all_zero"] = conv.all_zero;
        std::cout << "self-convergence orders:";
        for (double o : conv.orders_solution) std::cout << ' ' << o;
        std::cout << (conv.all_zero ? " (all-zero sentinel)\n" : "\n");
        return payload;
      });
  return std::max(consistency_rc, convergence_rc);
}

int handle_stability(const CliArgs& args) {
  const RunConfig cfg = effective_config(args);
  const GridSpec grid = make_grid(cfg);
  const SchemeMatrices mats = build_matrices(grid, cfg.right_transpose);
  const SolverOptions opts = make_solver_options(cfg);
  const Profile family =
      make_profile(cfg.profile, cfg.amplitude, grid, cfg.profile_params);
  const int steps = args.steps >= 1 ? args.steps : 100;
  const int trials = args.trials >= 1 ? args.trials : 5;

  return report_guarded("stability", cfg, args.seed, [&] {
    const StabilityProbeResult probe = stability_probe(
        grid, mats, opts, args.epsilon, steps, trials, family, args.seed);
    ordered_json payload;
    payload["epsilon"] = probe.epsilon;
    payload["eta_found"] = probe.eta_found;
    payload["steps"] = probe.steps;
    payload["trials"] = probe.trials;
    payload["eta_theoretical"] = probe.eta_theoretical;
    payload["eta_detail"] = eta_json(probe.eta_detail);
    // Reference value of the first closed-form bound at eps=1, l=0:
    // (sqrt(393) - 19)/16, with its back-substitution residual.
    const EtaBounds ref = theoretical_eta(1.0, 0.0, 0.0, mats.coeffs, grid.h);
    payload["reference_eta1_eps1_l0"] = {{"eta1", ref.eta1},
                                         {"backsub1", ref.backsub1}};
    ordered_json trials_json = ordered_json::array();
    for (const auto& trial : probe.log) {
      trials_json.push_back({{"seed", trial.seed},
                             {"amplitude", trial.amplitude},
                             {"initial_pair_norm", trial.initial_pair_norm},
                             {"max_pair_norm", trial.max_pair_norm},
                             {"steps_completed", trial.steps_completed},
                             {"passed", trial.passed}});
    }
    payload["trial_log"] = trials_json;
    std::cout << "stability probe: eta_found=" << probe.eta_found
              << " (epsilon=" << probe.epsilon
              << ", theoretical eta=" << probe.eta_theoretical << ")\n";
    return payload;
  });
}

int handle_operators(const CliArgs& args) {
  const RunConfig cfg = effective_config(args);
  const GridSpec grid = make_grid(cfg);
  const SchemeMatrices mats = build_matrices(grid, cfg.right_transpose);
  const int samples = args.trials >= 1 ? args.trials : 100;
  return report_guarded("operators", cfg, args.seed, [&] {
    const OperatorReport rep = operator_report(grid, mats, samples, args.seed);
    ordered_json payload;
    payload["deviation"] = rep.deviation;
    payload["bound_ltbb"] = rep.bound_ltbb;
    payload["min_lwa"] = rep.min_lwa;
    payload["max_lwa"] = rep.max_lwa;
    payload["max_ltbb"] = rep.max_ltbb;
    payload["samples"] = rep.samples;
    payload["lwa_within_band"] = rep.lwa_within_band;
    payload["lwa_within_half_to_3half"] = rep.lwa_within_half_to_3half;
    payload["ltbb_within_six"] = rep.ltbb_within_six;
    std::cout << "operators: deviation=" << rep.deviation << " lwa=["
              << rep.min_lwa << ", " << rep.max_lwa
              << "] max_ltbb=" << rep.max_ltbb << "\n";
    return payload;
  });
}

int handle_solvability(const CliArgs& args) {
  const RunConfig cfg = effective_config(args);
  const GridSpec grid = make_grid(cfg);
  return report_guarded("solvability", cfg, args.seed, [&] {
    ordered_json cases = ordered_json::array();
    double worst_pivot = 1e300;
    for (const bool rt : {false, true}) {
      const SolvabilityReport rep = solvability_check(grid, rt);
      worst_pivot = std::min(worst_pivot, rep.min_pivot);
      cases.push_back({{"right_transpose", rt},
                       {"invertible", rep.invertible},
                       {"min_pivot", rep.min_pivot}});
    }
    ordered_json payload;
    payload["J"] = grid.J;
    payload["cases"] = cases;
    std::cout << "solvability: min pivot " << worst_pivot
              << " at J=" << grid.J << "\n";
    return payload;
  });
}

int handle_oracle(const CliArgs& args) {
  const RunConfig cfg = effective_config(args);
  const int n_rhs = args.trials >= 1 ? args.trials : 20;
  std::vector<int> j_values = {4, 6, 8};
  if (args.J > 0) j_values = {args.J};
  const std::vector<double> alphas = {0.1, 0.25, 0.4};

  return report_guarded("oracle", cfg, args.seed, [&] {
    Rng rng(args.seed);
    ordered_json cases = ordered_json::array();
    double worst_diff = 0.0;
    for (const int J : j_values) {
      for (const double alpha : alphas) {
        for (const bool rt : {false, true}) {
          const GridSpec grid =
              build_grid(cfg.L0, cfg.L1, J, alpha, cfg.s, cfg.eps, cfg.t0);
          const SchemeMatrices mats = build_matrices(grid, rt);
          SolverOptions opts = make_solver_options(cfg);
          opts.method = SolveMethod::fixed_point;
          opts.right_transpose = rt;
          double max_diff = 0.0;
          double q = 0.0;
          for (int k = 0; k < n_rhs; ++k) {
            Matrix C(mats.W.side());
            for (std::size_t i = 0; i < C.side(); ++i)
              for (std::size_t j = 0; j < C.side(); ++j)
                C(i, j) = rng.uniform(-1.0, 1.0);
            const SolveResult fp = solve_fixed_point(mats.W, mats.A, C, opts);
            const Matrix kr = solve_kronecker(mats.W, mats.A, C, rt);
            max_diff = std::max(max_diff, max_abs_diff(fp.X, kr));
            q = fp.cert.contraction_factor;
          }
          worst_diff = std::max(worst_diff, max_diff);
          cases.push_back({{"J", J},
                           {"alpha", alpha},
                           {"right_transpose", rt},
                           {"q", q},
                           {"max_diff", max_diff}});
        }
      }
    }
    ordered_json payload;
    payload["rhs_per_case"] = n_rhs;
    payload["max_diff_overall"] = worst_diff;
    payload["cases"] = cases;
    std::cout << "oracle: max |fixed_point - kronecker| = " << worst_diff
              << " over " << cases.size() << " cases\n";
    return payload;
  });
}

int handle_eta(const CliArgs& args) {
  const RunConfig cfg = effective_config(args);
  const GridSpec grid = make_grid(cfg);
  const CoefficientSet coeffs = coefficients(grid);
  const EtaBounds eta =
      theoretical_eta(args.epsilon, args.l, args.phi_norm, coeffs, grid.h);
  std::printf("eta1        = %.10g  (backsub %.3e)\n", eta.eta1,
              eta.backsub1);
  std::printf("eta1_prime  = %.10g  (backsub %.3e)\n", eta.eta1_prime,
              eta.backsub2);
  std::printf("eps1        = %.10g\n", eta.eps1);
  std::printf("eps1_prime  = %.10g\n", eta.eps1_prime);
  if (!eta.eta1_admissible || !eta.eta1_prime_admissible)
    std::printf("note: admissible interval empty for%s%s\n",
                eta.eta1_admissible ? "" : " eta1",
                eta.eta1_prime_admissible ? "" : " eta1_prime");
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "Order-reduced finite-difference solver for the 2D Boussinesq "
      "equation with per-step Sylvester solves, plus its verification "
      "harness"};
  app.require_subcommand(1);

  CliArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", args.config_path,
                    "JSON config file (defaults used when omitted)");
    sub->add_option("--seed", args.seed, "random seed recorded in reports");
    sub->add_option("--J", args.J, "override grid.J");
    sub->add_option("--out", args.out, "output directory");
  };

  CLI::App* cmd_run = app.add_subcommand("run", "simulate per config");
  add_common(cmd_run);
  cmd_run->add_option("--steps", args.steps, "override run.n_steps");

  CLI::App* cmd_converge = app.add_subcommand(
      "converge", "consistency and self-convergence refinement studies");
  add_common(cmd_converge);
  cmd_converge->add_option("--levels", args.levels, "refinement levels");
  cmd_converge->add_option("--steps", args.steps,
                           "base-level steps for self-convergence");

  CLI::App* cmd_stability =
      app.add_subcommand("stability", "empirical boundedness probe");
  add_common(cmd_stability);
  cmd_stability->add_option("--epsilon", args.epsilon, "trajectory bound");
  cmd_stability->add_option("--steps", args.steps, "steps per trial");
  cmd_stability->add_option("--trials", args.trials, "trials per amplitude");

  CLI::App* cmd_operators = app.add_subcommand(
      "operators", "sampled operator-norm bands and deviation");
  add_common(cmd_operators);
  cmd_operators->add_option("--trials", args.trials, "random samples");

  CLI::App* cmd_solvability = app.add_subcommand(
      "solvability", "pivoted elimination of the vectorized operator");
  add_common(cmd_solvability);

  CLI::App* cmd_oracle = app.add_subcommand(
      "oracle", "fixed-point vs dense-elimination cross-check");
  add_common(cmd_oracle);
  cmd_oracle->add_option("--trials", args.trials, "right-hand sides per case");

  CLI::App* cmd_eta =
      app.add_subcommand("eta", "closed-form admissible-amplitude bounds");
  add_common(cmd_eta);
  cmd_eta->add_option("--epsilon", args.epsilon, "target bound");
  cmd_eta->add_option("--l", args.l, "time step in the bound");
  cmd_eta->add_option("--phi-norm", args.phi_norm, "norm of the velocity data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (cmd_run->parsed()) return handle_run(args);
    if (cmd_converge->parsed()) return handle_converge(args);
    if (cmd_stability->parsed()) return handle_stability(args);
    if (cmd_operators->parsed()) return handle_operators(args);
    if (cmd_solvability->parsed()) return handle_solvability(args);
    if (cmd_oracle->parsed()) return handle_oracle(args);
    if (cmd_eta->parsed()) return handle_eta(args);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bousslyap

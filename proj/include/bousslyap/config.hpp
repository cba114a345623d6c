#pragma once

#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bousslyap/grid.hpp"
#include "bousslyap/lyapunov_solver.hpp"

namespace bousslyap {

/// Everything a run needs, parsed from a JSON document. Sections and keys:
///   domain   {L0, L1}                        (required)
///   grid     {J}                             (required)
///   coupling {mode: "coupled"|"explicit", s, eps, l}
///   scheme   {alpha, right_transpose, legacy_cid2}
///   solver   {method: "fixed_point"|"kronecker", tol, max_iter}
///   initial  {profile, amplitude, parameters{...}}   (required)
///   run      {t0, n_steps, snapshot_every}
///   output   {directory, precision}
/// Unknown keys are rejected; every omitted optional key gets the documented
/// default and is echoed back.
struct RunConfig {
  double L0 = 0.0;
  double L1 = 1.0;
  int J = 10;

  enum class Coupling { coupled, explicit_l };
  Coupling coupling = Coupling::coupled;
  double s = 1.0;
  double eps = 1.0;
  double l = 0.0;  // used by explicit mode only

  double alpha = 0.25;
  bool right_transpose = false;
  bool legacy_cid2 = false;

  SolveMethod method = SolveMethod::fixed_point;
  double tol = 1e-12;
  int max_iter = 200;

  std::string profile = "cosine";
  double amplitude = 1.0;
  std::map<std::string, double> profile_params;

  double t0 = 0.0;
  int n_steps = 100;
  int snapshot_every = 0;  // 0 disables periodic snapshots

  std::string out_dir = "out";
  int precision = 17;
};

/// Parses and validates; throws ValidationError naming the offending key and
/// constraint.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

/// Canonical echo with all defaults filled, plus the derived grid constants
/// (h, l, sigma, delta) under "effective". Byte-stable for identical input.
nlohmann::ordered_json echo_config(const RunConfig& cfg);

GridSpec make_grid(const RunConfig& cfg);

SolverOptions make_solver_options(const RunConfig& cfg);

}  // namespace bousslyap

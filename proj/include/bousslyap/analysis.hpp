#pragma once

#include <cstdint>
#include <vector>

#include "bousslyap/grid.hpp"
#include "bousslyap/lyapunov_solver.hpp"
#include "bousslyap/operators.hpp"
#include "bousslyap/profiles.hpp"

namespace bousslyap {

/// max(||U||, ||V||) in the operator infinity norm: the pair norm used by
/// every boundedness statement here.
double pair_norm(const Field& U, const Field& V);

/// One refinement level of a study. res1/res2 are truncation defects of the
/// two discrete equations (consistency study); solution_diff is the
/// inter-level difference on the base grid (self-convergence study). Unused
/// slots stay zero.
struct RefinementLevel {
  int J = 0;
  double l = 0.0;
  int n_steps = 0;
  double res1 = 0.0;
  double res2 = 0.0;
  double solution_diff = 0.0;
};

struct RefinementStudy {
  std::vector<RefinementLevel> levels;
  std::vector<double> orders_eq1;  // log2 ratios between consecutive levels
  std::vector<double> orders_eq2;
  std::vector<double> orders_solution;
  bool all_zero = false;  // every measured quantity at rounding level
};

/// Inserts the profile's exact space-time extension into both discrete
/// equations at time t (levels t-l, t, t+l), subtracts the exact continuous
/// residuals, and returns the largest absolute defect over interior nodes
/// for each equation. Requires the manufactured closures.
std::pair<double, double> truncation_residual(const Profile& profile,
                                              const GridSpec& grid,
                                              const SchemeMatrices& mats,
                                              double t);

/// Halves h per level (J doubles, l follows the grid's coupling) and records
/// truncation defects and observed orders at fixed evaluation time.
RefinementStudy consistency_study(const Profile& profile,
                                  const GridSpec& grid_base, int levels,
                                  double t_eval);

/// Samples the two operator norms on random unit-infinity-norm matrices and
/// records whether the sampled values sit inside the bands the deviation
/// bound implies: ||L_{W,A}(X)|| within [1-q, 1+q] (and [1/2, 3/2] once
/// q <= 1/2), ||L_{Bt,B}(X)|| under 2*max(|b1|,2|b2|) + 4*|a2*c1| (<= 6 on
/// fine coupled grids).
struct OperatorReport {
  double deviation = 0.0;   // q
  double bound_ltbb = 0.0;  // 2*max(|b1|, 2*|b2|) + 4*|a2*c1|
  double min_lwa = 0.0;
  double max_lwa = 0.0;
  double max_ltbb = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  bool lwa_within_band = false;        // [1-q, 1+q], triangle inequality
  bool lwa_within_half_to_3half = false;
  bool ltbb_within_six = false;
};

OperatorReport operator_report(const GridSpec& grid,
                               const SchemeMatrices& mats, int samples,
                               std::uint64_t seed);

/// Closed-form admissible-amplitude bounds: the positive roots of
///   8 eta^2 + (19 + 8 l ||phi||) eta + 3 l ||phi|| + 4 l^2 ||phi||^2 - eps
/// and of
///   Aq eta^2 + (Bq + 16|c2|) eta + Cq - eps
/// with Aq = 3 + 32|c2|, Bq = 4(|c1| + 8|c2|(2 + l||phi||) + l||phi|| +
/// 1/h^2), Cq = 2(1+8|c2|) l^2 ||phi||^2 + 4 l (4|c2| + 1/h^2) ||phi||,
/// plus the induction constants eps1, eps1_prime from the same analysis.
/// When a discriminant is negative (or a root nonpositive) the admissible
/// interval is empty: the eta is reported as 0 and flagged.
struct EtaBounds {
  double eta1 = 0.0;
  double eta1_prime = 0.0;
  double eps1 = 0.0;
  double eps1_prime = 0.0;
  bool eta1_admissible = false;
  bool eta1_prime_admissible = false;
  double backsub1 = 0.0;  // quadratic evaluated at the returned root
  double backsub2 = 0.0;
};

EtaBounds theoretical_eta(double epsilon, double l, double phi_norm,
                          const CoefficientSet& coeffs, double h);

struct ProbeTrial {
  std::uint64_t seed = 0;
  double amplitude = 0.0;          // target initial pair norm
  double initial_pair_norm = 0.0;  // achieved value
  double max_pair_norm = 0.0;
  int steps_completed = 0;
  bool passed = false;
};

struct StabilityProbeResult {
  double epsilon = 0.0;
  double eta_found = 0.0;
  int steps = 0;
  int trials = 0;
  double eta_theoretical = 0.0;  // min of the admissible closed-form etas
  EtaBounds eta_detail;
  std::vector<ProbeTrial> log;
};

/// Empirical counterpart of the boundedness criterion: bisection over the
/// initial amplitude a in [0, epsilon]; an amplitude is accepted when every
/// randomized trial scaled to pair norm a keeps the trajectory's pair norm
/// within epsilon for n_steps. eta_found is the largest accepted amplitude
/// (0 is a legitimate negative result). Every accepted amplitude was
/// actually simulated; the log makes that re-checkable.
StabilityProbeResult stability_probe(const GridSpec& grid,
                                     const SchemeMatrices& mats,
                                     const SolverOptions& opts, double epsilon,
                                     int n_steps, int trials,
                                     const Profile& family,
                                     std::uint64_t seed);

/// Self-convergence: runs levels J, 2J, 4J, ... to the same physical time
/// T = n_steps_base * l_base (l per level from the coupling), restricts all
/// solutions to the base grid and reports inter-level differences and
/// observed orders. Keep T small: the continuous model amplifies
/// high-frequency content at rate ~exp(t/h^2), so long horizons on fine
/// grids surface that growth rather than the discretization error.
RefinementStudy convergence_study(const Profile& profile,
                                  const GridSpec& grid_base, int levels,
                                  int n_steps_base, const SolverOptions& opts);

}  // namespace bousslyap

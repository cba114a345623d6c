#pragma once

#include <utility>

namespace bousslyap {

/// Space-time discretization of the square domain ]L0,L1[ x ]L0,L1[:
/// J cells per side, h = (L1-L0)/J, nodes x_j = L0 + j*h, y_m = L0 + m*h,
/// time step l, derived constants sigma = l^2/h^2 and delta = 1/h^2.
///
/// The coupled constructor ties the time step to the mesh through
/// l = eps * h^(2+s) with s > 0; that coupling is what drives the per-step
/// operator toward the identity as the grid refines. Immutable after
/// construction.
struct GridSpec {
  double L0 = 0.0;
  double L1 = 1.0;
  int J = 0;
  double h = 0.0;
  double l = 0.0;
  double t0 = 0.0;
  double alpha = 0.0;  // scheme weight, in [0, 1/2]
  double s = 0.0;      // coupling exponent
  double eps = 0.0;    // coupling prefactor
  double sigma = 0.0;  // l^2 / h^2
  double delta = 0.0;  // 1 / h^2
  bool coupled = false;
};

/// Grid with the time step derived from the coupling l = eps * h^(2+s).
GridSpec build_grid(double L0, double L1, int J, double alpha, double s,
                    double eps, double t0);

/// Grid with the time step given directly; s and eps are back-solved from
/// l = h^(2+s) when h < 1, and the grid is flagged uncoupled when the
/// solved exponent is not positive (or h >= 1 makes the solve meaningless).
/// Exists so experiments can violate the coupling on purpose.
GridSpec build_grid_explicit(double L0, double L1, int J, double alpha,
                             double l, double t0);

/// (x_j, y_m). Throws on indices outside [0, J].
std::pair<double, double> node_coordinates(const GridSpec& grid, int j, int m);

}  // namespace bousslyap

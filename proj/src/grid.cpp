#include "bousslyap/grid.hpp"

#include <cmath>
#include <string>

#include "bousslyap/errors.hpp"

namespace bousslyap {
namespace {

void validate_common(double L0, double L1, int J, double alpha) {
  if (!(L1 > L0))
    throw ValidationError("grid: L1 must exceed L0 (got L0=" +
                          std::to_string(L0) + ", L1=" + std::to_string(L1) +
                          ")");
  if (J < 2)
    throw ValidationError("grid: J must be >= 2, got " + std::to_string(J));
  if (!(alpha >= 0.0 && alpha <= 0.5))
    throw ValidationError("grid: alpha must lie in [0, 0.5], got " +
                          std::to_string(alpha));
}

GridSpec finish(GridSpec g) {
  g.sigma = (g.l * g.l) / (g.h * g.h);
  g.delta = 1.0 / (g.h * g.h);
  return g;
}

}  // namespace

GridSpec build_grid(double L0, double L1, int J, double alpha, double s,
                    double eps, double t0) {
  validate_common(L0, L1, J, alpha);
  if (!(s > 0.0))
    throw ValidationError("grid: coupling exponent s must be > 0, got " +
                          std::to_string(s));
  if (!(eps > 0.0))
    throw ValidationError("grid: coupling prefactor eps must be > 0, got " +
                          std::to_string(eps));
  GridSpec g;
  g.L0 = L0;
  g.L1 = L1;
  g.J = J;
  g.h = (L1 - L0) / J;
  g.t0 = t0;
  g.alpha = alpha;
  g.s = s;
  g.eps = eps;
  g.l = eps * std::pow(g.h, 2.0 + s);
  g.coupled = true;
  return finish(g);
}

GridSpec build_grid_explicit(double L0, double L1, int J, double alpha,
                             double l, double t0) {
  validate_common(L0, L1, J, alpha);
  if (!(l > 0.0))
    throw ValidationError("grid: time step l must be > 0, got " +
                          std::to_string(l));
  GridSpec g;
  g.L0 = L0;
  g.L1 = L1;
  g.J = J;
  g.h = (L1 - L0) / J;
  g.t0 = t0;
  g.alpha = alpha;
  g.l = l;
  g.eps = 1.0;
  if (g.h < 1.0) {
    // Solve l = h^(2+s) for s; positive s means the coupling happens to hold.
    g.s = std::log(l) / std::log(g.h) - 2.0;
    g.coupled = g.s > 0.0;
  } else {
    g.s = 0.0;
    g.coupled = false;
  }
  return finish(g);
}

std::pair<double, double> node_coordinates(const GridSpec& grid, int j,
                                           int m) {
  if (j < 0 || j > grid.J || m < 0 || m > grid.J)
    throw ValidationError("node_coordinates: index (" + std::to_string(j) +
                          ", " + std::to_string(m) + ") outside [0, " +
                          std::to_string(grid.J) + "]");
  return {grid.L0 + j * grid.h, grid.L0 + m * grid.h};
}

}  // namespace bousslyap

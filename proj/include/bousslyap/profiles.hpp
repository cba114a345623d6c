#pragma once

#include <functional>
#include <map>
#include <string>

#include "bousslyap/grid.hpp"
#include "bousslyap/rng.hpp"

namespace bousslyap {

using SpaceFn = std::function<double(double x, double y)>;
using SpaceTimeFn = std::function<double(double x, double y, double t)>;

/// Initial data u0, phi plus whatever closed-form structure a study needs:
/// analytic derivatives for the printed-form start and the initialization
/// bound, and a manufactured space-time extension (u, v = u_xx + u^2, and
/// the exact residuals r1, r2 of the continuous system) for truncation
/// studies. Closures a profile cannot provide are left empty; operations
/// that need them raise a profile-incomplete error.
struct Profile {
  std::string name;
  double amplitude = 1.0;

  SpaceFn u0;
  SpaceFn phi;

  // Optional analytic derivatives of the initial data.
  SpaceFn lap_u0;  // Laplacian of u0
  SpaceFn v0_xx;   // d^2/dx^2 of (u0_xx + u0^2)

  // Optional manufactured space-time extension.
  SpaceTimeFn u;
  SpaceTimeFn v;
  SpaceTimeFn r1;  // u_tt - Lap(u) - v_xx, exactly
  SpaceTimeFn r2;  // v - u_xx - u^2, exactly

  bool has_time_extension() const {
    return static_cast<bool>(u) && static_cast<bool>(v) &&
           static_cast<bool>(r1) && static_cast<bool>(r2);
  }
};

/// Built-in families, all defined on the grid's square domain:
///   "constant"      u0 = amplitude, phi = 0
///   "zero"          u0 = 0, phi = 0
///   "cosine"        u0 = amplitude*cos(k1 pi x^)*cos(k2 pi y^), phi = 0
///                   (x^, y^ normalized to [0,1]; Neumann-compatible)
///   "cosine_decay"  manufactured u = amplitude*cos*cos*exp(-t),
///                   with phi = -u0 and the full analytic extension
///   "affine"        u0 = amplitude*(ax*x + by*y + c0); not
///                   Neumann-compatible, meant for interior truncation
///                   checks only
/// params: k1, k2 (cosine families, default 1); ax, by, c0 (affine).
Profile make_profile(const std::string& name, double amplitude,
                     const GridSpec& grid,
                     const std::map<std::string, double>& params = {});

/// Random low-frequency Neumann-compatible variant of a family, used by the
/// stability probe. Constant families stay constant; cosine families get a
/// random mix of modes k1, k2 <= 2.
Profile randomized_variant(const Profile& base, const GridSpec& grid,
                           Rng& rng);

}  // namespace bousslyap

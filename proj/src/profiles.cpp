#include "bousslyap/profiles.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "bousslyap/errors.hpp"

namespace bousslyap {
namespace {

double param_or(const std::map<std::string, double>& params,
                const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

Profile make_constant(double amplitude) {
  Profile p;
  p.name = "constant";
  p.amplitude = amplitude;
  p.u0 = [amplitude](double, double) { return amplitude; };
  p.phi = [](double, double) { return 0.0; };
  p.lap_u0 = [](double, double) { return 0.0; };
  p.v0_xx = [](double, double) { return 0.0; };
  p.u = [amplitude](double, double, double) { return amplitude; };
  p.v = [amplitude](double, double, double) { return amplitude * amplitude; };
  p.r1 = [](double, double, double) { return 0.0; };
  p.r2 = [](double, double, double) { return 0.0; };
  return p;
}

Profile make_cosine(double amplitude, const GridSpec& grid, double k1,
                    double k2, bool decay) {
  const double span = grid.L1 - grid.L0;
  const double kap1 = k1 * std::numbers::pi / span;
  const double kap2 = k2 * std::numbers::pi / span;
  const double L0 = grid.L0;

  auto shape = [=](double x, double y) {
    return std::cos(kap1 * (x - L0)) * std::cos(kap2 * (y - L0));
  };
  auto sinx_shape = [=](double x, double y) {
    return std::sin(kap1 * (x - L0)) * std::cos(kap2 * (y - L0));
  };

  Profile p;
  p.name = decay ? "cosine_decay" : "cosine";
  p.amplitude = amplitude;
  p.u0 = [=](double x, double y) { return amplitude * shape(x, y); };
  if (decay) {
    // u(x,y,t) = u0 * exp(-t), so phi = du/dt at t=0 is -u0.
    p.phi = [=](double x, double y) { return -amplitude * shape(x, y); };
  } else {
    p.phi = [](double, double) { return 0.0; };
  }
  p.lap_u0 = [=](double x, double y) {
    return -(kap1 * kap1 + kap2 * kap2) * amplitude * shape(x, y);
  };
  // (u0^2)_xx = 2*(u0_x)^2 + 2*u0*u0_xx; v0_xx adds u0_xxxx.
  p.v0_xx = [=](double x, double y) {
    const double w = amplitude * shape(x, y);
    const double sx = amplitude * sinx_shape(x, y);
    return kap1 * kap1 * kap1 * kap1 * w +
           2.0 * kap1 * kap1 * (sx * sx - w * w);
  };

  p.u = [=](double x, double y, double t) {
    return amplitude * shape(x, y) * (decay ? std::exp(-t) : 1.0);
  };
  p.v = [=](double x, double y, double t) {
    const double w = amplitude * shape(x, y) * (decay ? std::exp(-t) : 1.0);
    return -kap1 * kap1 * w + w * w;
  };
  // r1 = u_tt - Lap(u) - v_xx with v = u_xx + u^2. For the decaying family
  // u_tt = u; for the static one u_tt = 0.
  p.r1 = [=](double x, double y, double t) {
    const double e = decay ? std::exp(-t) : 1.0;
    const double w = amplitude * shape(x, y) * e;
    const double sx = amplitude * sinx_shape(x, y) * e;
    const double utt = decay ? w : 0.0;
    const double lap = -(kap1 * kap1 + kap2 * kap2) * w;
    const double vxx =
        kap1 * kap1 * kap1 * kap1 * w + 2.0 * kap1 * kap1 * (sx * sx - w * w);
    return utt - lap - vxx;
  };
  p.r2 = [](double, double, double) { return 0.0; };
  return p;
}

Profile make_affine(double amplitude, double ax, double by, double c0) {
  Profile p;
  p.name = "affine";
  p.amplitude = amplitude;
  p.u0 = [=](double x, double y) { return amplitude * (ax * x + by * y + c0); };
  p.phi = [](double, double) { return 0.0; };
  p.lap_u0 = [](double, double) { return 0.0; };
  const double slope = amplitude * ax;
  p.v0_xx = [slope](double, double) { return 2.0 * slope * slope; };
  p.u = [=](double x, double y, double) {
    return amplitude * (ax * x + by * y + c0);
  };
  p.v = [=](double x, double y, double) {
    const double w = amplitude * (ax * x + by * y + c0);
    return w * w;
  };
  p.r1 = [slope](double, double, double) { return -2.0 * slope * slope; };
  p.r2 = [](double, double, double) { return 0.0; };
  return p;
}

}  // namespace

Profile make_profile(const std::string& name, double amplitude,
                     const GridSpec& grid,
                     const std::map<std::string, double>& params) {
  if (name == "constant") return make_constant(amplitude);
  if (name == "zero") return make_constant(0.0);
  if (name == "cosine" || name == "cosine_decay") {
    const double k1 = param_or(params, "k1", 1.0);
    const double k2 = param_or(params, "k2", 1.0);
    return make_cosine(amplitude, grid, k1, k2, name == "cosine_decay");
  }
  if (name == "affine") {
    return make_affine(amplitude, param_or(params, "ax", 1.0),
                       param_or(params, "by", 1.0),
                       param_or(params, "c0", 0.0));
  }
  throw ValidationError("unknown profile '" + name +
                        "' (known: constant, zero, cosine, cosine_decay, "
                        "affine)");
}

Profile randomized_variant(const Profile& base, const GridSpec& grid,
                           Rng& rng) {
  if (base.name == "constant" || base.name == "zero") {
    const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    Profile p = make_constant(sign * base.amplitude);
    p.name = base.name + "_variant";
    return p;
  }
  // Random mix of Neumann-compatible modes with k1, k2 in {0,1,2}, (0,0)
  // excluded so the variant carries actual wave content.
  const double span = grid.L1 - grid.L0;
  const double L0 = grid.L0;
  struct Mode {
    double kap1, kap2, coeff;
  };
  std::vector<Mode> modes;
  for (int k1 = 0; k1 <= 2; ++k1) {
    for (int k2 = 0; k2 <= 2; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      modes.push_back({k1 * std::numbers::pi / span,
                       k2 * std::numbers::pi / span, rng.uniform(-1.0, 1.0)});
    }
  }
  const double amplitude = base.amplitude;
  Profile p;
  p.name = base.name + "_variant";
  p.amplitude = amplitude;
  p.u0 = [modes, amplitude, L0](double x, double y) {
    double acc = 0.0;
    for (const auto& m : modes)
      acc += m.coeff * std::cos(m.kap1 * (x - L0)) *
             std::cos(m.kap2 * (y - L0));
    return amplitude * acc;
  };
  p.phi = [](double, double) { return 0.0; };
  return p;
}

}  // namespace bousslyap

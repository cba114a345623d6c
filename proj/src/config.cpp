#include "bousslyap/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bousslyap/errors.hpp"

namespace bousslyap {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, const std::string& section,
                         const std::set<std::string>& known) {
  if (!obj.is_object())
    throw ValidationError("config: '" +
                          (section.empty() ? std::string("<top>") : section) +
                          "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (known.find(key) == known.end())
      throw ValidationError("config: unknown key '" +
                            (section.empty() ? key : section + "." + key) +
                            "'");
  }
}

double get_number(const json& obj, const std::string& section,
                  const std::string& key, double fallback, bool required) {
  if (!obj.contains(key)) {
    if (required)
      throw ValidationError("config: missing required key '" + section + "." +
                            key + "'");
    return fallback;
  }
  if (!obj[key].is_number())
    throw ValidationError("config: " + section + "." + key +
                          " must be a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& section,
            const std::string& key, int fallback, bool required) {
  if (!obj.contains(key)) {
    if (required)
      throw ValidationError("config: missing required key '" + section + "." +
                            key + "'");
    return fallback;
  }
  if (!obj[key].is_number_integer())
    throw ValidationError("config: " + section + "." + key +
                          " must be an integer");
  return obj[key].get<int>();
}

bool get_bool(const json& obj, const std::string& section,
              const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean())
    throw ValidationError("config: " + section + "." + key +
                          " must be a boolean");
  return obj[key].get<bool>();
}

std::string get_string(const json& obj, const std::string& section,
                       const std::string& key, const std::string& fallback,
                       bool required) {
  if (!obj.contains(key)) {
    if (required)
      throw ValidationError("config: missing required key '" + section + "." +
                            key + "'");
    return fallback;
  }
  if (!obj[key].is_string())
    throw ValidationError("config: " + section + "." + key +
                          " must be a string");
  return obj[key].get<std::string>();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: JSON parse error: ") +
                          e.what());
  }
  if (!doc.is_object())
    throw ValidationError("config: top level must be an object");
  reject_unknown_keys(doc, "",
                      {"domain", "grid", "coupling", "scheme", "solver",
                       "initial", "run", "output"});

  RunConfig cfg;

  if (!doc.contains("domain"))
    throw ValidationError("config: missing required section 'domain'");
  const json& domain = doc["domain"];
  reject_unknown_keys(domain, "domain", {"L0", "L1"});
  cfg.L0 = get_number(domain, "domain", "L0", 0.0, true);
  cfg.L1 = get_number(domain, "domain", "L1", 1.0, true);
  if (!(cfg.L1 > cfg.L0))
    throw ValidationError("config: domain.L1 must exceed domain.L0");

  if (!doc.contains("grid"))
    throw ValidationError("config: missing required section 'grid'");
  const json& grid = doc["grid"];
  reject_unknown_keys(grid, "grid", {"J"});
  cfg.J = get_int(grid, "grid", "J", 10, true);
  if (cfg.J < 2) throw ValidationError("config: grid.J must be >= 2");

  if (doc.contains("coupling")) {
    const json& coupling = doc["coupling"];
    reject_unknown_keys(coupling, "coupling", {"mode", "s", "eps", "l"});
    const std::string mode =
        get_string(coupling, "coupling", "mode", "coupled", false);
    if (mode == "coupled")
      cfg.coupling = RunConfig::Coupling::coupled;
    else if (mode == "explicit")
      cfg.coupling = RunConfig::Coupling::explicit_l;
    else
      throw ValidationError(
          "config: coupling.mode must be 'coupled' or 'explicit', got '" +
          mode + "'");
    cfg.s = get_number(coupling, "coupling", "s", 1.0, false);
    cfg.eps = get_number(coupling, "coupling", "eps", 1.0, false);
    cfg.l = get_number(coupling, "coupling", "l", 0.0,
                       cfg.coupling == RunConfig::Coupling::explicit_l);
    if (cfg.coupling == RunConfig::Coupling::coupled) {
      if (!(cfg.s > 0.0))
        throw ValidationError("config: coupling.s must be > 0");
      if (!(cfg.eps > 0.0))
        throw ValidationError("config: coupling.eps must be > 0");
    } else if (!(cfg.l > 0.0)) {
      throw ValidationError("config: coupling.l must be > 0");
    }
  }

  if (doc.contains("scheme")) {
    const json& scheme = doc["scheme"];
    reject_unknown_keys(scheme, "scheme",
                        {"alpha", "right_transpose", "legacy_cid2"});
    cfg.alpha = get_number(scheme, "scheme", "alpha", 0.25, false);
    if (!(cfg.alpha >= 0.0 && cfg.alpha <= 0.5))
      throw ValidationError("config: scheme.alpha ∉ [0, 0.5] (got " +
                            std::to_string(cfg.alpha) + ")");
    cfg.right_transpose = get_bool(scheme, "scheme", "right_transpose", false);
    cfg.legacy_cid2 = get_bool(scheme, "scheme", "legacy_cid2", false);
  }

  if (doc.contains("solver")) {
    const json& solver = doc["solver"];
    reject_unknown_keys(solver, "solver", {"method", "tol", "max_iter"});
    const std::string method =
        get_string(solver, "solver", "method", "fixed_point", false);
    if (method == "fixed_point")
      cfg.method = SolveMethod::fixed_point;
    else if (method == "kronecker")
      cfg.method = SolveMethod::kronecker;
    else
      throw ValidationError(
          "config: solver.method must be 'fixed_point' or 'kronecker', got '" +
          method + "'");
    cfg.tol = get_number(solver, "solver", "tol", 1e-12, false);
    if (!(cfg.tol > 0.0))
      throw ValidationError("config: solver.tol must be > 0");
    cfg.max_iter = get_int(solver, "solver", "max_iter", 200, false);
    if (cfg.max_iter < 1)
      throw ValidationError("config: solver.max_iter must be >= 1");
  }

  if (!doc.contains("initial"))
    throw ValidationError("config: missing required section 'initial'");
  const json& initial = doc["initial"];
  reject_unknown_keys(initial, "initial",
                      {"profile", "amplitude", "parameters"});
  cfg.profile = get_string(initial, "initial", "profile", "cosine", true);
  cfg.amplitude = get_number(initial, "initial", "amplitude", 1.0, false);
  if (initial.contains("parameters")) {
    if (!initial["parameters"].is_object())
      throw ValidationError("config: initial.parameters must be an object");
    for (const auto& [key, value] : initial["parameters"].items()) {
      if (!value.is_number())
        throw ValidationError("config: initial.parameters." + key +
                              " must be a number");
      cfg.profile_params[key] = value.get<double>();
    }
  }

  if (doc.contains("run")) {
    const json& run = doc["run"];
    reject_unknown_keys(run, "run", {"t0", "n_steps", "snapshot_every"});
    cfg.t0 = get_number(run, "run", "t0", 0.0, false);
    if (cfg.t0 < 0.0) throw ValidationError("config: run.t0 must be >= 0");
    cfg.n_steps = get_int(run, "run", "n_steps", 100, false);
    if (cfg.n_steps < 0)
      throw ValidationError("config: run.n_steps must be >= 0");
    cfg.snapshot_every = get_int(run, "run", "snapshot_every", 0, false);
    if (cfg.snapshot_every < 0)
      throw ValidationError("config: run.snapshot_every must be >= 0");
  }

  if (doc.contains("output")) {
    const json& output = doc["output"];
    reject_unknown_keys(output, "output", {"directory", "precision"});
    cfg.out_dir = get_string(output, "output", "directory", "out", false);
    cfg.precision = get_int(output, "output", "precision", 17, false);
    if (cfg.precision < 1 || cfg.precision > 17)
      throw ValidationError("config: output.precision must lie in [1, 17]");
  }

  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ordered_json echo_config(const RunConfig& cfg) {
  ordered_json out;
  out["domain"] = {{"L0", cfg.L0}, {"L1", cfg.L1}};
  out["grid"] = {{"J", cfg.J}};
  out["coupling"] = {
      {"mode",
       cfg.coupling == RunConfig::Coupling::coupled ? "coupled" : "explicit"},
      {"s", cfg.s},
      {"eps", cfg.eps},
      {"l", cfg.l}};
  out["scheme"] = {{"alpha", cfg.alpha},
                   {"right_transpose", cfg.right_transpose},
                   {"legacy_cid2", cfg.legacy_cid2}};
  out["solver"] = {{"method", cfg.method == SolveMethod::fixed_point
                                  ? "fixed_point"
                                  : "kronecker"},
                   {"tol", cfg.tol},
                   {"max_iter", cfg.max_iter}};
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : cfg.profile_params) params[key] = value;
  out["initial"] = {{"profile", cfg.profile},
                    {"amplitude", cfg.amplitude},
                    {"parameters", params}};
  out["run"] = {{"t0", cfg.t0},
                {"n_steps", cfg.n_steps},
                {"snapshot_every", cfg.snapshot_every}};
  out["output"] = {{"directory", cfg.out_dir}, {"precision", cfg.precision}};

  const GridSpec g = make_grid(cfg);
  out["effective"] = {{"h", g.h},
                      {"l", g.l},
                      {"sigma", g.sigma},
                      {"delta", g.delta},
                      {"coupled", g.coupled}};
  return out;
}

GridSpec make_grid(const RunConfig& cfg) {
  if (cfg.coupling == RunConfig::Coupling::coupled)
    return build_grid(cfg.L0, cfg.L1, cfg.J, cfg.alpha, cfg.s, cfg.eps,
                      cfg.t0);
  return build_grid_explicit(cfg.L0, cfg.L1, cfg.J, cfg.alpha, cfg.l, cfg.t0);
}

SolverOptions make_solver_options(const RunConfig& cfg) {
  SolverOptions opts;
  opts.method = cfg.method;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.right_transpose = cfg.right_transpose;
  return opts;
}

}  // namespace bousslyap

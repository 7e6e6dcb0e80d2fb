#include "cli_app.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <vector>

#include <json.hpp>

#include "lbreg/diagnostics.hpp"
#include "lbreg/subproblem.hpp"
#include "lbreg/trace_io.hpp"

namespace lbreg::cli {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const char* where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) { known = true; break; }
    if (!known)
      throw ConfigError(std::string("unknown key '") + item.key() + "' in " + where);
  }
}

const json& require_key(const json& j, const char* where, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(std::string("missing key '") + key + "' in " + where);
  return *it;
}

double as_number(const json& j, const char* what) {
  if (!j.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return j.get<double>();
}

long as_integer(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw ConfigError(std::string(what) + " must be an integer");
  return j.get<long>();
}

std::string final_x_path(const std::string& trace_path) {
  const size_t dot = trace_path.find_last_of('.');
  const size_t slash = trace_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return trace_path + "_x.csv";
  return trace_path.substr(0, dot) + "_x" + trace_path.substr(dot);
}

void progress(bool quiet, const std::string& line) {
  if (!quiet) std::cerr << line << '\n';
}

json report_to_json(const CheckReport& r) {
  json j{{"name", r.name},
         {"samples_or_iters", r.samples_or_iters},
         {"max_violation", r.max_violation},
         {"passed", r.passed}};
  if (r.first_failure) j["first_failure"] = *r.first_failure;
  else j["first_failure"] = nullptr;
  return j;
}

}  // namespace

RunSpec parse_run_spec(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be an object");
  reject_unknown_keys(j, "config root", {"problem", "solver", "output"});

  RunSpec spec;

  const json& p = require_key(j, "config root", "problem");
  reject_unknown_keys(p, "problem", {"family", "seed", "m", "n_or_d", "k", "epsilon"});
  spec.family = require_key(p, "problem", "family").get<std::string>();
  if (spec.family != "sparse_linear" && spec.family != "nonneg_linear" &&
      spec.family != "quadratic")
    throw ConfigError("problem.family must be sparse_linear | nonneg_linear | quadratic");
  const long seed = as_integer(require_key(p, "problem", "seed"), "problem.seed");
  if (seed < 0) throw ConfigError("problem.seed must be >= 0");
  spec.seed = static_cast<uint64_t>(seed);
  spec.m = static_cast<int>(as_integer(require_key(p, "problem", "m"), "problem.m"));
  spec.n_or_d =
      static_cast<int>(as_integer(require_key(p, "problem", "n_or_d"), "problem.n_or_d"));
  spec.k = static_cast<int>(as_integer(require_key(p, "problem", "k"), "problem.k"));
  if (p.contains("epsilon")) spec.epsilon = as_number(p["epsilon"], "problem.epsilon");

  if (j.contains("solver")) {
    const json& s = j["solver"];
    reject_unknown_keys(s, "solver",
                        {"beta", "omega", "delta", "mu", "mu_schedule", "max_iters",
                         "tol_step", "tol_residual"});
    if (s.contains("beta")) spec.beta = as_number(s["beta"], "solver.beta");
    if (s.contains("omega")) {
      if (s["omega"].is_string()) {
        if (s["omega"] != "auto") throw ConfigError("solver.omega: bad string value");
      } else {
        spec.omega = as_number(s["omega"], "solver.omega");
      }
    }
    if (s.contains("delta")) {
      if (s["delta"].is_string()) {
        if (s["delta"] != "auto") throw ConfigError("solver.delta: bad string value");
      } else {
        spec.delta = as_number(s["delta"], "solver.delta");
      }
    }
    if (s.contains("mu")) spec.mu = as_number(s["mu"], "solver.mu");
    if (s.contains("mu_schedule")) {
      const std::string sched = s["mu_schedule"].get<std::string>();
      if (sched == "decaying") spec.mu_decaying = true;
      else if (sched != "constant")
        throw ConfigError("solver.mu_schedule must be constant | decaying");
    }
    if (s.contains("max_iters"))
      spec.max_iters = as_integer(s["max_iters"], "solver.max_iters");
    if (s.contains("tol_step"))
      spec.tol_step = as_number(s["tol_step"], "solver.tol_step");
    if (s.contains("tol_residual"))
      spec.tol_residual = as_number(s["tol_residual"], "solver.tol_residual");
  }

  const json& o = require_key(j, "config root", "output");
  reject_unknown_keys(o, "output", {"trace_path", "format"});
  spec.trace_path = require_key(o, "output", "trace_path").get<std::string>();
  if (o.contains("format")) spec.format = o["format"].get<std::string>();
  if (spec.format != "csv") throw ConfigError("output.format: only csv is supported");
  return spec;
}

RunSpec load_run_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunSpec spec = parse_run_spec(j);
  spec.seed = apply_seed_override(spec.seed);
  return spec;
}

uint64_t apply_seed_override(uint64_t seed) {
  const char* env = std::getenv("BREG_SEED_OVERRIDE");
  if (!env || !*env) return seed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw ConfigError("BREG_SEED_OVERRIDE must be a nonnegative integer");
  return static_cast<uint64_t>(v);
}

PreparedRun prepare_run(const RunSpec& spec) {
  auto build = [&]() -> ProblemInstance {
    if (spec.family == "sparse_linear")
      return gen_sparse_linear(spec.seed, spec.m, spec.n_or_d, spec.k);
    if (spec.family == "nonneg_linear")
      return gen_nonneg_linear(spec.seed, spec.m, spec.n_or_d, spec.k, spec.epsilon);
    if (spec.family == "quadratic")
      return gen_quadratic(spec.seed, spec.m, spec.n_or_d, spec.k, spec.epsilon);
    throw ConfigError("unknown problem family: " + spec.family);
  };

  ProblemInstance problem = build();
  const double L = smoothness_constant(problem.energy, problem.kernel).value;
  const double alpha = problem.kernel.symmetry_coefficient();
  const double omega = spec.omega.value_or(0.5 * (1.0 + alpha));
  const double delta = spec.delta.value_or(0.99 * (1.0 + alpha - omega) / L);

  SolverConfig config;
  config.beta = spec.beta;
  config.omega = omega;
  config.schedule = spec.mu_decaying
                        ? Schedule::decaying(delta, spec.mu, spec.mu / 10.0)
                        : Schedule::constant(delta, spec.mu);
  config.max_iters = spec.max_iters;
  config.tol_step = spec.tol_step;
  config.tol_residual = spec.tol_residual;

  if (spec.family == "quadratic") {
    // The origin is a stationary point of this energy, so the clean-slate
    // start would never move; begin from the all-ones interior point instead.
    config.x0 = Eigen::VectorXd::Ones(problem.kernel.dim());
    config.p0 = problem.regularizer.subgradient(config.x0);
  } else {
    const StartingPoint start = natural_start(
        problem.kernel, problem.regularizer, delta * (spec.mu + spec.beta));
    config.x0 = start.x;
    config.p0 = start.p;
  }

  PreparedRun prepared{std::move(problem), std::move(config), L, alpha, omega,
                       L * omega / (1.0 + alpha - omega)};
  return prepared;
}

int cmd_solve(const std::string& config_path, const SolveOptions& opts) {
  RunSpec spec;
  std::optional<PreparedRun> prepared;
  try {
    spec = load_run_spec(config_path);
    prepared.emplace(prepare_run(spec));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kBadConfig;
  }
  PreparedRun& prep = *prepared;

  const ValidationReport validation =
      validate_config(prep.config, prep.problem.kernel, prep.problem.regularizer,
                      prep.L, prep.alpha);
  if (!validation.ok) {
    std::cerr << "invalid run: " << validation.message << '\n';
    return kInvalidRun;
  }

  const std::string x_path = final_x_path(spec.trace_path);
  {
    std::ofstream probe(spec.trace_path, std::ios::binary);
    if (!probe) {
      std::cerr << "output error: cannot write " << spec.trace_path << '\n';
      return kBadConfig;
    }
  }

  RunResult result;
  try {
    result = run(prep.config, prep.problem.energy, prep.problem.kernel,
                 prep.problem.regularizer);
  } catch (const DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kDiverged;
  }
  progress(opts.quiet, "solve: " + std::string(to_string(result.stop_reason)) +
                           " after " + std::to_string(result.trace.size()) +
                           " iterations");

  try {
    write_trace_csv(spec.trace_path, result.trace);
    write_vector_csv(x_path, result.final_state.x);
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kBadConfig;
  }

  const json summary{{"stop_reason", to_string(result.stop_reason)},
                     {"iters", result.trace.size()},
                     {"final_f_beta", result.final_state.f_beta},
                     {"final_residual",
                      prep.problem.energy.residual(result.final_state.x)},
                     {"final_x_path", x_path}};
  std::cout << summary.dump() << '\n';
  return kOk;
}

int cmd_check(const std::string& config_path, const CheckOptions& opts) {
  RunSpec spec;
  std::optional<PreparedRun> prepared;
  try {
    spec = load_run_spec(config_path);
    prepared.emplace(prepare_run(spec));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kBadConfig;
  }
  PreparedRun& prep = *prepared;
  if (opts.suite != "all" && opts.suite != "trace" && opts.suite != "sampled") {
    std::cerr << "config error: unknown suite '" << opts.suite << "'\n";
    return kBadConfig;
  }

  const Energy& energy = prep.problem.energy;
  const Kernel& kernel = prep.problem.kernel;
  const Regularizer& reg = prep.problem.regularizer;

  std::vector<CheckReport> reports;

  if (opts.suite == "all" || opts.suite == "trace") {
    const ValidationReport validation =
        validate_config(prep.config, kernel, reg, prep.L, prep.alpha);
    if (!validation.ok) {
      std::cerr << "invalid run: " << validation.message << '\n';
      return kInvalidRun;
    }
    SolverConfig config = prep.config;
    config.record_states = true;
    RunResult result;
    try {
      result = run(config, energy, kernel, reg);
    } catch (const DivergenceError& e) {
      std::cerr << "diverged: " << e.what() << '\n';
      return kDiverged;
    }
    progress(opts.quiet, "check: solved " + std::to_string(result.trace.size()) +
                             " iterations, verifying");
    if (opts.inject_fbeta_bump && !result.trace.empty()) {
      const size_t at = static_cast<size_t>(
          std::min<long>(*opts.inject_fbeta_bump,
                         static_cast<long>(result.trace.size()) - 1));
      result.trace[at].f_beta += 1.0;
    }
    const double f0 = energy.value(config.x0) + config.beta * reg.value(config.x0);
    reports.push_back(check_trace_inequalities(result.trace, prep.rho,
                                               prep.config.schedule.mu, f0));
    reports.push_back(check_surrogate_descent(result.states, energy, kernel, reg,
                                              prep.config.beta,
                                              prep.config.schedule.mu, prep.rho));
    reports.push_back(check_subgradient_bound(result.states, energy, kernel, reg,
                                              prep.config.beta, prep.config.schedule));
  }

  if (opts.suite == "all" || opts.suite == "sampled") {
    reports.push_back(check_three_point(kernel, 1000, spec.seed));
    reports.push_back(check_lc_sampled(energy, kernel, prep.L, 1000, spec.seed));
  }

  const CheckReport* first_failed = nullptr;
  for (const CheckReport& r : reports) {
    std::cout << report_to_json(r).dump() << '\n';
    if (!r.passed && !first_failed) first_failed = &r;
  }
  if (first_failed) {
    std::cerr << "check failed: " << first_failed->name << '\n';
    return kCheckFailed;
  }
  return kOk;
}

int cmd_oracle_compare(const std::string& config_path,
                       const OracleCompareOptions& opts) {
  RunSpec spec;
  std::optional<PreparedRun> prepared;
  try {
    spec = load_run_spec(config_path);
    prepared.emplace(prepare_run(spec));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kBadConfig;
  }
  PreparedRun& prep = *prepared;

  if (spec.family != "sparse_linear") {
    std::cerr << "oracle-compare: only the sparse_linear family is supported\n";
    return kInvalidRun;
  }
  if (spec.n_or_d > 10) {
    std::cerr << "oracle-compare: enumeration is capped at n <= 10\n";
    return kInvalidRun;
  }
  if (spec.beta != 0.0 || spec.mu_decaying) {
    std::cerr << "oracle-compare: requires beta = 0 and a constant schedule\n";
    return kInvalidRun;
  }

  const ValidationReport validation =
      validate_config(prep.config, prep.problem.kernel, prep.problem.regularizer,
                      prep.L, prep.alpha);
  if (!validation.ok) {
    std::cerr << "invalid run: " << validation.message << '\n';
    return kInvalidRun;
  }

  RunResult result;
  try {
    result = run(prep.config, prep.problem.energy, prep.problem.kernel,
                 prep.problem.regularizer);
  } catch (const DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kDiverged;
  }
  progress(opts.quiet, "oracle-compare: solver finished after " +
                           std::to_string(result.trace.size()) + " iterations");

  Eigen::VectorXd oracle;
  try {
    oracle = oracle_elastic_net_bp(prep.problem.energy.A(), prep.problem.energy.b(),
                                   prep.config.schedule.mu, prep.config.schedule.delta);
  } catch (const std::exception& e) {
    std::cerr << "oracle failed: " << e.what() << '\n';
    return kOracleMismatch;
  }

  const double err = (result.final_state.x - oracle).lpNorm<Eigen::Infinity>();
  const json out{{"linf_error", err},
                 {"iters", result.trace.size()},
                 {"stop_reason", to_string(result.stop_reason)},
                 {"passed", err <= 1e-6}};
  std::cout << out.dump() << '\n';
  if (err > 1e-6) {
    std::cerr << "oracle-compare: solver limit differs from oracle by " << err << '\n';
    return kOracleMismatch;
  }
  return kOk;
}

}  // namespace lbreg::cli

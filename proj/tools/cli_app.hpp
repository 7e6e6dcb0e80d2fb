#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "lbreg/problem.hpp"
#include "lbreg/solver.hpp"

namespace lbreg::cli {

// Exit codes shared by all subcommands.
enum ExitCode : int {
  kOk = 0,
  kBadConfig = 1,     // malformed config file or unwritable output
  kInvalidRun = 2,    // validate_config failed / unsupported request
  kDiverged = 3,
  kCheckFailed = 4,
  kOracleMismatch = 5,
};

// Parsed run configuration file. Schema (all keys optional unless noted):
//
// {
//   "problem": { "family": "sparse_linear" | "nonneg_linear" | "quadratic",   (required)
//                "seed": uint,        (required)
//                "m": int,            (required)
//                "n_or_d": int,       (required)
//                "k": int,            (required)
//                "epsilon": float },  (default 0.1; unused by sparse_linear)
//   "solver":  { "beta": float >= 0          (default 0),
//                "omega": float | "auto"     (default (1+alpha)/2),
//                "delta": float | "auto"     (default 0.99 (1+alpha-omega)/L),
//                "mu": float >= 0            (default 1),
//                "mu_schedule": "constant" | "decaying"  (default constant;
//                   decaying adds (mu/10)/(k+1)^2),
//                "max_iters": int            (default 10000),
//                "tol_step": float           (default 1e-14),
//                "tol_residual": float       (default 1e-8) },
//   "output":  { "trace_path": string,       (required)
//                "format": "csv" }           (default csv)
// }
//
// Unknown keys anywhere are rejected.
struct RunSpec {
  std::string family;
  uint64_t seed = 0;
  int m = 0;
  int n_or_d = 0;
  int k = 0;
  double epsilon = 0.1;

  double beta = 0.0;
  std::optional<double> omega;  // nullopt = auto
  std::optional<double> delta;  // nullopt = auto
  double mu = 1.0;
  bool mu_decaying = false;
  long max_iters = 10000;
  double tol_step = 1e-14;
  double tol_residual = 1e-8;

  std::string trace_path;
  std::string format = "csv";
};

// Throws ConfigError with a human-readable message on any schema violation.
RunSpec parse_run_spec(const nlohmann::json& j);
RunSpec load_run_spec(const std::string& path);  // reads + parses the file

// Everything needed to run and check: the generated instance, resolved solver
// configuration and the constants derived from the pair.
struct PreparedRun {
  ProblemInstance problem;
  SolverConfig config;
  double L = 0.0;
  double alpha = 0.0;
  double omega = 0.0;
  double rho = 0.0;  // L omega / (1 + alpha - omega)
};

// Resolves "auto" values, family defaults (start point included) and rho.
// Throws ConfigError for an unknown family.
PreparedRun prepare_run(const RunSpec& spec);

struct SolveOptions {
  bool quiet = false;
};

struct CheckOptions {
  bool quiet = false;
  std::string suite = "all";             // all | trace | sampled
  std::optional<long> inject_fbeta_bump; // test hook: corrupt one trace row
};

struct OracleCompareOptions {
  bool quiet = false;
};

int cmd_solve(const std::string& config_path, const SolveOptions& opts);
int cmd_check(const std::string& config_path, const CheckOptions& opts);
int cmd_oracle_compare(const std::string& config_path, const OracleCompareOptions& opts);

// Applied to every command: BREG_SEED_OVERRIDE replaces the config seed.
uint64_t apply_seed_override(uint64_t seed);

}  // namespace lbreg::cli

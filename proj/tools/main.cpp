#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Linearized Bregman solver for sparse and signed-measurement recovery"};
  app.require_subcommand(1);

  std::string solve_config;
  bool solve_quiet = false;
  CLI::App* solve = app.add_subcommand("solve", "Run the solver and write a trace");
  solve->add_option("config", solve_config, "JSON run configuration")->required();
  solve->add_flag("--quiet", solve_quiet, "Suppress progress output");

  std::string check_config;
  bool check_quiet = false;
  std::string check_suite = "all";
  long inject_bump = -1;
  CLI::App* check = app.add_subcommand("check", "Run and verify descent diagnostics");
  check->add_option("config", check_config, "JSON run configuration")->required();
  check->add_flag("--quiet", check_quiet, "Suppress progress output");
  check->add_option("--suite", check_suite, "Which checks to run: all | trace | sampled")
      ->default_val("all");
  check->add_option("--inject-fbeta-bump", inject_bump)->group("");  // test hook

  std::string oracle_config;
  bool oracle_quiet = false;
  CLI::App* oracle =
      app.add_subcommand("oracle-compare", "Compare the solver limit to enumeration");
  oracle->add_option("config", oracle_config, "JSON run configuration")->required();
  oracle->add_flag("--quiet", oracle_quiet, "Suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : lbreg::cli::kBadConfig;
  }

  try {
    if (solve->parsed())
      return lbreg::cli::cmd_solve(solve_config, {solve_quiet});
    if (check->parsed()) {
      lbreg::cli::CheckOptions opts;
      opts.quiet = check_quiet;
      opts.suite = check_suite;
      if (inject_bump >= 0) opts.inject_fbeta_bump = inject_bump;
      return lbreg::cli::cmd_check(check_config, opts);
    }
    if (oracle->parsed())
      return lbreg::cli::cmd_oracle_compare(oracle_config, {oracle_quiet});
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lbreg::cli::kBadConfig;
  }
  return lbreg::cli::kBadConfig;
}

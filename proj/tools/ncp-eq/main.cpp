// ncp-eq: solve Cournot market equilibria and other complementarity
// problems with the four-stage regularized Newton iteration.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
  using namespace ncpeq::cli;

  CLI::App app{"Nonlinear complementarity solver for oligopoly market equilibria"};
  app.require_subcommand(1);

  std::string config_path;
  CommandOptions opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON run configuration")->required();
    sub->add_flag("--json", opts.json, "Print a machine-readable JSON summary");
  };

  auto* solve = app.add_subcommand("solve", "Solve the configured problem");
  add_common(solve);
  solve->add_option("--trace", opts.trace_path, "Write the per-iteration trace (CSV)");
  solve->add_option("--tol", opts.tol, "Override solver.tol");
  solve->add_option("--max-iter", opts.max_iter, "Override solver.max_iter");

  auto* compare = app.add_subcommand("compare", "Modified vs classical Newton side by side");
  add_common(compare);
  compare->add_option("--tol", opts.tol, "Override solver.tol");
  compare->add_option("--max-iter", opts.max_iter, "Override solver.max_iter");

  auto* order = app.add_subcommand("order", "Estimate the computational order of convergence");
  add_common(order);
  order->add_option("--max-iter", opts.max_iter, "Override solver.max_iter");

  auto* check = app.add_subcommand("check", "Audit Jacobians and the psi equivalence");
  add_common(check);
  check->add_option("--seed", opts.seed, "Seed for the randomised checks");
  check->add_flag("--corrupt-jacobian", opts.corrupt_jacobian,
                  "Perturb the analytic Jacobian (negative control)");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = load_config(config_path);
    if (*solve) return cmd_solve(cfg, opts, std::cout, std::cerr);
    if (*compare) return cmd_compare(cfg, opts, std::cout, std::cerr);
    if (*order) return cmd_order(cfg, opts, std::cout, std::cerr);
    if (*check) return cmd_check(cfg, opts, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "ncp-eq: invalid configuration: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ncp-eq: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

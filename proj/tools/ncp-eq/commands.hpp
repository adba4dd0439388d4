#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "config.hpp"
#include "ncpeq/equation_system.hpp"
#include "ncpeq/market.hpp"

namespace ncpeq::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitMaxIterations = 2,
  kExitSingular = 3,
  kExitDomain = 4,
  kExitCheckFailed = 5,
  kExitInsufficientData = 6,
};

int exit_code(solver::Status status) noexcept;

struct CommandOptions {
  bool json = false;                        ///< machine-readable summary on stdout
  std::optional<std::string> trace_path;    ///< overrides output.trace
  std::optional<double> tol;                ///< overrides solver.tol
  std::optional<int> max_iter;              ///< overrides solver.max_iter
  std::uint64_t seed = 20240917;            ///< randomised checks
  bool corrupt_jacobian = false;            ///< negative control for `check`
};

/// The system a configuration describes. `market` is null for the bundled
/// non-market test systems.
struct Problem {
  std::shared_ptr<const market::MarketModel> market;
  std::shared_ptr<const EquationSystem> system;
};

Problem build_problem(const RunConfig& cfg);

/// Applies command-line overrides and re-validates.
RunConfig with_overrides(RunConfig cfg, const CommandOptions& opts);

/// Writes "k,z_1..z_n,n1" rows (k = 0 is the initial point) with 17
/// significant digits.
void write_trace(std::ostream& out, const solver::SolveResult& run);

int cmd_solve(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out,
              std::ostream& err);
int cmd_compare(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out,
                std::ostream& err);
int cmd_order(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out,
              std::ostream& err);
int cmd_check(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out,
              std::ostream& err);

}  // namespace ncpeq::cli

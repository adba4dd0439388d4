#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ncpeq/linalg.hpp"
#include "ncpeq/solver.hpp"

namespace ncpeq::solver {

/// Computational order of convergence
///   rho_k = ln(e_{k+1} / e_k) / ln(e_k / e_{k-1}),   e_k = ||z_k - z*||_2.
/// per_step_orders[k] is the estimate centred on iterate k; entries at the
/// ends, or whose triple touches the precision floor, are empty.
struct OrderEstimate {
  std::vector<std::optional<double>> per_step_orders{};
  linalg::Vector reference_solution;
  std::vector<double> error_norms{};
  double precision_floor = 0.0;

  std::optional<double> max_defined() const;
  std::optional<double> last_defined() const;
  std::size_t defined_count() const;
};

/// Errors at or below 100 * machine epsilon * max(1, ||z*||_inf) are treated
/// as zero. Throws InsufficientData when fewer than three iterates are usable
/// or no triple yields an estimate.
OrderEstimate estimate_order(std::span<const IterationRecord> trace,
                             const linalg::Vector& reference);

/// Same as above with the run's initial point prepended as iterate 0.
OrderEstimate estimate_order(const SolveResult& run, const linalg::Vector& reference);

}  // namespace ncpeq::solver

#include "ncpeq/order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncpeq/errors.hpp"

namespace ncpeq::solver {
namespace {

OrderEstimate from_iterates(std::span<const linalg::Vector> iterates,
                            const linalg::Vector& reference) {
  OrderEstimate est{.reference_solution = reference};
  if (iterates.size() < 3)
    throw InsufficientData("order estimate needs at least 3 iterates, got " +
                           std::to_string(iterates.size()));

  est.precision_floor = 100.0 * std::numeric_limits<double>::epsilon() *
                        std::max(1.0, linalg::norm_inf(reference));
  std::size_t usable = 0;
  for (const auto& z : iterates) {
    est.error_norms.push_back(linalg::norm2(z - reference));
    if (est.error_norms.back() > est.precision_floor) ++usable;
  }
  if (usable < 3)
    throw InsufficientData("only " + std::to_string(usable) +
                           " iterates lie above the precision floor");

  const auto& e = est.error_norms;
  const auto ok = [&](double v) { return v > est.precision_floor; };
  est.per_step_orders.assign(e.size(), std::nullopt);
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    if (!ok(e[k - 1]) || !ok(e[k]) || !ok(e[k + 1]) || e[k] == e[k - 1]) continue;
    const double rho = std::log(e[k + 1] / e[k]) / std::log(e[k] / e[k - 1]);
    if (std::isfinite(rho)) est.per_step_orders[k] = rho;
  }
  if (est.defined_count() == 0)
    throw InsufficientData("no consecutive triple of iterates above the precision floor");
  return est;
}

}  // namespace

std::optional<double> OrderEstimate::max_defined() const {
  std::optional<double> best;
  for (const auto& r : per_step_orders)
    if (r && (!best || *r > *best)) best = r;
  return best;
}

std::optional<double> OrderEstimate::last_defined() const {
  for (auto it = per_step_orders.rbegin(); it != per_step_orders.rend(); ++it)
    if (*it) return *it;
  return std::nullopt;
}

std::size_t OrderEstimate::defined_count() const {
  return static_cast<std::size_t>(
      std::count_if(per_step_orders.begin(), per_step_orders.end(),
                    [](const auto& r) { return r.has_value(); }));
}

OrderEstimate estimate_order(std::span<const IterationRecord> trace,
                             const linalg::Vector& reference) {
  std::vector<linalg::Vector> zs;
  zs.reserve(trace.size());
  for (const auto& rec : trace) zs.push_back(rec.z);
  return from_iterates(zs, reference);
}

OrderEstimate estimate_order(const SolveResult& run, const linalg::Vector& reference) {
  std::vector<linalg::Vector> zs{run.initial_point};
  for (const auto& rec : run.trace) zs.push_back(rec.z);
  return from_iterates(zs, reference);
}

}  // namespace ncpeq::solver

#include "ncpeq/market.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ncpeq/errors.hpp"

namespace ncpeq::market {
namespace {

void require_positive_total(double q_total, const char* fn) {
  if (!(q_total > 0.0) || !std::isfinite(q_total))
    throw DomainError(std::string(fn) + ": total supply must be positive, got " +
                      std::to_string(q_total));
}

double total_supply(const linalg::Vector& z) {
  double q = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < 0.0)
      throw DomainError("negative supply at index " + std::to_string(i));
    q += z[i];
  }
  if (!(q > 0.0)) throw DomainError("total supply must be positive");
  return q;
}

void require_dim(const MarketModel& m, const linalg::Vector& z) {
  if (z.size() != m.dimension())
    throw DimensionMismatch("market has " + std::to_string(m.dimension()) +
                            " firms, point has dimension " + std::to_string(z.size()));
}

}  // namespace

void validate(const Firm& firm) {
  if (!(firm.n >= 0.0) || !std::isfinite(firm.n))
    throw DomainError("firm: n must be finite and >= 0");
  if (!(firm.L > 0.0) || !std::isfinite(firm.L))
    throw DomainError("firm: L must be finite and > 0");
  if (!(firm.beta > 0.0) || !std::isfinite(firm.beta))
    throw DomainError("firm: beta must be finite and > 0");
}

void validate(const DemandCurve& demand) {
  if (!(demand.scale > 0.0) || !std::isfinite(demand.scale))
    throw DomainError("demand: scale must be finite and > 0");
  if (!(demand.elasticity > 1.0) || !std::isfinite(demand.elasticity))
    throw DomainError("demand: elasticity must be finite and > 1");
}

double inverse_demand(const DemandCurve& d, double q_total) {
  require_positive_total(q_total, "inverse_demand");
  const double a = 1.0 / d.elasticity;
  return std::pow(d.scale, a) * std::pow(q_total, -a);
}

double demand_slope(const DemandCurve& d, double q_total) {
  require_positive_total(q_total, "demand_slope");
  const double a = 1.0 / d.elasticity;
  return -a * std::pow(d.scale, a) * std::pow(q_total, -a - 1.0);
}

double demand_curvature(const DemandCurve& d, double q_total) {
  require_positive_total(q_total, "demand_curvature");
  const double a = 1.0 / d.elasticity;
  return a * (a + 1.0) * std::pow(d.scale, a) * std::pow(q_total, -a - 2.0);
}

double marginal_cost(const Firm& firm, double q, CostVariant variant) {
  if (!(q >= 0.0)) throw DomainError("marginal_cost: supply must be >= 0");
  const double r = 1.0 / firm.beta;
  switch (variant) {
    case CostVariant::AsWritten:
      return firm.n + std::pow(firm.L, r) * std::pow(q, r);
    case CostVariant::ClassicMurphy:
      return firm.n + std::pow(q / firm.L, r);
  }
  return firm.n;
}

double marginal_cost_slope(const Firm& firm, double q, CostVariant variant) {
  if (!(q > 0.0)) throw DomainError("marginal_cost_slope: supply must be > 0");
  const double r = 1.0 / firm.beta;
  switch (variant) {
    case CostVariant::AsWritten:
      return r * std::pow(firm.L, r) * std::pow(q, r - 1.0);
    case CostVariant::ClassicMurphy:
      return r / firm.L * std::pow(q / firm.L, r - 1.0);
  }
  return 0.0;
}

MarketModel::MarketModel(std::vector<Firm> firms, DemandCurve demand, CostVariant variant)
    : firms_(std::move(firms)), demand_(demand), variant_(variant) {
  if (firms_.empty()) throw DomainError("market: at least one firm is required");
  for (const Firm& f : firms_) validate(f);
  validate(demand_);
}

linalg::Vector MarketModel::value(const linalg::Vector& z) const {
  require_dim(*this, z);
  const double q = total_supply(z);
  const double p = inverse_demand(demand_, q);
  const double dp = demand_slope(demand_, q);
  std::vector<double> f(z.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = marginal_cost(firms_[i], z[i], variant_) - p - z[i] * dp;
  return linalg::Vector(std::move(f));
}

linalg::Matrix MarketModel::jacobian(const linalg::Vector& z) const {
  require_dim(*this, z);
  const double q = total_supply(z);
  const double dp = demand_slope(demand_, q);
  const double d2p = demand_curvature(demand_, q);
  const std::size_t n = z.size();
  std::vector<double> jac(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double off = -dp - z[i] * d2p;
    for (std::size_t j = 0; j < n; ++j) jac[i * n + j] = off;
    jac[i * n + i] +=
        marginal_cost_slope(firms_[i], std::max(z[i], kSupplyFloor), variant_) - dp;
  }
  return linalg::Matrix(n, std::move(jac));
}

linalg::Vector ncp_map(const MarketModel& m, const linalg::Vector& z) { return m.value(z); }

linalg::Matrix ncp_jacobian(const MarketModel& m, const linalg::Vector& z) {
  return m.jacobian(z);
}

double natural_residual(const NcpProblem& problem, const linalg::Vector& z) {
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] < 0.0) throw DomainError("natural_residual: negative component");
  const linalg::Vector f = problem.value(z);
  double r = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) r = std::max(r, std::abs(std::min(z[i], f[i])));
  return r;
}

double kkt_residual(const MarketModel& m, const linalg::Vector& z) {
  return natural_residual(m, z);
}

}  // namespace ncpeq::market

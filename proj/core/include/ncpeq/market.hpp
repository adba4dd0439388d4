#pragma once

#include <cstddef>
#include <vector>

#include "ncpeq/equation_system.hpp"
#include "ncpeq/linalg.hpp"

namespace ncpeq::market {

/// Cost parameters of one producer: c(q) = n q + beta/(beta+1) * K * q^((beta+1)/beta)
/// where K depends on the cost variant (see CostVariant).
struct Firm {
  double n = 0.0;     ///< linear marginal-cost coefficient, >= 0
  double L = 1.0;     ///< scale parameter, > 0
  double beta = 1.0;  ///< curvature exponent, > 0

  friend bool operator==(const Firm&, const Firm&) = default;
};

/// Iso-elastic demand Q = scale * P^(-elasticity).
struct DemandCurve {
  double scale = 1.0;       ///< > 0
  double elasticity = 2.0;  ///< > 1

  friend bool operator==(const DemandCurve&, const DemandCurve&) = default;
};

enum class CostVariant {
  /// K = L^(1/beta): c'(q) = n + L^(1/beta) q^(1/beta).
  AsWritten,
  /// K = L^(-1/beta): c'(q) = n + (q/L)^(1/beta).
  ClassicMurphy,
};

/// Supplies below this floor are clamped when evaluating c''(q), which is
/// unbounded at q = 0 for beta > 1.
inline constexpr double kSupplyFloor = 1e-12;

void validate(const Firm& firm);
void validate(const DemandCurve& demand);

double inverse_demand(const DemandCurve& d, double q_total);
double demand_slope(const DemandCurve& d, double q_total);
double demand_curvature(const DemandCurve& d, double q_total);

double marginal_cost(const Firm& firm, double q, CostVariant variant);
double marginal_cost_slope(const Firm& firm, double q, CostVariant variant);

/// Single-product Cournot oligopoly. The induced NCP map is
///   f_i(z) = c_i'(z_i) - P(Q) - z_i P'(Q),   Q = sum_j z_j.
class MarketModel final : public NcpProblem {
 public:
  MarketModel(std::vector<Firm> firms, DemandCurve demand,
              CostVariant variant = CostVariant::AsWritten);

  const std::vector<Firm>& firms() const noexcept { return firms_; }
  const DemandCurve& demand() const noexcept { return demand_; }
  CostVariant cost_variant() const noexcept { return variant_; }

  std::size_t dimension() const override { return firms_.size(); }
  linalg::Vector value(const linalg::Vector& z) const override;
  linalg::Matrix jacobian(const linalg::Vector& z) const override;

 private:
  std::vector<Firm> firms_;
  DemandCurve demand_;
  CostVariant variant_;
};

linalg::Vector ncp_map(const MarketModel& m, const linalg::Vector& z);
linalg::Matrix ncp_jacobian(const MarketModel& m, const linalg::Vector& z);

/// Natural residual max_i |min(z_i, f_i(z))|; zero exactly at equilibria.
double kkt_residual(const MarketModel& m, const linalg::Vector& z);

/// Same merit for an arbitrary NCP map.
double natural_residual(const NcpProblem& problem, const linalg::Vector& z);

}  // namespace ncpeq::market

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ncpeq/linalg.hpp"
#include "ncpeq/market.hpp"
#include "ncpeq/reform.hpp"
#include "ncpeq/solver.hpp"

namespace ncpeq::fx {

inline const linalg::Vector kReferenceSolution{15.4293, 12.4986, 9.6635, 7.1651, 5.1326};
inline const linalg::Vector kReferenceStart{40, 50, 60, 55, 45};

/// Table 1 as printed.
inline std::vector<market::Firm> table1_firms() {
  return {{10, 5, 1.2}, {8, 5, 1.1}, {6, 5, 1.0}, {4, 5, 0.8}, {2, 5, 0.6}};
}

/// Table 1 with beta_4 = 0.9, beta_5 = 0.8; reproduces the reported equilibrium.
inline std::vector<market::Firm> murphy_firms() {
  return {{10, 5, 1.2}, {8, 5, 1.1}, {6, 5, 1.0}, {4, 5, 0.9}, {2, 5, 0.8}};
}

inline const market::DemandCurve kReferenceDemand{5000.0, 1.1};

inline std::shared_ptr<const market::MarketModel> murphy_market(
    market::CostVariant v = market::CostVariant::AsWritten) {
  return std::make_shared<const market::MarketModel>(murphy_firms(), kReferenceDemand, v);
}

inline std::shared_ptr<const market::MarketModel> table1_market(
    market::CostVariant v = market::CostVariant::AsWritten) {
  return std::make_shared<const market::MarketModel>(table1_firms(), kReferenceDemand, v);
}

/// Magnitudes under which the reference start point converges (see murphy5.json).
inline solver::SolverConfig murphy_solver() {
  solver::SolverConfig cfg;
  cfg.reg = {3.0, 1e3, 1e-9, 1e-12};
  return cfg;
}

inline std::string config_path(const std::string& name) {
  return std::string(NCPEQ_CONFIG_DIR) + "/" + name;
}

}  // namespace ncpeq::fx

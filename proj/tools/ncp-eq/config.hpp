#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncpeq/errors.hpp"
#include "ncpeq/linalg.hpp"
#include "ncpeq/market.hpp"
#include "ncpeq/reform.hpp"
#include "ncpeq/solver.hpp"

namespace ncpeq::cli {

/// Malformed or invalid configuration. `where()` names the line/column or the
/// offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string where, const std::string& what)
      : Error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

enum class ProblemKind {
  Market,           ///< Cournot market reformulated through psi
  QuadraticScalar,  ///< g(z) = z^2 - 4
  SmoothPlanar,     ///< smooth 2-d system with root (1, 1)
};

std::string_view to_string(ProblemKind kind) noexcept;

struct MarketSpec {
  std::vector<market::Firm> firms;
  market::DemandCurve demand;
  market::CostVariant cost_variant = market::CostVariant::AsWritten;

  friend bool operator==(const MarketSpec&, const MarketSpec&) = default;
};

struct OutputPaths {
  std::optional<std::string> trace;

  friend bool operator==(const OutputPaths&, const OutputPaths&) = default;
};

struct RunConfig {
  ProblemKind problem = ProblemKind::Market;
  std::optional<MarketSpec> market;  ///< present iff problem == Market
  solver::SolverConfig solver;
  reform::PhiKind phi = reform::PhiKind::Cube;
  linalg::Vector initial_point;
  OutputPaths output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a JSON configuration document. Unknown keys are
/// rejected; omitted solver fields take the SolverConfig defaults.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Normalised form: every field written out, parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace ncpeq::cli

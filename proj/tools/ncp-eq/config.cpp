#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ncpeq::cli {
namespace {

using nlohmann::json;

std::string_view to_string(market::CostVariant v) noexcept {
  return v == market::CostVariant::AsWritten ? "as_written" : "classic_murphy";
}

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + key, "missing required key");
  return obj.at(key);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

const json& object(const json& v, const std::string& field) {
  if (!v.is_object()) throw ConfigError(field, "expected an object");
  return v;
}

std::string string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  return v.get<std::string>();
}

template <class Fn>
void validated(const std::string& field, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

MarketSpec parse_market(const json& doc) {
  MarketSpec m;
  const json& firms = require(doc, "firms", "");
  if (!firms.is_array()) throw ConfigError("firms", "expected an array");
  if (firms.empty()) throw ConfigError("firms", "at least one firm is required");
  for (std::size_t i = 0; i < firms.size(); ++i) {
    const std::string where = "firms[" + std::to_string(i) + "]";
    const json& f = object(firms[i], where);
    reject_unknown(f, where, {"n", "L", "beta"});
    market::Firm firm{number(require(f, "n", where + "."), where + ".n"),
                      number(require(f, "L", where + "."), where + ".L"),
                      number(require(f, "beta", where + "."), where + ".beta")};
    validated(where, [&] { market::validate(firm); });
    m.firms.push_back(firm);
  }

  const json& d = object(require(doc, "demand", ""), "demand");
  reject_unknown(d, "demand", {"scale", "elasticity"});
  m.demand = {number(require(d, "scale", "demand."), "demand.scale"),
              number(require(d, "elasticity", "demand."), "demand.elasticity")};
  validated("demand", [&] { market::validate(m.demand); });

  if (doc.contains("cost_variant")) {
    const std::string v = string(doc["cost_variant"], "cost_variant");
    if (v == "as_written") m.cost_variant = market::CostVariant::AsWritten;
    else if (v == "classic_murphy") m.cost_variant = market::CostVariant::ClassicMurphy;
    else throw ConfigError("cost_variant", "expected \"as_written\" or \"classic_murphy\"");
  }
  return m;
}

solver::SolverConfig parse_solver(const json& doc) {
  solver::SolverConfig cfg;
  if (!doc.contains("solver")) return cfg;
  const json& s = object(doc["solver"], "solver");
  reject_unknown(s, "solver",
                 {"tol", "max_iter", "reg_t", "reg_lambda", "reg_mu", "reg_eta", "method"});
  if (s.contains("tol")) cfg.tol = number(s["tol"], "solver.tol");
  if (s.contains("max_iter")) {
    if (!s["max_iter"].is_number_integer())
      throw ConfigError("solver.max_iter", "expected an integer");
    cfg.max_iter = s["max_iter"].get<int>();
  }
  if (s.contains("reg_t")) cfg.reg.t = number(s["reg_t"], "solver.reg_t");
  if (s.contains("reg_lambda")) cfg.reg.lambda = number(s["reg_lambda"], "solver.reg_lambda");
  if (s.contains("reg_mu")) cfg.reg.mu = number(s["reg_mu"], "solver.reg_mu");
  if (s.contains("reg_eta")) cfg.reg.eta = number(s["reg_eta"], "solver.reg_eta");
  if (s.contains("method")) {
    const std::string m = string(s["method"], "solver.method");
    if (m == "modified") cfg.method = solver::Method::ModifiedNewton;
    else if (m == "classical") cfg.method = solver::Method::ClassicalNewton;
    else throw ConfigError("solver.method", "expected \"modified\" or \"classical\"");
  }
  try {
    solver::validate(cfg);
  } catch (const Error& e) {
    // messages read "solver.<field> must ..."; report the field itself
    const std::string msg = e.what();
    throw ConfigError(msg.substr(0, msg.find(' ')), msg);
  }
  return cfg;
}

}  // namespace

std::string_view to_string(ProblemKind kind) noexcept {
  switch (kind) {
    case ProblemKind::Market: return "market";
    case ProblemKind::QuadraticScalar: return "scalar_quad";
    case ProblemKind::SmoothPlanar: return "smooth2d";
  }
  return "unknown";
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(line_col(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!doc.is_object()) throw ConfigError("line 1, column 1", "top level must be an object");

  ProblemKind problem = ProblemKind::Market;
  if (doc.contains("problem")) {
    const std::string p = string(doc["problem"], "problem");
    if (p == "market") problem = ProblemKind::Market;
    else if (p == "scalar_quad") problem = ProblemKind::QuadraticScalar;
    else if (p == "smooth2d") problem = ProblemKind::SmoothPlanar;
    else throw ConfigError("problem", "expected \"market\", \"scalar_quad\" or \"smooth2d\"");
  }

  if (problem == ProblemKind::Market) {
    reject_unknown(doc, "", {"problem", "firms", "demand", "solver", "phi", "cost_variant",
                             "initial_point", "output"});
  } else {
    reject_unknown(doc, "", {"problem", "solver", "initial_point", "output"});
  }

  std::optional<MarketSpec> market;
  if (problem == ProblemKind::Market) market = parse_market(doc);
  const solver::SolverConfig solver_cfg = parse_solver(doc);

  reform::PhiKind phi = reform::PhiKind::Cube;
  if (doc.contains("phi")) {
    const std::string p = string(doc["phi"], "phi");
    if (p == "cube") phi = reform::PhiKind::Cube;
    else if (p == "identity") phi = reform::PhiKind::Identity;
    else throw ConfigError("phi", "expected \"cube\" or \"identity\"");
  }

  const json& z0 = require(doc, "initial_point", "");
  if (!z0.is_array() || z0.empty()) throw ConfigError("initial_point", "expected a non-empty array");
  std::vector<double> zs;
  for (std::size_t i = 0; i < z0.size(); ++i)
    zs.push_back(number(z0[i], "initial_point[" + std::to_string(i) + "]"));
  const std::size_t expected = problem == ProblemKind::Market ? market->firms.size()
                               : problem == ProblemKind::QuadraticScalar ? 1
                                                                         : 2;
  if (zs.size() != expected)
    throw ConfigError("initial_point", "expected " + std::to_string(expected) +
                                           " entries, got " + std::to_string(zs.size()));
  linalg::Vector initial = [&] {
    try {
      return linalg::Vector(std::move(zs));
    } catch (const Error& e) {
      throw ConfigError("initial_point", e.what());
    }
  }();

  OutputPaths output;
  if (doc.contains("output")) {
    const json& o = object(doc["output"], "output");
    reject_unknown(o, "output", {"trace"});
    if (o.contains("trace")) output.trace = string(o["trace"], "output.trace");
  }

  return RunConfig{problem, std::move(market), solver_cfg, phi, std::move(initial), output};
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open configuration file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

nlohmann::json to_json(const RunConfig& cfg) {
  json doc;
  doc["problem"] = std::string(to_string(cfg.problem));
  if (cfg.market) {
    json firms = json::array();
    for (const auto& f : cfg.market->firms) firms.push_back({{"n", f.n}, {"L", f.L}, {"beta", f.beta}});
    doc["firms"] = std::move(firms);
    doc["demand"] = {{"scale", cfg.market->demand.scale},
                     {"elasticity", cfg.market->demand.elasticity}};
    doc["cost_variant"] = std::string(to_string(cfg.market->cost_variant));
    doc["phi"] = std::string(reform::to_string(cfg.phi));
  }
  doc["solver"] = {{"tol", cfg.solver.tol},
                   {"max_iter", cfg.solver.max_iter},
                   {"reg_t", cfg.solver.reg.t},
                   {"reg_lambda", cfg.solver.reg.lambda},
                   {"reg_mu", cfg.solver.reg.mu},
                   {"reg_eta", cfg.solver.reg.eta},
                   {"method", std::string(solver::to_string(cfg.solver.method))}};
  doc["initial_point"] = cfg.initial_point.to_std();
  if (cfg.output.trace) doc["output"] = {{"trace", *cfg.output.trace}};
  return doc;
}

}  // namespace ncpeq::cli

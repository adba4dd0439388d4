#include <random>
#include <string>

#include <gtest/gtest.h>

#include "config.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ncpeq;
using cli::ConfigError;
using cli::parse_config;

namespace {

std::string where_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.where();
  }
  return "<no error>";
}

const char* kMinimalMarket = R"({
  "firms": [{"n": 1, "L": 2, "beta": 1.5}],
  "demand": {"scale": 100, "elasticity": 2},
  "initial_point": [1]
})";

}  // namespace

TEST(Config, LoadsPublishedMarket) {
  const auto cfg = cli::load_config(fx::config_path("murphy5.json"));
  EXPECT_EQ(cfg.problem, cli::ProblemKind::Market);
  ASSERT_TRUE(cfg.market);
  EXPECT_EQ(cfg.market->firms, fx::murphy_firms());
  EXPECT_EQ(cfg.market->demand, fx::kReferenceDemand);
  EXPECT_EQ(cfg.market->cost_variant, market::CostVariant::AsWritten);
  EXPECT_EQ(cfg.solver, fx::murphy_solver());
  EXPECT_EQ(cfg.phi, reform::PhiKind::Cube);
  EXPECT_EQ(cfg.initial_point, fx::kReferenceStart);
  EXPECT_FALSE(cfg.output.trace);
}

TEST(Config, LoadsEveryBundledFixture) {
  for (const char* name : {"murphy5.json", "murphy5_table1.json", "scalar_quad.json", "smooth2d.json"})
    EXPECT_NO_THROW(cli::load_config(fx::config_path(name))) << name;
  EXPECT_EQ(cli::load_config(fx::config_path("murphy5_table1.json")).market->firms,
            fx::table1_firms());
}

TEST(Config, DefaultsApply) {
  const auto cfg = parse_config(kMinimalMarket);
  EXPECT_EQ(cfg.solver, solver::SolverConfig{});
  EXPECT_EQ(cfg.phi, reform::PhiKind::Cube);
  EXPECT_EQ(cfg.market->cost_variant, market::CostVariant::AsWritten);
}

TEST(Config, RejectsInvalidDocuments) {
  EXPECT_EQ(where_of(R"({"firms": [], "demand": {"scale": 1, "elasticity": 2}, "initial_point": [1]})"),
            "firms");
  EXPECT_EQ(where_of(R"({"firms": [{"n": 1, "L": 2, "beta": 0}],
                         "demand": {"scale": 100, "elasticity": 2}, "initial_point": [1]})"),
            "firms[0]");
  EXPECT_EQ(where_of(R"({"firms": [{"n": 1, "L": 2, "beta": 1}], "colour": 1,
                         "demand": {"scale": 100, "elasticity": 2}, "initial_point": [1]})"),
            "colour");
  EXPECT_EQ(where_of(R"({"firms": [{"n": 1, "L": 2, "beta": 1}], "solver": {"max_iter": 0},
                         "demand": {"scale": 100, "elasticity": 2}, "initial_point": [1]})"),
            "solver.max_iter");
  EXPECT_EQ(where_of(R"({"firms": [{"n": 1, "L": 2, "beta": 1}], "solver": {"max_iter": 2.5},
                         "demand": {"scale": 100, "elasticity": 2}, "initial_point": [1]})"),
            "solver.max_iter");
  EXPECT_EQ(where_of(R"({"firms": [{"n": 1, "L": 2, "beta": 1}],
                         "demand": {"scale": 100, "elasticity": 2}, "initial_point": [1, 2]})"),
            "initial_point");
  EXPECT_EQ(where_of(R"({"problem": "smooth2d", "initial_point": [1], "phi": "cube"})"), "phi");
}

TEST(Config, ParseErrorReportsLineAndColumn) {
  const std::string where = where_of("{\n  \"firms\": [\n    {\"n\": 1,,}\n  ]\n}");
  EXPECT_EQ(where.rfind("line 3, column", 0), 0u) << where;
}

TEST(Config, MissingFileIsConfigError) {
  EXPECT_THROW(cli::load_config("/nonexistent/ncpeq.json"), ConfigError);
}

TEST(ConfigProperty, NormalizedFormRoundTrips) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    cli::RunConfig cfg = parse_config(kMinimalMarket);
    const std::size_t n = 1 + trial % 6;
    cli::MarketSpec spec;
    std::vector<double> z0;
    for (std::size_t i = 0; i < n; ++i) {
      spec.firms.push_back({fx::uniform(rng, 0, 20), fx::uniform(rng, 0.1, 10),
                            fx::uniform(rng, 0.3, 3)});
      z0.push_back(fx::uniform(rng, 0, 100));
    }
    spec.demand = {fx::uniform(rng, 1, 1e4), fx::uniform(rng, 1.01, 4)};
    spec.cost_variant = trial % 2 ? market::CostVariant::AsWritten : market::CostVariant::ClassicMurphy;
    cfg.market = spec;
    cfg.initial_point = linalg::Vector(z0);
    cfg.phi = trial % 3 ? reform::PhiKind::Cube : reform::PhiKind::Identity;
    cfg.solver.tol = fx::uniform(rng, 1e-14, 1e-2);
    cfg.solver.max_iter = 1 + trial;
    cfg.solver.reg = {fx::uniform(rng, 1e-9, 10), fx::uniform(rng, 1e-9, 10),
                      fx::uniform(rng, 1e-9, 10), fx::uniform(rng, 1e-9, 10)};
    cfg.solver.method = trial % 2 ? solver::Method::ModifiedNewton : solver::Method::ClassicalNewton;
    if (trial % 4 == 0) cfg.output.trace = "trace_" + std::to_string(trial) + ".csv";
    EXPECT_EQ(parse_config(cli::to_json(cfg).dump()), cfg);
  }
}

#include <memory>
#include <random>

#include <benchmark/benchmark.h>

#include "ncpeq/linalg.hpp"
#include "ncpeq/market.hpp"
#include "ncpeq/reform.hpp"
#include "ncpeq/solver.hpp"

using namespace ncpeq;
using linalg::Matrix;
using linalg::Vector;

namespace {

std::shared_ptr<const market::MarketModel> five_firm_market() {
  return std::make_shared<const market::MarketModel>(
      std::vector<market::Firm>{{10, 5, 1.2}, {8, 5, 1.1}, {6, 5, 1.0}, {4, 5, 0.9}, {2, 5, 0.8}},
      market::DemandCurve{5000, 1.1});
}

solver::SolverConfig tuned(solver::Method method) {
  solver::SolverConfig cfg;
  cfg.reg = {3.0, 1e3, 1e-9, 1e-12};
  cfg.method = method;
  return cfg;
}

void BM_SolveModified(benchmark::State& state) {
  const reform::PsiSystem sys(five_firm_market(), {});
  const Vector z0{40, 50, 60, 55, 45};
  const auto cfg = tuned(solver::Method::ModifiedNewton);
  for (auto _ : state) benchmark::DoNotOptimize(solver::solve(sys, z0, cfg));
}
BENCHMARK(BM_SolveModified);

void BM_SolveClassical(benchmark::State& state) {
  const reform::PsiSystem sys(five_firm_market(), {});
  const Vector z0{40, 50, 60, 55, 45};
  const auto cfg = tuned(solver::Method::ClassicalNewton);
  for (auto _ : state) benchmark::DoNotOptimize(solver::solve(sys, z0, cfg));
}
BENCHMARK(BM_SolveClassical);

void BM_PsiJacobian(benchmark::State& state) {
  const reform::PsiSystem sys(five_firm_market(), {});
  const Vector z{15, 12, 10, 7, 5};
  for (auto _ : state) benchmark::DoNotOptimize(sys.jacobian(z));
}
BENCHMARK(BM_PsiJacobian);

void BM_SolveLinear(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> a(n * n), b(n);
  for (auto& v : a) v = u(rng);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] += static_cast<double>(n);
  for (auto& v : b) v = u(rng);
  const Matrix m(n, a);
  const Vector rhs(b);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::solve_linear(m, rhs));
}
BENCHMARK(BM_SolveLinear)->Arg(5)->Arg(20)->Arg(100);

}  // namespace
BENCHMARK_MAIN();

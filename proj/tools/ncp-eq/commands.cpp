#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "ncpeq/audit.hpp"
#include "ncpeq/order.hpp"
#include "ncpeq/reform.hpp"
#include "ncpeq/systems.hpp"

namespace ncpeq::cli {
namespace {

using linalg::Vector;
using nlohmann::json;

constexpr double kJacobianTol = 1e-5;
constexpr double kTightTol = 1e-13;
constexpr int kCheckPoints = 20;
constexpr int kEquivalenceSamples = 200;

std::string fmt17(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::string vec_str(const Vector& v, int precision = 10) {
  std::ostringstream s;
  s << std::setprecision(precision) << '[';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  s << ']';
  return s.str();
}

// Multiplies df(0,0) by 1.01. Only used by `check --corrupt-jacobian`.
class CorruptedJacobian final : public NcpProblem {
 public:
  explicit CorruptedJacobian(std::shared_ptr<const NcpProblem> inner) : inner_(std::move(inner)) {}
  std::size_t dimension() const override { return inner_->dimension(); }
  Vector value(const Vector& z) const override { return inner_->value(z); }
  linalg::Matrix jacobian(const Vector& z) const override {
    const linalg::Matrix j = inner_->jacobian(z);
    std::vector<double> e(j.values().begin(), j.values().end());
    e[0] *= 1.01;
    return linalg::Matrix(j.dim(), std::move(e));
  }

 private:
  std::shared_ptr<const NcpProblem> inner_;
};

class CorruptedSystem final : public EquationSystem {
 public:
  explicit CorruptedSystem(std::shared_ptr<const EquationSystem> inner) : inner_(std::move(inner)) {}
  std::size_t dimension() const override { return inner_->dimension(); }
  Vector residual(const Vector& z) const override { return inner_->residual(z); }
  linalg::Matrix jacobian(const Vector& z) const override {
    const linalg::Matrix j = inner_->jacobian(z);
    std::vector<double> e(j.values().begin(), j.values().end());
    e[0] *= 1.01;
    return linalg::Matrix(j.dim(), std::move(e));
  }

 private:
  std::shared_ptr<const EquationSystem> inner_;
};

json vec_json(const Vector& v) { return v.to_std(); }

void write_trace_file(const std::string& path, const solver::SolveResult& run) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open trace file " + path);
  write_trace(f, run);
}

struct MarketSummary {
  double total_supply;
  double price;
  std::optional<double> kkt;
};

std::optional<MarketSummary> summarize(const Problem& p, const Vector& z) {
  if (!p.market) return std::nullopt;
  double q = 0.0;
  for (double zi : z.values()) q += zi;
  MarketSummary s{q, NAN, std::nullopt};
  try {
    s.price = market::inverse_demand(p.market->demand(), q);
    s.kkt = market::kkt_residual(*p.market, z);
  } catch (const Error&) {
  }
  return s;
}

}  // namespace

int exit_code(solver::Status status) noexcept {
  switch (status) {
    case solver::Status::Converged: return kExitOk;
    case solver::Status::MaxIterations: return kExitMaxIterations;
    case solver::Status::SingularFailure: return kExitSingular;
    case solver::Status::DomainFailure: return kExitDomain;
  }
  return kExitUsage;
}

Problem build_problem(const RunConfig& cfg) {
  switch (cfg.problem) {
    case ProblemKind::Market: {
      auto m = std::make_shared<const market::MarketModel>(
          cfg.market->firms, cfg.market->demand, cfg.market->cost_variant);
      auto sys = std::make_shared<const reform::PsiSystem>(m, reform::Phi{cfg.phi});
      return {m, sys};
    }
    case ProblemKind::QuadraticScalar:
      return {nullptr, std::make_shared<const systems::QuadraticScalar>()};
    case ProblemKind::SmoothPlanar:
      return {nullptr, std::make_shared<const systems::SmoothPlanar>()};
  }
  throw Error("unknown problem kind");
}

RunConfig with_overrides(RunConfig cfg, const CommandOptions& opts) {
  if (opts.tol) cfg.solver.tol = *opts.tol;
  if (opts.max_iter) cfg.solver.max_iter = *opts.max_iter;
  if (opts.trace_path) cfg.output.trace = opts.trace_path;
  try {
    solver::validate(cfg.solver);
  } catch (const Error& e) {
    throw ConfigError("command line", e.what());
  }
  return cfg;
}

void write_trace(std::ostream& out, const solver::SolveResult& run) {
  const std::size_t n = run.initial_point.size();
  out << 'k';
  for (std::size_t i = 1; i <= n; ++i) out << ",z" << i;
  out << ",n1\n";
  const auto row = [&](int k, const Vector& z, double n1) {
    out << k;
    for (double v : z.values()) out << ',' << fmt17(v);
    out << ',' << fmt17(n1) << '\n';
  };
  row(0, run.initial_point, run.initial_residual);
  for (const auto& rec : run.trace) row(rec.k, rec.z, rec.residual_norm);
}

int cmd_solve(const RunConfig& cfg_in, const CommandOptions& opts, std::ostream& out,
              std::ostream& err) {
  const RunConfig cfg = with_overrides(cfg_in, opts);
  const Problem p = build_problem(cfg);
  const solver::SolveResult run = solver::solve(*p.system, cfg.initial_point, cfg.solver);
  if (cfg.output.trace) write_trace_file(*cfg.output.trace, run);

  const auto ms = summarize(p, run.solution);
  if (opts.json) {
    json j{{"command", "solve"},
           {"problem", std::string(to_string(cfg.problem))},
           {"method", std::string(solver::to_string(cfg.solver.method))},
           {"status", std::string(solver::to_string(run.status))},
           {"iterations", run.iterations()},
           {"solution", vec_json(run.solution)},
           {"final_residual", run.final_residual},
           {"config", to_json(cfg)}};
    if (ms) {
      j["total_supply"] = ms->total_supply;
      j["price"] = ms->price;
      j["kkt_residual"] = ms->kkt ? json(*ms->kkt) : json(nullptr);
    }
    if (!run.message.empty()) j["message"] = run.message;
    out << j.dump(2) << '\n';
  } else {
    out << "problem        " << to_string(cfg.problem) << '\n'
        << "method         " << solver::to_string(cfg.solver.method) << '\n'
        << "status         " << solver::to_string(run.status) << '\n'
        << "iterations     " << run.iterations() << '\n'
        << "solution       " << vec_str(run.solution) << '\n';
    if (ms) {
      out << "total supply   " << std::setprecision(10) << ms->total_supply << '\n'
          << "market price   " << ms->price << '\n';
    }
    out << "residual n1    " << std::setprecision(6) << std::scientific << run.final_residual
        << std::defaultfloat << '\n';
    if (ms && ms->kkt)
      out << "kkt residual   " << std::scientific << *ms->kkt << std::defaultfloat << '\n';
  }
  if (!run.message.empty()) err << "ncp-eq: " << run.message << '\n';
  return exit_code(run.status);
}

int cmd_compare(const RunConfig& cfg_in, const CommandOptions& opts, std::ostream& out,
                std::ostream& err) {
  const RunConfig cfg = with_overrides(cfg_in, opts);
  const Problem p = build_problem(cfg);

  auto run_with = [&](solver::Method m) {
    solver::SolverConfig sc = cfg.solver;
    sc.method = m;
    return solver::solve(*p.system, cfg.initial_point, sc);
  };
  auto modified = std::async(std::launch::async, run_with, solver::Method::ModifiedNewton);
  auto classical = std::async(std::launch::async, run_with, solver::Method::ClassicalNewton);
  const solver::SolveResult rm = modified.get();
  const solver::SolveResult rc = classical.get();

  std::optional<double> agreement;
  if (rm.status == solver::Status::Converged && rc.status == solver::Status::Converged)
    agreement = linalg::norm_inf(rm.solution - rc.solution);

  if (opts.json) {
    const auto row = [](const solver::SolveResult& r) {
      json j{{"status", std::string(solver::to_string(r.status))},
             {"iterations", r.iterations()},
             {"final_residual", r.final_residual},
             {"solution", vec_json(r.solution)}};
      if (!r.message.empty()) j["message"] = r.message;
      return j;
    };
    json j{{"command", "compare"},
           {"problem", std::string(to_string(cfg.problem))},
           {"modified", row(rm)},
           {"classical", row(rc)},
           {"agreement_inf", agreement ? json(*agreement) : json(nullptr)}};
    out << j.dump(2) << '\n';
  } else {
    out << std::left << std::setw(11) << "method" << std::setw(18) << "status" << std::setw(12)
        << "iterations" << std::setw(16) << "final n1" << "solution\n";
    for (const auto* r : {&rm, &rc}) {
      out << std::setw(11) << (r == &rm ? "modified" : "classical") << std::setw(18)
          << solver::to_string(r->status) << std::setw(12) << r->iterations() << std::setw(16)
          << std::setprecision(6) << std::scientific << r->final_residual << std::defaultfloat
          << vec_str(r->solution) << '\n';
    }
    out << std::right << "agreement ||z_mod - z_cls||_inf = ";
    if (agreement) out << std::scientific << *agreement << std::defaultfloat << '\n';
    else out << "n/a (not both converged)\n";
  }
  for (const auto* r : {&rm, &rc})
    if (!r->message.empty()) err << "ncp-eq: " << r->message << '\n';
  return kExitOk;
}

int cmd_order(const RunConfig& cfg_in, const CommandOptions& opts, std::ostream& out,
              std::ostream& err) {
  RunConfig cfg = with_overrides(cfg_in, opts);
  cfg.solver.tol = std::min(cfg.solver.tol, kTightTol);
  const Problem p = build_problem(cfg);
  const solver::SolveResult run = solver::solve(*p.system, cfg.initial_point, cfg.solver);
  if (run.status == solver::Status::SingularFailure ||
      run.status == solver::Status::DomainFailure) {
    err << "ncp-eq: solve failed (" << solver::to_string(run.status) << "): " << run.message << '\n';
    return exit_code(run.status);
  }

  // Reference: a few more passes from the final iterate.
  solver::SolverConfig refine = cfg.solver;
  refine.max_iter = 5;
  const solver::SolveResult ref = solver::solve(*p.system, run.solution, refine);
  const Vector reference = ref.status == solver::Status::SingularFailure ||
                                   ref.status == solver::Status::DomainFailure
                               ? run.solution
                               : ref.solution;

  solver::OrderEstimate est{.reference_solution = reference};
  try {
    if (run.trace.size() < 3)
      throw InsufficientData("trace has " + std::to_string(run.trace.size()) +
                             " iterations; at least 3 are needed");
    est = solver::estimate_order(run, reference);
  } catch (const InsufficientData& e) {
    err << "ncp-eq: insufficient data for an order estimate: " << e.what() << '\n'
        << "  (the run converged too quickly; start further from the root)\n";
    return kExitInsufficientData;
  }

  if (opts.json) {
    json orders = json::array();
    for (const auto& r : est.per_step_orders) orders.push_back(r ? json(*r) : json(nullptr));
    json j{{"command", "order"},
           {"problem", std::string(to_string(cfg.problem))},
           {"method", std::string(solver::to_string(cfg.solver.method))},
           {"status", std::string(solver::to_string(run.status))},
           {"error_norms", est.error_norms},
           {"orders", orders},
           {"precision_floor", est.precision_floor},
           {"max_order", est.max_defined() ? json(*est.max_defined()) : json(nullptr)},
           {"reference", vec_json(reference)}};
    out << j.dump(2) << '\n';
  } else {
    out << "method " << solver::to_string(cfg.solver.method) << ", status "
        << solver::to_string(run.status) << ", " << run.iterations() << " iterations\n"
        << "reference " << vec_str(reference, 17) << '\n'
        << "precision floor " << std::scientific << std::setprecision(3) << est.precision_floor
        << "\n\n"
        << " k   ||z_k - z*||      rho_k\n";
    for (std::size_t k = 0; k < est.error_norms.size(); ++k) {
      out << std::setw(2) << k << "   " << std::scientific << std::setprecision(6)
          << est.error_norms[k] << "   ";
      if (est.per_step_orders[k]) out << std::fixed << std::setprecision(4) << *est.per_step_orders[k];
      else out << "-";
      out << '\n';
    }
    out << std::defaultfloat << "\nmax defined rho = " << std::setprecision(6)
        << *est.max_defined() << '\n';
  }
  return kExitOk;
}

namespace {

struct CheckLine {
  std::string name;
  int samples = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;  ///< passes when worst > tolerance
  bool passed() const { return lower_bound ? worst > tolerance : worst <= tolerance; }
};

Vector random_point(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> z(n);
  for (double& v : z) v = d(rng);
  return Vector(std::move(z));
}

}  // namespace

int cmd_check(const RunConfig& cfg_in, const CommandOptions& opts, std::ostream& out,
              std::ostream& err) {
  const RunConfig cfg = with_overrides(cfg_in, opts);
  Problem p = build_problem(cfg);
  std::mt19937_64 rng(opts.seed);
  std::vector<CheckLine> lines;

  if (p.market) {
    std::shared_ptr<const NcpProblem> ncp = p.market;
    if (opts.corrupt_jacobian) ncp = std::make_shared<const CorruptedJacobian>(ncp);
    const reform::Phi phi{cfg.phi};
    const reform::PsiSystem psys(ncp, phi);
    const std::size_t n = ncp->dimension();

    CheckLine fjac{"ncp_jacobian vs finite differences", 0, 0.0, kJacobianTol};
    CheckLine pjac{"psi_jacobian vs finite differences", 0, 0.0, kJacobianTol};
    for (int s = 0; s < kCheckPoints; ++s) {
      const Vector z = random_point(rng, n, 1.0, 100.0);
      fjac.worst = std::max(
          fjac.worst, audit::row_relative_error(
                          ncp->jacobian(z),
                          audit::finite_difference_jacobian(
                              [&](const Vector& v) { return ncp->value(v); }, z)));
      pjac.worst = std::max(
          pjac.worst, audit::row_relative_error(
                          psys.jacobian(z),
                          audit::finite_difference_jacobian(
                              [&](const Vector& v) { return psys.residual(v); }, z)));
      ++fjac.samples;
      ++pjac.samples;
    }
    lines.push_back(fjac);
    lines.push_back(pjac);

    // Necessity: complementary points are roots of psi.
    CheckLine fwd{"complementary point => ||psi||_inf", 0, 0.0, reform::kPsiRootTol};
    CheckLine bwd{"psi root => complementary (violations)", 0, 0.0, 0.0};
    for (int s = 0; s < kEquivalenceSamples; ++s) {
      const auto inst = audit::make_complementary_instance(rng, n, cfg.market->cost_variant);
      const reform::PsiSystem sys(std::make_shared<const market::MarketModel>(inst.market), phi);
      fwd.worst = std::max(fwd.worst, linalg::norm_inf(sys.residual(inst.z)));
      if (!reform::check_equivalence_backward(sys, inst.z)) bwd.worst += 1.0;
      ++fwd.samples;
      ++bwd.samples;
    }
    lines.push_back(fwd);
    lines.push_back(bwd);

    // Sufficiency contrapositive: z_i > 1e-3 and f_i > 1e-3 => psi_i != 0.
    CheckLine contra{"z_i, f_i > 1e-3 => min |psi_i|", 0, INFINITY, 0.0, true};
    for (int tries = 0; contra.samples < kEquivalenceSamples && tries < 100 * kEquivalenceSamples;
         ++tries) {
      const Vector z = random_point(rng, n, 1e-3, 100.0);
      const Vector f = p.market->value(z);
      const Vector g = reform::PsiSystem(p.market, phi).residual_from(z, f);
      bool accepted = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (z[i] > 1e-3 && f[i] > 1e-3) {
          contra.worst = std::min(contra.worst, std::abs(g[i]));
          accepted = true;
        }
      }
      contra.samples += accepted ? 1 : 0;
    }
    if (contra.samples == 0) contra.worst = 1.0;  // nothing to refute
    lines.push_back(contra);
  } else {
    std::shared_ptr<const EquationSystem> sys = p.system;
    if (opts.corrupt_jacobian) sys = std::make_shared<const CorruptedSystem>(sys);
    CheckLine jac{"jacobian vs finite differences", 0, 0.0, kJacobianTol};
    for (int s = 0; s < kCheckPoints; ++s) {
      const Vector z =
          cfg.initial_point + random_point(rng, cfg.initial_point.size(), -0.5, 0.5);
      jac.worst = std::max(
          jac.worst, audit::row_relative_error(
                         sys->jacobian(z),
                         audit::finite_difference_jacobian(
                             [&](const Vector& v) { return sys->residual(v); }, z)));
      ++jac.samples;
    }
    lines.push_back(jac);
  }

  bool ok = std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.passed(); });
  if (opts.json) {
    json checks = json::array();
    for (const auto& l : lines)
      checks.push_back({{"name", l.name},
                        {"samples", l.samples},
                        {"value", l.worst},
                        {"tolerance", l.tolerance},
                        {"kind", l.lower_bound ? "lower_bound" : "upper_bound"},
                        {"passed", l.passed()}});
    out << json{{"command", "check"}, {"passed", ok}, {"checks", checks}}.dump(2) << '\n';
  } else {
    out << std::left << std::setw(42) << "check" << std::setw(9) << "samples" << std::setw(14)
        << "value" << std::setw(16) << "tolerance" << "result\n";
    for (const auto& l : lines) {
      std::ostringstream tol;
      tol << (l.lower_bound ? "> " : "<= ") << std::scientific << std::setprecision(1)
          << l.tolerance;
      out << std::setw(42) << l.name << std::setw(9) << l.samples << std::setw(14)
          << std::scientific << std::setprecision(3) << l.worst << std::setw(16) << tol.str()
          << (l.passed() ? "PASS" : "FAIL") << std::defaultfloat << '\n';
    }
  }
  if (!ok) {
    err << "ncp-eq: failing checks:";
    for (const auto& l : lines)
      if (!l.passed()) err << "\n  " << l.name;
    err << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace ncpeq::cli

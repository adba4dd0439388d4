#include "ncpeq/solver.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ncpeq/errors.hpp"

namespace ncpeq::solver {

using linalg::Matrix;
using linalg::Vector;

std::string_view to_string(Method m) noexcept {
  return m == Method::ModifiedNewton ? "modified" : "classical";
}

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Converged: return "converged";
    case Status::MaxIterations: return "max_iterations";
    case Status::SingularFailure: return "singular_failure";
    case Status::DomainFailure: return "domain_failure";
  }
  return "unknown";
}

void validate(const SolverConfig& cfg) {
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol))
    throw DomainError("solver.tol must be finite and > 0");
  if (cfg.max_iter < 1) throw DomainError("solver.max_iter must be >= 1");
  const auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError(std::string("solver.") + name + " must be finite and > 0");
  };
  check(cfg.reg.t, "reg_t");
  check(cfg.reg.lambda, "reg_lambda");
  check(cfg.reg.mu, "reg_mu");
  check(cfg.reg.eta, "reg_eta");
}

namespace {

// Sign of a diagonal Jacobian entry; a zero entry imposes no condition.
double diag_sign(double jii) noexcept { return jii < 0.0 ? -1.0 : 1.0; }

// diag(sign(J_ii) * magnitude * psi_i^2)
Vector squared_regularizer(const Vector& jdiag, const Vector& g, double magnitude) {
  std::vector<double> d(g.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = diag_sign(jdiag[i]) * magnitude * g[i] * g[i];
  return Vector(std::move(d));
}

StepResult four_stage(const EquationSystem& sys, const Vector& z, const Regularizers& reg) {
  using linalg::mat_mul;
  using linalg::mat_vec;
  using linalg::solve_linear;

  StepResult out{z, IterationRecord{.z = z}};
  auto& stages = out.record.stages;

  // y-stage: sgn(t_i psi_i) = sgn(J_ii)
  const Vector gz = sys.residual(z);
  const Matrix jz = sys.jacobian(z);
  const Vector jz_diag = jz.diag();
  std::vector<double> t_psi(z.size());
  for (std::size_t i = 0; i < t_psi.size(); ++i) {
    const double t = gz[i] == 0.0 ? reg.t : diag_sign(jz_diag[i]) * (gz[i] > 0.0 ? 1.0 : -1.0) * reg.t;
    t_psi[i] = t * gz[i];
  }
  const Vector t_diag(std::move(t_psi));
  const Vector y = z - 0.5 * solve_linear(jz + Matrix::diagonal(t_diag), gz);
  stages.push_back({jz_diag, t_diag});

  // x-stage
  const Matrix jy = sys.jacobian(y);
  const Matrix jy2 = mat_mul(jy, jy);
  const Vector lambda_diag = squared_regularizer(jz_diag, gz, reg.lambda);
  const Vector x =
      z - 0.5 * solve_linear(mat_mul(jz, jz) + jy2 + Matrix::diagonal(lambda_diag),
                             mat_vec(jz + jy, gz));
  stages.push_back({jz_diag, lambda_diag});

  // w-stage
  const Vector gx = sys.residual(x);
  const Matrix jx = sys.jacobian(x);
  const Vector jx_diag = jx.diag();
  const Vector mu_diag = squared_regularizer(jx_diag, gx, reg.mu);
  const Vector w = x - solve_linear(mat_mul(jx, jx) + jy2 + Matrix::diagonal(mu_diag),
                                    mat_vec(jx + jy, gx));
  stages.push_back({jx_diag, mu_diag});

  // z-stage
  const Vector gw = sys.residual(w);
  const Matrix jw = sys.jacobian(w);
  const Vector jw_diag = jw.diag();
  const Vector eta_diag = squared_regularizer(jw_diag, gw, reg.eta);
  Vector z_next = w - solve_linear(jw + Matrix::diagonal(eta_diag), gw);
  stages.push_back({jw_diag, eta_diag});

  out.record.y = y;
  out.record.x = x;
  out.record.w = w;
  out.record.residual_norm = linalg::norm2(sys.residual(z_next));
  out.record.z = z_next;
  out.z_next = std::move(z_next);
  return out;
}

}  // namespace

StepResult modified_newton_step(const EquationSystem& sys, const Vector& z_k,
                                const SolverConfig& cfg) {
  try {
    return four_stage(sys, z_k, cfg.reg);
  } catch (const SingularMatrix&) {
    StepResult r = four_stage(sys, z_k, cfg.reg.scaled(kSingularRepairFactor));
    r.record.singular_repair_count = 1;
    return r;
  }
}

Vector classical_newton_step(const EquationSystem& sys, const Vector& z_k) {
  return z_k - linalg::solve_linear(sys.jacobian(z_k), sys.residual(z_k));
}

SolveResult solve(const EquationSystem& sys, const Vector& z0, const SolverConfig& cfg) {
  validate(cfg);
  if (z0.size() != sys.dimension())
    throw DimensionMismatch("initial point has dimension " + std::to_string(z0.size()) +
                            ", system has " + std::to_string(sys.dimension()));

  SolveResult res{.initial_point = z0, .solution = z0};
  try {
    res.initial_residual = linalg::norm2(sys.residual(z0));
    res.final_residual = res.initial_residual;
  } catch (const DomainError& e) {
    res.status = Status::DomainFailure;
    res.message = e.what();
    res.initial_residual = res.final_residual = std::numeric_limits<double>::quiet_NaN();
    return res;
  }
  if (res.final_residual < cfg.tol) {
    res.status = Status::Converged;
    return res;
  }

  Vector z = z0;
  for (int k = 1; k <= cfg.max_iter; ++k) {
    try {
      IterationRecord rec = [&] {
        if (cfg.method == Method::ModifiedNewton) return modified_newton_step(sys, z, cfg).record;
        Vector next = classical_newton_step(sys, z);
        const double n1 = linalg::norm2(sys.residual(next));
        return IterationRecord{.z = std::move(next), .residual_norm = n1};
      }();
      rec.k = k;
      z = rec.z;
      res.final_residual = rec.residual_norm;
      res.trace.push_back(std::move(rec));
    } catch (const SingularMatrix& e) {
      res.status = Status::SingularFailure;
      res.message = std::string("iteration ") + std::to_string(k) + ": " + e.what();
      res.solution = z;
      return res;
    } catch (const DomainError& e) {
      res.status = Status::DomainFailure;
      res.message = std::string("iteration ") + std::to_string(k) + ": " + e.what();
      res.solution = z;
      return res;
    }
    if (res.final_residual < cfg.tol) {
      res.status = Status::Converged;
      res.solution = z;
      return res;
    }
  }
  res.status = Status::MaxIterations;
  res.solution = z;
  return res;
}

}  // namespace ncpeq::solver

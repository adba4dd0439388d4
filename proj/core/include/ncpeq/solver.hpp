#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncpeq/equation_system.hpp"
#include "ncpeq/linalg.hpp"

namespace ncpeq::solver {

enum class Method { ModifiedNewton, ClassicalNewton };

std::string_view to_string(Method m) noexcept;

/// Magnitudes of the diagonal regularizers of the four stages. Signs are
/// chosen per iteration from the diagonal of the Jacobian.
struct Regularizers {
  double t = 1e-3;
  double lambda = 1e-3;
  double mu = 1e-3;
  double eta = 1e-3;

  Regularizers scaled(double factor) const noexcept {
    return {t * factor, lambda * factor, mu * factor, eta * factor};
  }
  friend bool operator==(const Regularizers&, const Regularizers&) = default;
};

struct SolverConfig {
  double tol = 1e-7;
  int max_iter = 50;
  Regularizers reg{};
  Method method = Method::ModifiedNewton;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// Throws DomainError naming the offending field.
void validate(const SolverConfig& cfg);

/// Factor applied to every regularizer magnitude when a stage reports a
/// singular system; the step is retried once.
inline constexpr double kSingularRepairFactor = 1e3;

/// Diagonal Jacobian entries used for the sign rule of one stage, and the
/// diagonal actually added to that stage's matrix.
struct StageDiagonal {
  linalg::Vector jacobian_diag;
  linalg::Vector regularizer_diag;
};

struct IterationRecord {
  int k = 0;  ///< 1-based pass number
  linalg::Vector z;  ///< iterate produced by this pass
  std::optional<linalg::Vector> y{}, x{}, w{};
  double residual_norm = 0.0;  ///< ||g(z)||_2 at `z`
  int singular_repair_count = 0;
  /// y, x, w, z stages in that order; empty for classical Newton.
  std::vector<StageDiagonal> stages{};
};

enum class Status { Converged, MaxIterations, SingularFailure, DomainFailure };

std::string_view to_string(Status s) noexcept;

struct SolveResult {
  Status status = Status::MaxIterations;
  linalg::Vector initial_point;
  linalg::Vector solution;
  std::vector<IterationRecord> trace{};
  double initial_residual = 0.0;  ///< ||g(z0)||_2
  double final_residual = 0.0;
  std::string message{};  ///< failure detail, empty on success

  std::size_t iterations() const noexcept { return trace.size(); }
};

struct StepResult {
  linalg::Vector z_next;
  IterationRecord record;
};

/// One four-stage pass:
///   y = z - 1/2 [J(z) + diag(t psi(z))]^-1 psi(z)
///   x = z - 1/2 [J(z)^2 + J(y)^2 + diag(lambda psi(z)^2)]^-1 [J(z) + J(y)] psi(z)
///   w = x - [J(x)^2 + J(y)^2 + diag(mu psi(x)^2)]^-1 [J(x) + J(y)] psi(x)
///   z' = w - [J(w) + diag(eta psi(w)^2)]^-1 psi(w)
/// Regularizer signs follow the Jacobian diagonal of the stage's base point.
/// A singular stage triggers one retry with magnitudes scaled by
/// kSingularRepairFactor; SingularMatrix propagates if that fails too.
StepResult modified_newton_step(const EquationSystem& sys, const linalg::Vector& z_k,
                                const SolverConfig& cfg);

/// Plain Newton: z - J(z)^-1 g(z). No singularity repair.
linalg::Vector classical_newton_step(const EquationSystem& sys, const linalg::Vector& z_k);

/// Iterates the configured method until ||g(z)||_2 < tol or max_iter passes.
/// Stage failures end the run with SingularFailure / DomainFailure; the
/// solution is then the last iterate that was evaluated successfully.
SolveResult solve(const EquationSystem& sys, const linalg::Vector& z0, const SolverConfig& cfg);

}  // namespace ncpeq::solver

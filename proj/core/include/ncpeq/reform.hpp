#pragma once

#include <memory>
#include <string_view>

#include "ncpeq/equation_system.hpp"
#include "ncpeq/linalg.hpp"

namespace ncpeq::reform {

enum class PhiKind { Cube, Identity };

/// Strictly increasing phi with phi(0) = 0.
struct Phi {
  PhiKind kind = PhiKind::Cube;

  double value(double x) const noexcept {
    return kind == PhiKind::Cube ? x * x * x : x;
  }
  double derivative(double x) const noexcept {
    return kind == PhiKind::Cube ? 3.0 * x * x : 1.0;
  }
};

std::string_view to_string(PhiKind kind) noexcept;

/// sgn with sgn(0) = 0, so x * sgn(x) = |x| everywhere.
constexpr double sgn(double x) noexcept { return (x > 0.0) - (x < 0.0); }

/// Equation reformulation of an NCP:
///   psi_i(z) = phi((f_i - z_i)^2) - phi(f_i |f_i|) - phi(z_i |z_i|).
/// Its roots are exactly the solutions of the complementarity problem.
class PsiSystem final : public EquationSystem {
 public:
  PsiSystem(std::shared_ptr<const NcpProblem> problem, Phi phi);

  const NcpProblem& problem() const noexcept { return *problem_; }
  Phi phi() const noexcept { return phi_; }

  std::size_t dimension() const override { return problem_->dimension(); }
  linalg::Vector residual(const linalg::Vector& z) const override;
  linalg::Matrix jacobian(const linalg::Vector& z) const override;

  /// psi evaluated from precomputed f values.
  linalg::Vector residual_from(const linalg::Vector& z, const linalg::Vector& f) const;

 private:
  std::shared_ptr<const NcpProblem> problem_;
  Phi phi_;
};

linalg::Vector psi(const PsiSystem& sys, const linalg::Vector& z);
linalg::Matrix psi_jacobian(const PsiSystem& sys, const linalg::Vector& z);

/// Scalar psi component for given f_i and z_i.
double psi_component(Phi phi, double f, double z) noexcept;

inline constexpr double kComplementarityTol = 1e-9;
inline constexpr double kPsiRootTol = 1e-8;
inline constexpr double kRecoveredTol = 1e-6;

/// Necessity direction: if z is complementary (within `complementarity_tol`)
/// then ||psi(z)||_inf <= psi_tol. Vacuously true otherwise.
bool check_equivalence_forward(const PsiSystem& sys, const linalg::Vector& z,
                               double complementarity_tol = kComplementarityTol,
                               double psi_tol = kPsiRootTol);

/// Sufficiency direction: if ||psi(z)||_inf <= kPsiRootTol then z >= -1e-6,
/// f(z) >= -1e-6 and |z_i f_i| <= 1e-6. Vacuously true otherwise.
bool check_equivalence_backward(const PsiSystem& sys, const linalg::Vector& z);

}  // namespace ncpeq::reform

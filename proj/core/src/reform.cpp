#include "ncpeq/reform.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "ncpeq/errors.hpp"

namespace ncpeq::reform {

std::string_view to_string(PhiKind kind) noexcept {
  return kind == PhiKind::Cube ? "cube" : "identity";
}

PsiSystem::PsiSystem(std::shared_ptr<const NcpProblem> problem, Phi phi)
    : problem_(std::move(problem)), phi_(phi) {
  if (!problem_) throw Error("PsiSystem: null problem");
}

double psi_component(Phi phi, double f, double z) noexcept {
  const double d = f - z;
  return phi.value(d * d) - phi.value(f * std::abs(f)) - phi.value(z * std::abs(z));
}

linalg::Vector PsiSystem::residual_from(const linalg::Vector& z, const linalg::Vector& f) const {
  std::vector<double> r(z.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = psi_component(phi_, f[i], z[i]);
  return linalg::Vector(std::move(r));
}

linalg::Vector PsiSystem::residual(const linalg::Vector& z) const {
  return residual_from(z, problem_->value(z));
}

linalg::Matrix PsiSystem::jacobian(const linalg::Vector& z) const {
  const linalg::Vector f = problem_->value(z);
  const linalg::Matrix df = problem_->jacobian(z);
  const std::size_t n = z.size();
  std::vector<double> jac(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = f[i] - z[i];
    const double a = phi_.derivative(d * d) * 2.0 * d;
    const double b = phi_.derivative(f[i] * std::abs(f[i])) * 2.0 * f[i] * sgn(f[i]);
    const double c = phi_.derivative(z[i] * std::abs(z[i])) * 2.0 * z[i] * sgn(z[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      jac[i * n + j] = a * (df(i, j) - delta) - b * df(i, j) - c * delta;
    }
  }
  return linalg::Matrix(n, std::move(jac));
}

linalg::Vector psi(const PsiSystem& sys, const linalg::Vector& z) { return sys.residual(z); }

linalg::Matrix psi_jacobian(const PsiSystem& sys, const linalg::Vector& z) {
  return sys.jacobian(z);
}

bool check_equivalence_forward(const PsiSystem& sys, const linalg::Vector& z,
                               double complementarity_tol, double psi_tol) {
  linalg::Vector f = linalg::Vector::zeros(z.size());
  try {
    f = sys.problem().value(z);
  } catch (const Error&) {
    return true;  // outside the domain of f: not complementary
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < -complementarity_tol || f[i] < -complementarity_tol ||
        std::abs(z[i] * f[i]) > complementarity_tol)
      return true;
  }
  return linalg::norm_inf(sys.residual_from(z, f)) <= psi_tol;
}

bool check_equivalence_backward(const PsiSystem& sys, const linalg::Vector& z) {
  linalg::Vector f = linalg::Vector::zeros(z.size());
  try {
    f = sys.problem().value(z);
  } catch (const Error&) {
    return true;
  }
  if (linalg::norm_inf(sys.residual_from(z, f)) > kPsiRootTol) return true;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < -kRecoveredTol || f[i] < -kRecoveredTol ||
        std::abs(z[i] * f[i]) > kRecoveredTol)
      return false;
  }
  return true;
}

}  // namespace ncpeq::reform

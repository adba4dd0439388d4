#include <cmath>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ncpeq/audit.hpp"
#include "ncpeq/errors.hpp"
#include "ncpeq/reform.hpp"
#include "ncpeq/solver.hpp"
#include "oracles.hpp"

using namespace ncpeq;
using linalg::Matrix;
using linalg::Vector;
using reform::Phi;
using reform::PhiKind;
using reform::PsiSystem;

namespace {

// f(z) = z, the simplest monotone NCP; its only solution is z = 0.
class IdentityNcp final : public NcpProblem {
 public:
  explicit IdentityNcp(std::size_t n) : n_(n) {}
  std::size_t dimension() const override { return n_; }
  Vector value(const Vector& z) const override { return z; }
  Matrix jacobian(const Vector&) const override { return Matrix::identity(n_); }

 private:
  std::size_t n_;
};

double psi_by_hand(Phi phi, double f, double z) {
  return phi.value((f - z) * (f - z)) - phi.value(f * std::abs(f)) - phi.value(z * std::abs(z));
}

}  // namespace

TEST(Psi, ComponentExamples) {
  const Phi cube{PhiKind::Cube};
  EXPECT_EQ(reform::psi_component(cube, 0.0, 0.0), 0.0);
  EXPECT_EQ(reform::psi_component(cube, 0.0, 3.0), 0.0);  // z > 0, f = 0
  EXPECT_EQ(reform::psi_component(cube, 3.0, 0.0), 0.0);  // f > 0, z = 0
  EXPECT_EQ(reform::psi_component(cube, -2.0, 0.0), 64.0 + 64.0);
  EXPECT_EQ(reform::psi_component(cube, 1.0, 1.0), -2.0);
  EXPECT_EQ(reform::psi_component(Phi{PhiKind::Identity}, 1.0, 1.0), -2.0);
}

TEST(Psi, ScalarIdentityProblem) {
  const PsiSystem sys(std::make_shared<IdentityNcp>(1), Phi{PhiKind::Cube});
  EXPECT_DOUBLE_EQ(reform::psi(sys, Vector{1})[0], -2.0);
  // psi(z) = -2 z^6 for z > 0, so psi'(1) = -12
  EXPECT_DOUBLE_EQ(reform::psi_jacobian(sys, Vector{1})(0, 0), -12.0);
}

TEST(Psi, JacobianRowVanishesWhereFAndZVanish) {
  const PsiSystem sys(std::make_shared<IdentityNcp>(3), Phi{PhiKind::Cube});
  const Matrix j = reform::psi_jacobian(sys, Vector{0, 1, 2});
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(j(0, k), 0.0);
}

TEST(Psi, JacobianMatchesFiniteDifferencesOnMarket) {
  std::mt19937_64 rng(21);
  for (auto kind : {PhiKind::Cube, PhiKind::Identity}) {
    const PsiSystem sys(fx::murphy_market(), Phi{kind});
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> z(5);
      for (auto& v : z) v = fx::uniform(rng, 1, 100);
      const auto fd = fx::central_differences(
          [&](const std::vector<double>& p) { return sys.residual(Vector(p)).to_std(); }, z);
      const Matrix jac = sys.jacobian(Vector(z));
      fx::Dense an(5, std::vector<double>(5));
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t k = 0; k < 5; ++k) an[i][k] = jac(i, k);
      EXPECT_LE(fx::row_relative(an, fd), 1e-5);
    }
  }
}

TEST(Psi, ResidualFromAgreesWithResidual) {
  const auto m = fx::murphy_market();
  const PsiSystem sys(m, {});
  const Vector z{10, 11, 12, 13, 14};
  EXPECT_EQ(sys.residual(z), sys.residual_from(z, m->value(z)));
}

TEST(Psi, NullProblemIsRejected) {
  EXPECT_THROW(PsiSystem(nullptr, {}), Error);
}

TEST(Equivalence, ForwardHoldsAtSolvedEquilibrium) {
  const auto m = fx::murphy_market();
  const PsiSystem sys(m, {});
  const auto run = solver::solve(sys, fx::kReferenceStart, fx::murphy_solver());
  ASSERT_EQ(run.status, solver::Status::Converged);
  // Polish with two classical steps so complementarity is tight.
  Vector z = run.solution;
  for (int i = 0; i < 2; ++i) z = solver::classical_newton_step(sys, z);
  EXPECT_TRUE(reform::check_equivalence_forward(sys, z, 1e-3));
  EXPECT_TRUE(reform::check_equivalence_backward(sys, z));
}

TEST(Equivalence, BackwardFlagsNonSolutions) {
  const PsiSystem sys(std::make_shared<IdentityNcp>(2), Phi{});
  EXPECT_TRUE(reform::check_equivalence_backward(sys, Vector{1, 0}));  // psi != 0: vacuous
  EXPECT_TRUE(reform::check_equivalence_backward(sys, Vector{0, 0}));
  EXPECT_TRUE(reform::check_equivalence_forward(sys, Vector{0, 0}));
  EXPECT_TRUE(reform::check_equivalence_forward(sys, Vector{1, 0}));  // not complementary: vacuous
}

// Every case of the sign analysis: psi_i = 0 exactly when min(f_i, z_i) = 0.
TEST(EquivalenceProperty, CaseAnalysis) {
  std::mt19937_64 rng(31);
  for (auto kind : {PhiKind::Cube, PhiKind::Identity}) {
    const Phi phi{kind};
    for (int trial = 0; trial < 2000; ++trial) {
      const double a = fx::uniform(rng, 0.01, 10);
      const double b = fx::uniform(rng, 0.01, 10);
      EXPECT_EQ(reform::psi_component(phi, 0.0, a), 0.0);
      EXPECT_EQ(reform::psi_component(phi, a, 0.0), 0.0);
      EXPECT_LT(reform::psi_component(phi, a, b), 0.0);       // both positive
      EXPECT_GT(reform::psi_component(phi, -a, b), 0.0);      // f negative
      EXPECT_GT(reform::psi_component(phi, a, -b), 0.0);      // z negative
      EXPECT_GT(reform::psi_component(phi, -a, -b), 0.0);     // both negative
      EXPECT_NEAR(reform::psi_component(phi, a, b), psi_by_hand(phi, a, b),
                  1e-12 * std::abs(psi_by_hand(phi, a, b)));
    }
  }
}

TEST(EquivalenceProperty, ComplementaryMarketsAreRoots) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const auto variant = trial % 2 ? market::CostVariant::AsWritten : market::CostVariant::ClassicMurphy;
    const auto inst = audit::make_complementary_instance(rng, 1 + trial % 6, variant);
    const auto m = std::make_shared<const market::MarketModel>(inst.market);
    for (auto kind : {PhiKind::Cube, PhiKind::Identity}) {
      const PsiSystem sys(m, Phi{kind});
      EXPECT_TRUE(reform::check_equivalence_forward(sys, inst.z, 1e-9, 1e-8));
      EXPECT_TRUE(reform::check_equivalence_backward(sys, inst.z));
    }
  }
}

TEST(PhiProperty, StrictlyIncreasingOddAndDerivativeConsistent) {
  std::mt19937_64 rng(41);
  for (auto kind : {PhiKind::Cube, PhiKind::Identity}) {
    const Phi phi{kind};
    EXPECT_EQ(phi.value(0.0), 0.0);
    for (int trial = 0; trial < 500; ++trial) {
      const double x = fx::uniform(rng, -5, 5);
      const double y = x + fx::uniform(rng, 1e-3, 1);
      EXPECT_LT(phi.value(x), phi.value(y));
      EXPECT_DOUBLE_EQ(phi.value(-x), -phi.value(x));
      EXPECT_NEAR(phi.derivative(x),
                  fx::derivative([&](double s) { return phi.value(s); }, x, 1e-5), 1e-7);
    }
  }
}

TEST(Sgn, ZeroIsZero) {
  EXPECT_EQ(reform::sgn(0.0), 0.0);
  EXPECT_EQ(reform::sgn(-0.0), 0.0);
  EXPECT_EQ(reform::sgn(2.5), 1.0);
  EXPECT_EQ(reform::sgn(-1e-300), -1.0);
}

#include "ncpeq/audit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ncpeq/errors.hpp"

namespace ncpeq::audit {

linalg::Matrix finite_difference_jacobian(const VectorFn& fn, const linalg::Vector& z,
                                          double rel_step) {
  const std::size_t n = z.size();
  std::vector<double> jac(n * n);
  std::vector<double> zp(z.values().begin(), z.values().end());
  for (std::size_t j = 0; j < n; ++j) {
    const double h = rel_step * std::max(1.0, std::abs(z[j]));
    const double orig = zp[j];
    zp[j] = orig + h;
    const linalg::Vector fp = fn(linalg::Vector(zp));
    zp[j] = orig - h;
    const linalg::Vector fm = fn(linalg::Vector(zp));
    zp[j] = orig;
    for (std::size_t i = 0; i < n; ++i) jac[i * n + j] = (fp[i] - fm[i]) / (2.0 * h);
  }
  return linalg::Matrix(n, std::move(jac));
}

double row_relative_error(const linalg::Matrix& a, const linalg::Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("row_relative_error");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      scale = std::max(scale, std::abs(b(i, j)));
      diff = std::max(diff, std::abs(a(i, j) - b(i, j)));
    }
    if (scale == 0.0) {
      if (diff > 0.0) return INFINITY;
      continue;
    }
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

ComplementaryInstance make_complementary_instance(std::mt19937_64& rng, std::size_t n_firms,
                                                  market::CostVariant variant) {
  using market::Firm;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  for (;;) {
    const market::DemandCurve demand{draw(10.0, 1000.0), draw(1.1, 3.0)};
    std::vector<Firm> firms(n_firms);
    std::vector<double> z(n_firms, 0.0);
    for (std::size_t i = 0; i < n_firms; ++i) {
      firms[i].L = draw(0.5, 5.0);
      firms[i].beta = draw(0.5, 2.0);
      if (n_firms == 1 || unit(rng) >= 1.0 / 3.0) z[i] = draw(0.05, 3.0);
    }
    double q = 0.0;
    for (double zi : z) q += zi;
    if (q <= 0.0) continue;

    const double p = market::inverse_demand(demand, q);
    const double dp = market::demand_slope(demand, q);
    bool feasible = true;
    for (std::size_t i = 0; i < n_firms && feasible; ++i) {
      if (z[i] > 0.0) {
        // f_i = 0  <=>  n_i = P + z_i P' - (c_i'(z_i) - n_i)
        Firm probe = firms[i];
        probe.n = 0.0;
        firms[i].n = p + z[i] * dp - market::marginal_cost(probe, z[i], variant);
        feasible = firms[i].n >= 0.0;
      } else {
        // f_i = n_i - P >= 0; a quarter of the zeros are degenerate (f_i = 0)
        firms[i].n = unit(rng) < 0.25 ? p : p + draw(0.0, p);
      }
    }
    if (!feasible) continue;
    return {market::MarketModel(std::move(firms), demand, variant), linalg::Vector(std::move(z))};
  }
}

}  // namespace ncpeq::audit

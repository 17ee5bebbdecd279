#include "weakpca/power.hpp"

#include <cmath>

#include "weakpca/distributions.hpp"

namespace weakpca {

double noncentrality(const PowerQuery& q) {
  if (q.p < 2) throw DomainError("power query requires p >= 2");
  if (!(q.xi > 0.0)) throw DomainError("power query requires xi > 0");
  if (q.tau_norm < 0.0) throw DomainError("||tau|| must be nonnegative");
  const auto p = static_cast<double>(q.p);
  const double t2 = q.tau_norm * q.tau_norm;
  switch (q.regime) {
    case Regime::classical:
      if (!(q.xi < p)) throw DomainError("classical regime requires xi < p");
      return p * (p + (p - 1.0) * q.xi) / ((p + 2.0) * (p - q.xi)) * t2;
    case Regime::weak:
      return p / (p + 2.0) * t2;
    case Regime::critical: {
      if (q.tau_norm > 2.0 * q.xi) {
        throw DomainError("critical regime requires ||tau|| <= 2 xi");
      }
      const double a = 1.0 - t2 / (2.0 * q.xi * q.xi);
      const double b = 1.0 - t2 / (4.0 * q.xi * q.xi);
      return p / (p + 2.0) * t2 * a * a * b;
    }
    case Regime::degenerate:
      return 0.0;
  }
  throw DomainError("unknown regime");
}

double asymptotic_power(const PowerQuery& q) {
  if (!(q.alpha > 0.0 && q.alpha < 1.0)) throw DomainError("alpha must be in (0, 1)");
  const double ncp = noncentrality(q);
  const double df = static_cast<double>(q.p) - 1.0;
  const double crit = chi2_quantile(1.0 - q.alpha, df);
  return 1.0 - noncentral_chi2_cdf(crit, df, ncp);
}

std::vector<PowerPoint> theoretical_curve(std::size_t p, double alpha, double xi,
                                          Regime regime,
                                          const std::vector<double>& ell_grid) {
  std::vector<PowerPoint> out;
  out.reserve(ell_grid.size());
  for (double ell : ell_grid) {
    PowerQuery q{p, alpha, xi, ell, regime};
    out.push_back({ell, noncentrality(q), asymptotic_power(q)});
  }
  return out;
}

}  // namespace weakpca

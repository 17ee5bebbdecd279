#include "weakpca/lecam.hpp"

#include <cmath>

namespace weakpca {

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::classical: return "i";
    case Regime::weak: return "ii";
    case Regime::critical: return "iii";
    case Regime::degenerate: return "iv";
  }
  return "?";
}

Regime regime_from_name(const std::string& s) {
  if (s == "i" || s == "classical") return Regime::classical;
  if (s == "ii" || s == "weak") return Regime::weak;
  if (s == "iii" || s == "critical") return Regime::critical;
  if (s == "iv" || s == "degenerate") return Regime::degenerate;
  throw DomainError("unknown regime '" + s + "'");
}

void SpikeModel::validate() const {
  if (p < 2) throw DomainError("spike model requires p >= 2");
  if (theta0.size() != p) throw DomainError("spike direction has wrong dimension");
  require_unit(theta0);
  if (!(xi > 0.0)) throw DomainError("locality parameter xi must be positive");
  if (!(delta > 0.0)) throw DomainError("spike strength delta must be positive");
  if (!(1.0 - delta * xi / static_cast<double>(p) > 0.0)) {
    throw DomainError("delta xi >= p: shape matrix not positive definite");
  }
}

double gamma_n(const SpikeModel& model) {
  model.validate();
  const auto p = static_cast<double>(model.p);
  const double dx = model.delta * model.xi;
  return p * dx / (p + (p - 1.0) * dx);
}

double perturbation_scale(const SpikeModel& model, std::size_t n) {
  if (n == 0) throw DomainError("sample size must be positive");
  return 1.0 / (std::sqrt(static_cast<double>(n)) * gamma_n(model));
}

ShapeMatrix build_null_shape(const SpikeModel& model) {
  model.validate();
  return ShapeMatrix(
      SymMatrix(spike_power(model.p, model.theta0, model.delta * model.xi, 1.0)));
}

ShapeMatrix build_alt_shape(const SpikeModel& model, const Perturbation& pert) {
  model.validate();
  if (pert.tau.size() != model.p) throw DomainError("perturbation has wrong dimension");
  if (!(pert.nu > 0.0)) throw DomainError("perturbation step nu must be positive");
  const double tausq = dot(pert.tau, pert.tau);
  if (std::abs(dot(model.theta0, pert.tau) + 0.5 * pert.nu * tausq) > 1e-10) {
    throw DomainError("perturbation violates the sphere constraint");
  }
  Vector theta1(model.p);
  for (std::size_t i = 0; i < model.p; ++i) {
    theta1[i] = model.theta0[i] + pert.nu * pert.tau[i];
  }
  if (std::abs(norm(theta1) - 1.0) > 1e-10) {
    throw DomainError("perturbed direction is not on the unit sphere");
  }
  return ShapeMatrix(SymMatrix(spike_power(model.p, theta1, model.delta * model.xi, 1.0)));
}

Perturbation make_perturbation(const Vector& theta0, const Vector& direction, double ell,
                               double nu) {
  const Vector t0 = require_unit(theta0);
  if (!(nu > 0.0)) throw DomainError("perturbation step nu must be positive");
  if (ell < 0.0) throw DomainError("perturbation magnitude must be nonnegative");
  if (ell == 0.0) return {Vector(t0.size(), 0.0), nu};

  if (direction.size() != t0.size()) throw DomainError("direction has wrong dimension");
  const Vector d = require_unit(direction);
  if (std::abs(dot(d, t0)) > 1e-8) {
    throw DomainError("direction must be orthogonal to theta0");
  }
  const double half = 0.5 * ell * nu;
  if (half > 1.0) {
    throw DomainError("ell * nu / 2 > 1: no unit perturbation of that magnitude exists");
  }
  const double angle = 2.0 * std::asin(half);
  Perturbation pert;
  pert.nu = nu;
  pert.tau.resize(t0.size());
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  for (std::size_t i = 0; i < t0.size(); ++i) {
    pert.tau[i] = ((ca - 1.0) * t0[i] + sa * d[i]) / nu;
  }
  return pert;
}

double log_likelihood_ratio(const Matrix& signs, const SpikeModel& model,
                            const Perturbation& pert) {
  model.validate();
  if (signs.cols() != model.p) throw DomainError("signs have wrong dimension");
  if (pert.tau.size() != model.p) throw DomainError("perturbation has wrong dimension");
  const double gamma = gamma_n(model);
  Vector theta1(model.p);
  for (std::size_t i = 0; i < model.p; ++i) {
    theta1[i] = model.theta0[i] + pert.nu * pert.tau[i];
  }
  double sum = 0.0;
  for (std::size_t r = 0; r < signs.rows(); ++r) {
    const auto u = signs.row(r);
    const double a = dot(u, model.theta0);
    const double b = dot(u, theta1);
    sum += std::log1p(-gamma * b * b) - std::log1p(-gamma * a * a);
  }
  return -0.5 * static_cast<double>(model.p) * sum;
}

namespace {

// (I - theta0 theta0') sqrt(n) (S_n(V0) - I/p) theta0, before the regime
// scalars. S_n(V0) uses the closed-form inverse square root of the spike.
Vector projected_fluctuation(const Matrix& signs, const SpikeModel& model) {
  const std::size_t p = model.p;
  const std::size_t n = signs.rows();
  const Matrix vinv = spike_power(p, model.theta0, model.delta * model.xi, -1.0);
  const Matrix vinvsqrt = spike_power(p, model.theta0, model.delta * model.xi, -0.5);

  Matrix acc(p, p);
  for (std::size_t r = 0; r < n; ++r) {
    const auto u = signs.row(r);
    double quad = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      double vi = 0.0;
      for (std::size_t j = 0; j < p; ++j) vi += vinv(i, j) * u[j];
      quad += vi * u[i];
    }
    const double w = 1.0 / quad;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j) acc(i, j) += w * u[i] * u[j];
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      acc(i, j) /= static_cast<double>(n);
      acc(j, i) = acc(i, j);
    }
  const Matrix s = vinvsqrt * acc * vinvsqrt;

  const double root_n = std::sqrt(static_cast<double>(n));
  Vector st = s * std::span<const double>(model.theta0);
  for (std::size_t i = 0; i < p; ++i) {
    st[i] = root_n * (st[i] - model.theta0[i] / static_cast<double>(p));
  }
  const double along = dot(st, model.theta0);
  for (std::size_t i = 0; i < p; ++i) st[i] -= along * model.theta0[i];
  return st;
}

}  // namespace

Vector central_sequence(const Matrix& signs, const SpikeModel& model, Regime regime) {
  model.validate();
  if (signs.cols() != model.p) throw DomainError("signs have wrong dimension");
  Vector delta = projected_fluctuation(signs, model);
  double factor = static_cast<double>(model.p);
  if (regime == Regime::classical) {
    const auto p = static_cast<double>(model.p);
    if (!(model.xi < p)) {
      throw DomainError("classical-regime scaling requires xi < p");
    }
    factor *= std::sqrt((p + (p - 1.0) * model.xi) / (p - model.xi));
  }
  for (double& x : delta) x *= factor;
  return delta;
}

SymMatrix upsilon_matrix(const Matrix& signs, const SpikeModel& model) {
  model.validate();
  if (signs.cols() != model.p) throw DomainError("signs have wrong dimension");
  const std::size_t p = model.p;
  const SymMatrix s = sign_cov(signs, build_null_shape(model));
  const double scale = static_cast<double>(p) * std::sqrt(static_cast<double>(signs.rows()));
  Matrix u(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      u(i, j) = scale * (s(i, j) - (i == j ? 1.0 / static_cast<double>(p) : 0.0));
    }
  return SymMatrix(std::move(u));
}

namespace {

double projected_tau_sq(const Vector& tau, const Vector& theta0) {
  const double along = dot(tau, theta0);
  return dot(tau, tau) - along * along;
}

}  // namespace

double lan_quadratic(Regime regime, const Vector& tau, const Vector& theta0, double xi,
                     const Vector& central) {
  if (regime == Regime::degenerate) {
    throw DomainError("degenerate regime: log-likelihood ratio vanishes; no quadratic form");
  }
  if (regime == Regime::critical) {
    throw DomainError("critical regime needs the Upsilon matrix overload");
  }
  if (tau.size() != theta0.size() || central.size() != tau.size()) {
    throw DomainError("lan_quadratic dimension mismatch");
  }
  const auto p = static_cast<double>(tau.size());
  double gamma_factor = p / (p + 2.0);
  if (regime == Regime::classical) {
    if (!(xi > 0.0 && xi < p)) throw DomainError("classical regime requires 0 < xi < p");
    gamma_factor *= (p + (p - 1.0) * xi) / (p - xi);
  }
  return dot(tau, central) - 0.5 * gamma_factor * projected_tau_sq(tau, theta0);
}

double lan_quadratic(Regime regime, const Vector& tau, const Vector& theta0, double xi,
                     const SymMatrix& upsilon) {
  if (regime != Regime::critical) {
    throw DomainError("Upsilon-based quadratic is specific to the critical regime");
  }
  if (tau.size() != theta0.size() || upsilon.dim() != tau.size()) {
    throw DomainError("lan_quadratic dimension mismatch");
  }
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  const auto p = static_cast<double>(tau.size());
  const Vector ut = upsilon.mat() * std::span<const double>(theta0);
  const Vector utau = upsilon.mat() * std::span<const double>(tau);
  const double tausq = dot(tau, tau);
  return dot(tau, ut) + dot(tau, utau) / (2.0 * xi) -
         (p / (2.0 * (p + 2.0))) * (tausq - tausq * tausq / (4.0 * xi * xi));
}

}  // namespace weakpca

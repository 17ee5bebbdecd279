#include "weakpca/eigen_tests.hpp"

#include <cmath>

#include "weakpca/distributions.hpp"

namespace weakpca {

std::string method_name(Method m) {
  switch (m) {
    case Method::sign: return "sign";
    case Method::sign_oracle: return "sign_oracle";
    case Method::tyler_lrt: return "tyler";
    case Method::anderson: return "anderson";
  }
  return "?";
}

TestOutcome chi2_outcome(double statistic, std::size_t p, double alpha, Method method) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0, 1)");
  TestOutcome out;
  out.statistic = statistic;
  out.df = static_cast<int>(p) - 1;
  out.p_value = 1.0 - chi2_cdf(statistic, static_cast<double>(out.df));
  out.reject = statistic > chi2_quantile(1.0 - alpha, static_cast<double>(out.df));
  out.method = method;
  return out;
}

double sign_statistic(const Matrix& signs, const ShapeMatrix& v, const Vector& theta0) {
  const std::size_t p = v.dim();
  if (signs.cols() != p || theta0.size() != p) {
    throw DomainError("sign_statistic dimension mismatch");
  }
  const Vector t0 = require_unit(theta0);
  const SymMatrix s = sign_cov(signs, v);
  const Vector st = s.mat() * t0;
  const double along = dot(st, t0);
  double sq = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    const double r = st[i] - along * t0[i];
    sq += r * r;
  }
  const auto n = static_cast<double>(signs.rows());
  const auto pd = static_cast<double>(p);
  return n * pd * (pd + 2.0) * sq;
}

namespace {

Matrix centered(const Matrix& data, const std::optional<Vector>& center) {
  if (!center) return data;
  if (center->size() != data.cols()) throw DomainError("center has wrong dimension");
  Matrix out = data;
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) -= (*center)[j];
  return out;
}

}  // namespace

TestOutcome sign_test(const Matrix& data, const Vector& theta0, double alpha,
                      int eigen_index, bool single_spike,
                      const std::optional<Vector>& center) {
  const std::size_t p = data.cols();
  if (theta0.size() != p) throw DomainError("theta0 has wrong dimension");
  const Vector t0 = require_unit(theta0);
  const Matrix signs = spatial_signs(centered(data, center));
  const ShapeMatrix vhat = tyler_shape(signs);
  const ShapeMatrix v0 = single_spike
                             ? constrained_shape_single_spike(vhat, t0, eigen_index)
                             : constrained_shape(vhat, t0, eigen_index);
  return chi2_outcome(sign_statistic(signs, v0, t0), p, alpha, Method::sign);
}

namespace {

TestOutcome symmetric_ratio_test(const SymMatrix& estimate, const Vector& t0, double alpha,
                                 int eigen_index, double factor, Method method) {
  const std::size_t p = estimate.dim();
  if (eigen_index < 1 || static_cast<std::size_t>(eigen_index) > p) {
    throw DomainError("eigenvector index out of range");
  }
  const SpectralDecomp d = sym_eigen(estimate);
  if (!(d.eigenvalues.back() > 0.0)) {
    throw DomainError("estimate is not positive definite");
  }
  const double lam = d.eigenvalues[static_cast<std::size_t>(eigen_index) - 1];
  const Matrix inv = sym_power(d, -1.0);
  const double fwd = dot(t0, estimate.mat() * t0);
  const double bwd = dot(t0, inv * t0);
  const double statistic = factor * (lam * bwd + fwd / lam - 2.0);
  return chi2_outcome(std::max(statistic, 0.0), p, alpha, method);
}

}  // namespace

TestOutcome tyler_lrt(const Matrix& data, const Vector& theta0, double alpha,
                      int eigen_index, const std::optional<Vector>& center) {
  const std::size_t p = data.cols();
  if (theta0.size() != p) throw DomainError("theta0 has wrong dimension");
  const Vector t0 = require_unit(theta0);
  const Matrix signs = spatial_signs(centered(data, center));
  const ShapeMatrix vhat = tyler_shape(signs);
  const auto n = static_cast<double>(data.rows());
  const auto pd = static_cast<double>(p);
  return symmetric_ratio_test(vhat.sym(), t0, alpha, eigen_index, n * pd / (pd + 2.0),
                              Method::tyler_lrt);
}

TestOutcome anderson_lrt(const Matrix& data, const Vector& theta0, double alpha,
                         int eigen_index, const std::optional<Vector>& center) {
  const std::size_t p = data.cols();
  const std::size_t n = data.rows();
  if (theta0.size() != p) throw DomainError("theta0 has wrong dimension");
  if (n <= p) throw InsufficientDataError("Anderson test needs n > p observations");
  const Vector t0 = require_unit(theta0);
  const Matrix x = centered(data, center);

  Matrix cov(p, p);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = x.row(r);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j) cov(i, j) += row[i] * row[j];
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      cov(i, j) /= static_cast<double>(n);
      cov(j, i) = cov(i, j);
    }

  return symmetric_ratio_test(SymMatrix(std::move(cov)), t0, alpha, eigen_index,
                              static_cast<double>(n), Method::anderson);
}

TestOutcome oracle_sign_test(const Matrix& signs, const ShapeMatrix& v0,
                             const Vector& theta0, double alpha) {
  return chi2_outcome(sign_statistic(signs, v0, theta0), v0.dim(), alpha,
                      Method::sign_oracle);
}

}  // namespace weakpca

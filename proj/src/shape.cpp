#include "weakpca/shape.hpp"

#include <cmath>

namespace weakpca {

ShapeMatrix::ShapeMatrix(SymMatrix m) : sym_(std::move(m)) {
  const double tr = sym_.mat().trace();
  const auto p = static_cast<double>(sym_.dim());
  if (!(tr > 0.0) || !std::isfinite(tr)) {
    throw DomainError("shape matrix must have positive trace");
  }
  if (tr != p) {
    Matrix scaled = sym_.mat();
    scaled *= p / tr;
    sym_ = SymMatrix(std::move(scaled));
  }
}

Matrix spatial_signs(const Matrix& data) {
  Matrix signs(data.rows(), data.cols());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const double n = norm(data.row(i));
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw DomainError("row " + std::to_string(i + 1) +
                        " is zero or non-finite; spatial sign undefined");
    }
    for (std::size_t j = 0; j < data.cols(); ++j) signs(i, j) = data(i, j) / n;
  }
  return signs;
}

namespace {

// Accumulates A = (1/n) sum u u' / (u' Vinv u) into the upper triangle of a
// dense matrix, with the quadratic forms computed from the product terms so
// the symmetry of Vinv is used once.
Matrix weighted_outer_mean(const Matrix& signs, const Matrix& vinv) {
  const std::size_t n = signs.rows();
  const std::size_t p = signs.cols();
  Matrix acc(p, p);
  std::vector<double> prods(p * (p + 1) / 2);
  for (std::size_t r = 0; r < n; ++r) {
    const auto u = signs.row(r);
    std::size_t k = 0;
    double quad = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i; j < p; ++j, ++k) {
        const double uij = u[i] * u[j];
        prods[k] = uij;
        quad += (i == j ? 1.0 : 2.0) * vinv(i, j) * uij;
      }
    }
    const double w = 1.0 / quad;
    k = 0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j, ++k) acc(i, j) += w * prods[k];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < p; ++i) {
    acc(i, i) *= inv_n;
    for (std::size_t j = i + 1; j < p; ++j) {
      acc(i, j) *= inv_n;
      acc(j, i) = acc(i, j);
    }
  }
  return acc;
}

double residual_from(const Matrix& s, std::size_t p) {
  double sq = 0.0;
  const double target = 1.0 / static_cast<double>(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double d = s(i, j) - (i == j ? target : 0.0);
      sq += d * d;
    }
  }
  return std::sqrt(sq);
}

}  // namespace

SymMatrix sign_cov(const Matrix& signs, const ShapeMatrix& v) {
  if (signs.cols() != v.dim()) throw DomainError("sign_cov dimension mismatch");
  if (signs.rows() == 0) throw DomainError("sign_cov requires at least one observation");
  const SpectralDecomp d = sym_eigen(v.sym());
  const Matrix vinv = sym_power(d, -1.0);
  const Matrix vinvsqrt = sym_power(d, -0.5);
  const Matrix a = weighted_outer_mean(signs, vinv);
  return SymMatrix(vinvsqrt * a * vinvsqrt);
}

ShapeMatrix tyler_shape(const Matrix& signs, const TylerOptions& opts) {
  const std::size_t n = signs.rows();
  const std::size_t p = signs.cols();
  if (n <= p) {
    throw InsufficientDataError("Tyler's M-estimator needs n > p observations");
  }

  // General-position heuristic: sum of outer products must be well
  // conditioned. A full combinatorial check would be O(n^p).
  {
    Matrix m0(p, p);
    for (std::size_t r = 0; r < n; ++r) {
      const auto u = signs.row(r);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) m0(i, j) += u[i] * u[j];
    }
    const SpectralDecomp d0 = sym_eigen(SymMatrix(std::move(m0)));
    if (!(d0.eigenvalues.back() > d0.eigenvalues.front() * 1e-12)) {
      throw DomainError("signs are not in general position (rank-deficient sample)");
    }
  }

  Matrix v = Matrix::identity(p);
  double residual = 0.0;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const SpectralDecomp d = sym_eigen(SymMatrix(v));
    if (!(d.eigenvalues.back() > 0.0)) {
      throw ConvergenceError("Tyler iterate lost positive definiteness", residual);
    }
    const Matrix vinv = sym_power(d, -1.0);
    const Matrix vinvsqrt = sym_power(d, -0.5);
    const Matrix a = weighted_outer_mean(signs, vinv);
    const Matrix s = vinvsqrt * a * vinvsqrt;
    residual = residual_from(s, p);
    if (residual <= opts.tolerance) {
      return ShapeMatrix(SymMatrix(std::move(v)));
    }
    Matrix next = a;
    next *= static_cast<double>(p) / a.trace();
    v = std::move(next);
  }
  throw ConvergenceError("Tyler iteration cap reached without meeting tolerance", residual);
}

ShapeMatrix constrained_shape(const ShapeMatrix& vhat, const Vector& theta0, int j) {
  const std::size_t p = vhat.dim();
  if (j < 1 || static_cast<std::size_t>(j) > p) {
    throw DomainError("eigenvector index out of range");
  }
  const Vector t0 = require_unit(theta0);
  const SpectralDecomp d = sym_eigen(vhat.sym());

  std::vector<Vector> others;
  Vector lambdas;
  others.reserve(p - 1);
  lambdas.reserve(p - 1);
  for (std::size_t k = 0; k < p; ++k) {
    if (k == static_cast<std::size_t>(j) - 1) continue;
    Vector col(p);
    for (std::size_t i = 0; i < p; ++i) col[i] = d.eigenvectors(i, k);
    others.push_back(std::move(col));
    lambdas.push_back(d.eigenvalues[k]);
  }

  const std::vector<Vector> tilde = gram_schmidt_against(t0, others);

  Matrix out(p, p);
  const double lam_j = d.eigenvalues[static_cast<std::size_t>(j) - 1];
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) out(r, c) = lam_j * t0[r] * t0[c];
  for (std::size_t k = 0; k < tilde.size(); ++k) {
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t c = 0; c < p; ++c) out(r, c) += lambdas[k] * tilde[k][r] * tilde[k][c];
  }
  return ShapeMatrix(SymMatrix(std::move(out)));
}

ShapeMatrix constrained_shape_single_spike(const ShapeMatrix& vhat, const Vector& theta0,
                                           int j) {
  const std::size_t p = vhat.dim();
  if (j < 1 || static_cast<std::size_t>(j) > p) {
    throw DomainError("eigenvector index out of range");
  }
  const Vector t0 = require_unit(theta0);
  const SpectralDecomp d = sym_eigen(vhat.sym());

  const double lam_j = d.eigenvalues[static_cast<std::size_t>(j) - 1];
  double rest = 0.0;
  for (std::size_t k = 0; k < p; ++k) {
    if (k != static_cast<std::size_t>(j) - 1) rest += d.eigenvalues[k];
  }
  rest /= static_cast<double>(p - 1);

  Matrix out(p, p);
  for (std::size_t r = 0; r < p; ++r) {
    out(r, r) = rest;
    for (std::size_t c = 0; c < p; ++c) out(r, c) += (lam_j - rest) * t0[r] * t0[c];
  }
  return ShapeMatrix(SymMatrix(std::move(out)));
}

}  // namespace weakpca

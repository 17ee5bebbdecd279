#include "weakpca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace weakpca {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

Vector normalized(const Vector& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("cannot normalize a zero or non-finite vector");
  }
  Vector out(v);
  for (double& x : out) x /= n;
  return out;
}

Vector require_unit(const Vector& v, double tol) {
  const double n = norm(v);
  if (std::abs(n - 1.0) > tol) {
    throw DomainError("vector norm " + std::to_string(n) + " is not within " +
                      std::to_string(tol) + " of 1");
  }
  Vector out(v);
  for (double& x : out) x /= n;
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& other) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector Matrix::operator*(std::span<const double> v) const {
  Vector out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = dot(row(i), v);
  return out;
}

Matrix outer(std::span<const double> a, std::span<const double> b) {
  Matrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

SymMatrix::SymMatrix(Matrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) throw DomainError("SymMatrix requires a square matrix");
  if (mat_.rows() < 2) throw DomainError("SymMatrix requires dimension >= 2");
  for (std::size_t i = 0; i < mat_.rows(); ++i) {
    for (std::size_t j = i + 1; j < mat_.cols(); ++j) {
      const double avg = 0.5 * (mat_(i, j) + mat_(j, i));
      mat_(i, j) = avg;
      mat_(j, i) = avg;
    }
  }
}

SymMatrix SymMatrix::identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

namespace {

// One Jacobi rotation zeroing a(i,j), accumulating the rotation into q.
void jacobi_rotate(Matrix& a, Matrix& q, std::size_t i, std::size_t j) {
  const double apq = a(i, j);
  const double theta = (a(j, j) - a(i, i)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 1.0 / (2.0 * theta);
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);
  const std::size_t n = a.rows();

  a(i, i) -= t * apq;
  a(j, j) += t * apq;
  a(i, j) = 0.0;
  a(j, i) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != i && k != j) {
      const double aki = a(k, i);
      const double akj = a(k, j);
      a(k, i) = aki - s * (akj + tau * aki);
      a(i, k) = a(k, i);
      a(k, j) = akj + s * (aki - tau * akj);
      a(j, k) = a(k, j);
    }
    const double qki = q(k, i);
    const double qkj = q(k, j);
    q(k, i) = qki - s * (qkj + tau * qki);
    q(k, j) = qkj + s * (qki - tau * qkj);
  }
}

double offdiag_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SpectralDecomp sym_eigen(const SymMatrix& sym) {
  constexpr int kMaxSweeps = 100;
  constexpr double kRelTol = 1e-12;

  const std::size_t n = sym.dim();
  Matrix a = sym.mat();
  Matrix q = Matrix::identity(n);
  const double scale = a.frobenius_norm();
  const double tol = kRelTol * std::max(scale, 1e-300);

  bool converged = offdiag_norm(a) <= tol;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (a(i, j) != 0.0) jacobi_rotate(a, q, i, j);
      }
    }
    converged = offdiag_norm(a) <= tol;
  }
  if (!converged) {
    throw NumericError("Jacobi eigensolver did not converge within 100 sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  SpectralDecomp d;
  d.eigenvalues.resize(n);
  d.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    d.eigenvalues[j] = a(src, src);
    for (std::size_t i = 0; i < n; ++i) d.eigenvectors(i, j) = q(i, src);
    // first component with |x| > 1e-9 made positive
    for (std::size_t i = 0; i < n; ++i) {
      const double x = d.eigenvectors(i, j);
      if (std::abs(x) > 1e-9) {
        if (x < 0.0)
          for (std::size_t k = 0; k < n; ++k) d.eigenvectors(k, j) = -d.eigenvectors(k, j);
        break;
      }
    }
  }
  return d;
}

Matrix reconstruct(const SpectralDecomp& d) {
  const std::size_t n = d.eigenvalues.size();
  Matrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lam = d.eigenvalues[j];
    for (std::size_t r = 0; r < n; ++r) {
      const double x = lam * d.eigenvectors(r, j);
      for (std::size_t c = 0; c < n; ++c) out(r, c) += x * d.eigenvectors(c, j);
    }
  }
  return out;
}

Matrix sym_power(const SpectralDecomp& d, double exponent) {
  const std::size_t n = d.eigenvalues.size();
  const bool integral = exponent == std::floor(exponent);
  SpectralDecomp powered = d;
  for (std::size_t j = 0; j < n; ++j) {
    const double lam = d.eigenvalues[j];
    if (lam <= 0.0 && !(integral && exponent >= 0.0)) {
      throw DomainError("matrix power requires a positive definite matrix");
    }
    powered.eigenvalues[j] = std::pow(lam, exponent);
  }
  return reconstruct(powered);
}

Matrix sym_power(const SymMatrix& a, double exponent) {
  return sym_power(sym_eigen(a), exponent);
}

Matrix spike_power(std::size_t p, const Vector& theta0, double delta_xi, double exponent) {
  if (theta0.size() != p) throw DomainError("spike direction has wrong dimension");
  const Vector t0 = require_unit(theta0);
  const double r = 1.0 - delta_xi / static_cast<double>(p);
  const double s = 1.0 + (static_cast<double>(p) - 1.0) * delta_xi / static_cast<double>(p);
  if (r <= 0.0 || s <= 0.0) {
    throw DomainError("spike parameters give a non positive definite matrix");
  }
  const double ra = std::pow(r, exponent);
  const double lambda_a = std::pow(s, exponent) - ra;
  Matrix out(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    out(i, i) = ra;
    for (std::size_t j = 0; j < p; ++j) out(i, j) += lambda_a * t0[i] * t0[j];
  }
  return out;
}

std::vector<Vector> gram_schmidt_against(const Vector& theta0,
                                         const std::vector<Vector>& vecs) {
  constexpr double kResidualTol = 1e-8;
  const std::size_t p = theta0.size();
  if (vecs.size() != p - 1) {
    throw DomainError("gram_schmidt_against expects p-1 vectors");
  }
  const Vector t0 = require_unit(theta0);

  std::vector<Vector> basis;  // t0 then the produced vectors
  basis.reserve(p);
  basis.push_back(t0);

  std::vector<Vector> out;
  out.reserve(p - 1);
  for (const Vector& v : vecs) {
    if (v.size() != p) throw DomainError("gram_schmidt_against dimension mismatch");
    Vector r = v;
    for (const Vector& b : basis) {
      const double c = dot(r, b);
      for (std::size_t i = 0; i < p; ++i) r[i] -= c * b[i];
    }
    const double rn = norm(r);
    if (rn < kResidualTol) {
      throw RankError("degenerate input: Gram-Schmidt residual norm below 1e-8");
    }
    for (double& x : r) x /= rn;
    basis.push_back(r);
    out.push_back(std::move(r));
  }
  return out;
}

Matrix commutation_matrix(std::size_t p) {
  if (p < 2) throw DomainError("commutation_matrix requires p >= 2");
  Matrix k(p * p, p * p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) k(i + p * j, j + p * i) = 1.0;
  return k;
}

Matrix j_matrix(std::size_t p) {
  if (p < 2) throw DomainError("j_matrix requires p >= 2");
  Matrix jm(p * p, p * p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) jm(i + p * i, j + p * j) = 1.0;
  return jm;
}

Vector vec(const Matrix& a) {
  Vector out(a.rows() * a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out[i + a.rows() * j] = a(i, j);
  return out;
}

}  // namespace weakpca

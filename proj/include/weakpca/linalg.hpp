#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weakpca/error.hpp"

namespace weakpca {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

// Unit-normalizes v; throws DomainError on (near-)zero input.
Vector normalized(const Vector& v);

// Returns v rescaled to exact unit norm if ||v|| is within tol of 1,
// otherwise throws DomainError. Used to validate user-supplied directions.
Vector require_unit(const Vector& v, double tol = 1e-6);

// Dense row-major matrix. Dimensions here are small (p <= ~50), so all
// operations are straightforward loops.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  Matrix transposed() const;
  double trace() const;
  double frobenius_norm() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  Vector operator*(std::span<const double> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// a * b'
Matrix outer(std::span<const double> a, std::span<const double> b);

// Square matrix with entries[i][j] == entries[j][i] exactly; the constructor
// replaces both with their average, so downstream code never sees asymmetry.
class SymMatrix {
 public:
  explicit SymMatrix(Matrix m);
  static SymMatrix identity(std::size_t n);

  std::size_t dim() const noexcept { return mat_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }
  const Matrix& mat() const noexcept { return mat_; }

 private:
  Matrix mat_;
};

struct SpectralDecomp {
  Vector eigenvalues;   // sorted descending
  Matrix eigenvectors;  // orthonormal columns; column j pairs with eigenvalues[j]
};

// Cyclic Jacobi eigensolver for small dense symmetric matrices.
// Sign convention: the first component of each eigenvector whose magnitude
// exceeds 1e-9 is made positive. Throws NumericError if the off-diagonal
// mass has not dropped below 1e-12 (relative) after 100 sweeps.
SpectralDecomp sym_eigen(const SymMatrix& a);

// Sum of lambda_j q_j q_j'.
Matrix reconstruct(const SpectralDecomp& d);

// A^a through the spectral decomposition. Fractional or negative exponents
// require a strictly positive spectrum (DomainError otherwise).
Matrix sym_power(const SpectralDecomp& d, double exponent);
Matrix sym_power(const SymMatrix& a, double exponent);

// Closed-form a-th power of the single-spike matrix
//   (1 - dxi/p) I_p + dxi theta0 theta0',
// namely (1 - dxi/p)^a I_p + lambda_a theta0 theta0' with
// lambda_a = (1 + (p-1) dxi/p)^a - (1 - dxi/p)^a.
Matrix spike_power(std::size_t p, const Vector& theta0, double delta_xi, double exponent);

// Orthonormalizes vecs against theta0 (and against each other), recursively:
// each output is the normalized residual of the corresponding input after
// projecting out theta0 and all previously produced vectors. Expects exactly
// p-1 inputs; throws RankError when a projection residual norm drops below
// 1e-8 (degenerate input).
std::vector<Vector> gram_schmidt_against(const Vector& theta0,
                                         const std::vector<Vector>& vecs);

// K_p, the p^2 x p^2 commutation matrix: K_p vec(A) = vec(A').
Matrix commutation_matrix(std::size_t p);

// J_p = (vec I_p)(vec I_p)': J_p vec(A) = tr(A) vec(I_p).
Matrix j_matrix(std::size_t p);

// Column-major stacking of a.
Vector vec(const Matrix& a);

}  // namespace weakpca

#pragma once

#include "weakpca/linalg.hpp"

namespace weakpca {

// Symmetric positive definite matrix normalized to trace p. The constructor
// rescales to exact trace p; definiteness surfaces as DomainError wherever an
// inverse or fractional power is taken.
class ShapeMatrix {
 public:
  explicit ShapeMatrix(SymMatrix m);
  static ShapeMatrix identity(std::size_t p) { return ShapeMatrix(SymMatrix::identity(p)); }

  std::size_t dim() const noexcept { return sym_.dim(); }
  double operator()(std::size_t i, std::size_t j) const { return sym_(i, j); }
  const SymMatrix& sym() const noexcept { return sym_; }
  const Matrix& mat() const noexcept { return sym_.mat(); }

 private:
  SymMatrix sym_;
};

// Projects each row of data onto the unit sphere. Throws DomainError if a
// row is (exactly) zero.
Matrix spatial_signs(const Matrix& data);

// Sign covariance matrix
//   S_n(V) = (1/n) sum_i V^{-1/2} u_i u_i' V^{-1/2} / ||V^{-1/2} u_i||^2
// with V^{-1/2} the symmetric inverse square root. Rows of signs must be
// unit vectors. The result is PSD with trace 1.
SymMatrix sign_cov(const Matrix& signs, const ShapeMatrix& v);

struct TylerOptions {
  int max_iterations = 500;
  double tolerance = 1e-10;  // on ||S_n(V) - (1/p) I||_F, the defining equation
};

// Tyler's M-estimator of shape: the trace-p matrix solving
// S_n(V) = (1/p) I_p. Fixed-point iteration
//   V_{k+1} \propto (p/n) sum_i u_i u_i' / (u_i' V_k^{-1} u_i),
// trace-normalized every step, started from the identity. Convergence is
// certified on the defining equation itself, so every returned estimate
// satisfies the tolerance. Throws InsufficientDataError when n <= p,
// DomainError when the signs are (heuristically) not in general position,
// and ConvergenceError (with the last residual) at the iteration cap.
ShapeMatrix tyler_shape(const Matrix& signs, const TylerOptions& opts = {});

// Constrained null-shape estimate: keeps the Tyler eigenvalues but replaces
// the j-th eigenvector by theta0 and re-orthogonalizes the remaining Tyler
// eigenvectors (descending eigenvalue order, skipping the j-th) against it.
// The output has the same eigenvalue multiset as vhat, trace p, and theta0
// as an exact eigenvector for the j-th eigenvalue. j is 1-based.
ShapeMatrix constrained_shape(const ShapeMatrix& vhat, const Vector& theta0, int j = 1);

// Single-spike shortcut: lambda_j theta0 theta0' + mean(other eigenvalues)
// (I - theta0 theta0').
ShapeMatrix constrained_shape_single_spike(const ShapeMatrix& vhat, const Vector& theta0,
                                           int j = 1);

}  // namespace weakpca

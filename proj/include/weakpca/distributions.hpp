#pragma once

#include "weakpca/linalg.hpp"
#include "weakpca/rng.hpp"
#include "weakpca/shape.hpp"

namespace weakpca {

// Centered elliptical sampling family. Only the Gaussian and multivariate
// Student families are needed; Student allows any nu > 0 (the sign-based
// procedures only consume directions, so even nu <= 2 is fine).
struct EllipticalSpec {
  enum class Family { gaussian, student };

  Family family;
  double nu;          // Student degrees of freedom; ignored for Gaussian
  SymMatrix scatter;  // positive definite

  static EllipticalSpec gaussian(SymMatrix scatter) {
    return {Family::gaussian, 0.0, std::move(scatter)};
  }
  static EllipticalSpec student(double nu, SymMatrix scatter) {
    if (!(nu > 0.0)) throw DomainError("student family requires nu > 0");
    return {Family::student, nu, std::move(scatter)};
  }

  std::size_t dim() const noexcept { return scatter.dim(); }
};

// One draw from the uniform distribution on S^{p-1}.
Vector sample_sphere(std::size_t p, RngStream& rng);

// n x p matrix of independent draws. Gaussian rows are scatter^{1/2} z with
// z standard normal (symmetric square root); Student rows additionally divide
// by sqrt(chi^2_nu / nu). No returned row is the zero vector.
Matrix sample_elliptical(const EllipticalSpec& spec, std::size_t n, RngStream& rng);

// n spatial signs of N(0, V) draws, as rows of an n x p matrix.
Matrix sample_angular_gaussian(const ShapeMatrix& v, std::size_t n, RngStream& rng);

// Log-density of the angular Gaussian distribution with shape V at u on the
// unit sphere:
//   log Gamma(p/2) - log(2 pi^{p/2}) - (1/2) log det V - (p/2) log(u' V^{-1} u).
double angular_gaussian_logpdf(const Vector& u, const ShapeMatrix& v);

// Central chi-square CDF via the regularized lower incomplete gamma function
// (series for small arguments, continued fraction otherwise).
double chi2_cdf(double x, double df);

// Inverse of chi2_cdf; satisfies |chi2_cdf(result, df) - q| <= 1e-10.
double chi2_quantile(double q, double df);

// Noncentral chi-square CDF as a Poisson mixture of central CDFs, truncated
// once the uncovered Poisson mass drops below 1e-12 (cap 1e5 terms).
double noncentral_chi2_cdf(double x, double df, double ncp);

}  // namespace weakpca

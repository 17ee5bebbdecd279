#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "weakpca/linalg.hpp"
#include "weakpca/rng.hpp"

namespace testutil {

using weakpca::Matrix;
using weakpca::RngStream;
using weakpca::SymMatrix;
using weakpca::Vector;

inline SymMatrix random_sym(std::size_t p, RngStream& rng, double scale = 1.0) {
  Matrix m(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) m(i, j) = scale * rng.gaussian();
  return SymMatrix(std::move(m));
}

// Orthonormal eigenvector basis of a random symmetric matrix.
inline Matrix random_orthogonal(std::size_t p, RngStream& rng) {
  return weakpca::sym_eigen(random_sym(p, rng)).eigenvectors;
}

// One-sample Kolmogorov-Smirnov distance against a CDF.
inline double ks_distance(std::vector<double> x, const std::function<double(double)>& cdf) {
  std::sort(x.begin(), x.end());
  const auto n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

// Two-sample Kolmogorov-Smirnov distance.
inline double ks_distance_two(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    const double fa = static_cast<double>(i) / static_cast<double>(a.size());
    const double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

// Asymptotic Kolmogorov p-value; n_eff = n for one sample, nm/(n+m) for two.
inline double kolmogorov_pvalue(double d, double n_eff) {
  const double rn = std::sqrt(n_eff);
  const double lambda = (rn + 0.12 + 0.11 / rn) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::min(std::max(sum, 0.0), 1.0);
}

}  // namespace testutil

#pragma once

#include <vector>

#include "weakpca/lecam.hpp"

namespace weakpca {

// Parameters of an asymptotic local power evaluation.
struct PowerQuery {
  std::size_t p = 0;
  double alpha = 0.05;
  double xi = 1.0;
  double tau_norm = 0.0;  // ||tau||
  Regime regime = Regime::classical;
};

// Noncentrality parameter of the chi^2_{p-1} limit under the local
// alternative with perturbation norm ||tau||:
//   classical:  p (p + (p-1) xi) / ((p+2)(p - xi)) ||tau||^2   (needs xi < p)
//   weak:       (p/(p+2)) ||tau||^2
//   critical:   (p/(p+2)) ||tau||^2 (1 - ||tau||^2/(2 xi^2))^2
//                 (1 - ||tau||^2/(4 xi^2))      (needs ||tau|| <= 2 xi)
//   degenerate: 0 (contiguous alternatives are undetectable)
double noncentrality(const PowerQuery& q);

// P(noncentral chi^2_{p-1}(ncp) > chi^2_{p-1, 1-alpha}); equals alpha when
// the noncentrality vanishes.
double asymptotic_power(const PowerQuery& q);

struct PowerPoint {
  double ell = 0.0;
  double ncp = 0.0;
  double power = 0.0;
};

// The theoretical power curve over a grid of perturbation magnitudes.
std::vector<PowerPoint> theoretical_curve(std::size_t p, double alpha, double xi,
                                          Regime regime, const std::vector<double>& ell_grid);

}  // namespace weakpca

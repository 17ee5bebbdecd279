#pragma once

#include "weakpca/shape.hpp"

namespace weakpca {

// Asymptotic regime of the spike strength sequence delta_n.
enum class Regime {
  classical,   // delta_n == 1
  weak,        // delta_n -> 0, sqrt(n) delta_n -> infinity
  critical,    // delta_n = 1/sqrt(n)
  degenerate,  // sqrt(n) delta_n -> 0
};

std::string regime_name(Regime r);
Regime regime_from_name(const std::string& s);

// Single-spike shape V0 = (1 - delta xi / p) I_p + delta xi theta0 theta0'.
// Positive definiteness requires delta xi < p; the trace is p exactly.
struct SpikeModel {
  std::size_t p;
  Vector theta0;  // unit
  double xi;      // locality parameter, > 0
  double delta;   // spike strength, in (0, p/xi)

  void validate() const;
};

// Local perturbation theta0 + nu tau of the spike direction, constrained to
// stay on the unit sphere: theta0' tau = -(nu/2) ||tau||^2.
struct Perturbation {
  Vector tau;
  double nu = 0.0;
};

// gamma_n = p delta xi / (p + (p-1) delta xi), in (0, 1).
double gamma_n(const SpikeModel& model);

// The local perturbation rate nu_n = 1 / (sqrt(n) gamma_n). In the critical
// regime (delta = 1/sqrt(n)) this is asymptotically equivalent to 1/xi, which
// callers may use directly instead.
double perturbation_scale(const SpikeModel& model, std::size_t n);

ShapeMatrix build_null_shape(const SpikeModel& model);
ShapeMatrix build_alt_shape(const SpikeModel& model, const Perturbation& pert);

// Constructs tau with ||tau|| = ell in the 2-plane spanned by theta0 and the
// given orthogonal unit direction, via the rotation angle 2 asin(ell nu / 2),
// so that theta0 + nu tau lies on the unit sphere. Requires ell nu / 2 <= 1.
Perturbation make_perturbation(const Vector& theta0, const Vector& direction, double ell,
                               double nu);

// Exact log-likelihood ratio log dP_{V1}/dP_{V0} of the angular Gaussian
// sample, computed as -(p/2) sum_i [log(1 - gamma (u_i' theta1)^2)
// - log(1 - gamma (u_i' theta0)^2)] with theta1 = theta0 + nu tau (the
// determinants cancel because both shapes share the same spectrum).
double log_likelihood_ratio(const Matrix& signs, const SpikeModel& model,
                            const Perturbation& pert);

// Central sequence Delta = p (I - theta0 theta0') sqrt(n) (S_n(V0) - I/p)
// theta0. The classical regime carries the additional scalar
// sqrt((p + (p-1) xi) / (p - xi)) and therefore requires xi < p.
Vector central_sequence(const Matrix& signs, const SpikeModel& model,
                        Regime regime = Regime::weak);

// Upsilon = p sqrt(n) (S_n(V0) - I/p).
SymMatrix upsilon_matrix(const Matrix& signs, const SpikeModel& model);

// Quadratic approximation of the log-likelihood ratio in the given regime:
// tau' Delta - (1/2) tau' Gamma tau for the LAN regimes, and the critical-
// regime expansion driven by Upsilon. The degenerate regime has no quadratic
// approximation (the limit is the constant 0) and raises DomainError.
double lan_quadratic(Regime regime, const Vector& tau, const Vector& theta0, double xi,
                     const Vector& central);
double lan_quadratic(Regime regime, const Vector& tau, const Vector& theta0, double xi,
                     const SymMatrix& upsilon);

}  // namespace weakpca

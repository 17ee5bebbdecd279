#include "weakpca/distributions.hpp"

#include <cmath>
#include <numbers>

namespace weakpca {

Vector sample_sphere(std::size_t p, RngStream& rng) {
  if (p < 2) throw DomainError("sample_sphere requires p >= 2");
  Vector v(p);
  double s = 0.0;
  do {
    for (std::size_t i = 0; i < p; ++i) v[i] = rng.gaussian();
    s = norm(v);
  } while (s == 0.0);
  for (double& x : v) x /= s;
  return v;
}

Matrix sample_elliptical(const EllipticalSpec& spec, std::size_t n, RngStream& rng) {
  if (n < 1) throw DomainError("sample size must be positive");
  const std::size_t p = spec.dim();
  const Matrix root = sym_power(spec.scatter, 0.5);  // DomainError if not PD

  Matrix x(n, p);
  Vector z(p);
  for (std::size_t r = 0; r < n; ++r) {
    for (;;) {
      for (std::size_t i = 0; i < p; ++i) z[i] = rng.gaussian();
      double scale = 1.0;
      if (spec.family == EllipticalSpec::Family::student) {
        scale = 1.0 / std::sqrt(rng.chi_square(spec.nu) / spec.nu);
      }
      double sq = 0.0;
      for (std::size_t i = 0; i < p; ++i) {
        const double xi = dot(root.row(i), z) * scale;
        x(r, i) = xi;
        sq += xi * xi;
      }
      if (sq > 0.0) break;  // zero rows have probability zero; redraw if hit
    }
  }
  return x;
}

Matrix sample_angular_gaussian(const ShapeMatrix& v, std::size_t n, RngStream& rng) {
  const Matrix x = sample_elliptical(EllipticalSpec::gaussian(v.sym()), n, rng);
  return spatial_signs(x);
}

double angular_gaussian_logpdf(const Vector& u, const ShapeMatrix& v) {
  const std::size_t p = v.dim();
  if (u.size() != p) throw DomainError("angular_gaussian_logpdf dimension mismatch");
  const SpectralDecomp d = sym_eigen(v.sym());
  double logdet = 0.0;
  for (double lam : d.eigenvalues) {
    if (!(lam > 0.0)) throw DomainError("shape matrix must be positive definite");
    logdet += std::log(lam);
  }
  const Matrix vinv = sym_power(d, -1.0);
  const double quad = dot(u, vinv * u);
  const double hp = 0.5 * static_cast<double>(p);
  return std::lgamma(hp) - std::numbers::ln2 - hp * std::log(std::numbers::pi) -
         0.5 * logdet - hp * std::log(quad);
}

namespace {

// Regularized lower incomplete gamma P(a, x); series and continued-fraction
// branches as in the classical gammp/gammq pair.
double lower_reg_gamma(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw DomainError("invalid incomplete gamma arguments");
  if (x == 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int k = 0; k < 10000; ++k) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) {
        return sum * std::exp(-x + a * std::log(x) - lg);
      }
    }
    throw NumericError("incomplete gamma series did not converge");
  }
  // Lentz continued fraction for Q(a, x)
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      const double q = std::exp(-x + a * std::log(x) - lg) * h;
      return 1.0 - q;
    }
  }
  throw NumericError("incomplete gamma continued fraction did not converge");
}

}  // namespace

double chi2_cdf(double x, double df) {
  if (df < 1.0) throw DomainError("chi2_cdf requires df >= 1");
  if (x < 0.0) throw DomainError("chi2_cdf requires x >= 0");
  if (x == 0.0) return 0.0;
  return lower_reg_gamma(0.5 * df, 0.5 * x);
}

double chi2_quantile(double q, double df) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("chi2_quantile requires 0 < q < 1");
  if (df < 1.0) throw DomainError("chi2_quantile requires df >= 1");

  // Wilson-Hilferty starting point, then safeguarded Newton on the CDF.
  const double z = [](double prob) {
    // Rational approximation for the standard normal quantile is more than
    // enough for a starting value; Newton below does the real work.
    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double cdf = 0.5 * std::erfc(-mid / std::numbers::sqrt2);
      (cdf < prob ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }(q);
  const double wh = df * std::pow(1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df)), 3.0);
  double x = std::max(wh, 1e-8);

  double lo = 0.0;
  double hi = std::max(2.0 * x, df + 100.0);
  while (chi2_cdf(hi, df) < q) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw NumericError("chi2_quantile bracket expansion failed");
  }
  if (x <= lo || x >= hi) x = 0.5 * (lo + hi);

  const double ha = 0.5 * df;
  const double lg = std::lgamma(ha);
  for (int it = 0; it < 200; ++it) {
    const double f = chi2_cdf(x, df) - q;
    if (std::abs(f) <= 1e-12) return x;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    const double logpdf = (ha - 1.0) * std::log(0.5 * x) - 0.5 * x - lg - std::numbers::ln2;
    const double step = f / std::exp(logpdf);
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisect when Newton leaves bracket
    x = next;
  }
  if (std::abs(chi2_cdf(x, df) - q) <= 1e-10) return x;
  throw NumericError("chi2_quantile did not reach tolerance");
}

double noncentral_chi2_cdf(double x, double df, double ncp) {
  if (df < 1.0) throw DomainError("noncentral_chi2_cdf requires df >= 1");
  if (x < 0.0) throw DomainError("noncentral_chi2_cdf requires x >= 0");
  if (ncp < 0.0) throw DomainError("noncentral_chi2_cdf requires ncp >= 0");
  if (ncp == 0.0) return chi2_cdf(x, df);
  if (x == 0.0) return 0.0;

  // Poisson(lambda/2) mixture over central chi-square CDFs; start at the
  // modal index and expand outward until the uncovered mass is < 1e-12.
  constexpr double kTailTol = 1e-12;
  constexpr long kMaxTerms = 50000;  // up/down pairs; 1e5 mixture terms total
  const double half = 0.5 * ncp;
  const long j0 = static_cast<long>(half);
  const double logw0 = -half + static_cast<double>(j0) * std::log(half) -
                       std::lgamma(static_cast<double>(j0) + 1.0);
  const double w0 = std::exp(logw0);

  double total = w0 * chi2_cdf(x, df + 2.0 * static_cast<double>(j0));
  double covered = w0;

  double wu = w0;
  long ju = j0;
  double wd = w0;
  long jd = j0;
  for (long step = 1; step <= kMaxTerms; ++step) {
    bool advanced = false;
    if (covered < 1.0 - kTailTol) {
      ++ju;
      wu *= half / static_cast<double>(ju);
      total += wu * chi2_cdf(x, df + 2.0 * static_cast<double>(ju));
      covered += wu;
      advanced = true;
    }
    if (jd > 0 && covered < 1.0 - kTailTol) {
      wd *= static_cast<double>(jd) / half;
      --jd;
      total += wd * chi2_cdf(x, df + 2.0 * static_cast<double>(jd));
      covered += wd;
      advanced = true;
    }
    if (!advanced) break;
  }
  return std::min(total, 1.0);
}

}  // namespace weakpca

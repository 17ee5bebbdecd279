#include <doctest.h>

#include <cmath>

#include "testutil.hpp"
#include "weakpca/distributions.hpp"
#include "weakpca/power.hpp"

using namespace weakpca;

TEST_SUITE_BEGIN("power");

TEST_CASE("noncentrality closed forms") {
  for (Regime r : {Regime::classical, Regime::weak, Regime::critical, Regime::degenerate}) {
    CHECK(noncentrality({6, 0.05, 1.0, 0.0, r}) == 0.0);
  }
  CHECK(noncentrality({6, 0.05, 1.0, 1.0, Regime::classical}) ==
        doctest::Approx(1.65).epsilon(1e-14));
  CHECK(noncentrality({6, 0.05, 1.0, 1.0, Regime::weak}) ==
        doctest::Approx(0.75).epsilon(1e-14));
  CHECK(noncentrality({6, 0.05, 1.0, 1.0, Regime::critical}) ==
        doctest::Approx(0.140625).epsilon(1e-14));
  CHECK(noncentrality({6, 0.05, 1.0, 2.0, Regime::degenerate}) == 0.0);

  CHECK_THROWS_AS(noncentrality({6, 0.05, 6.0, 1.0, Regime::classical}), DomainError);
  CHECK_THROWS_AS(noncentrality({6, 0.05, 1.0, 2.5, Regime::critical}), DomainError);
}

TEST_CASE("asymptotic power boundary and monotonicity") {
  CHECK(std::abs(asymptotic_power({6, 0.05, 1.0, 0.0, Regime::weak}) - 0.05) <= 1e-10);
  double prev = 0.0;
  for (double ell : {0.0, 0.5, 1.0, 1.5, 2.5, 4.0}) {
    const double pw = asymptotic_power({6, 0.05, 1.0, ell, Regime::weak});
    CHECK(pw >= prev);
    CHECK(pw < 1.0);
    prev = pw;
  }
}

TEST_CASE("asymptotic power against direct simulation") {
  // noncentral chi^2_5 exceedance probability at ncp = 1.65
  const double want = asymptotic_power({6, 0.05, 1.0, 1.0, Regime::classical});
  RngStream rng(601, 0);
  const int n = 10000000;
  const double crit = chi2_quantile(0.95, 5.0);
  const double shift = std::sqrt(1.65);
  int exceed = 0;
  for (int i = 0; i < n; ++i) {
    const double g0 = rng.gaussian() + shift;
    double s = g0 * g0;
    for (int k = 0; k < 4; ++k) {
      const double g = rng.gaussian();
      s += g * g;
    }
    if (s > crit) ++exceed;
  }
  CHECK(std::abs(static_cast<double>(exceed) / n - want) <= 3e-3);
}

TEST_CASE("power curve endpoints and orderings") {
  const std::vector<double> grid{0.0, 1.0, 2.0, 3.0, 4.0};
  const auto weak1 = theoretical_curve(6, 0.05, 0.5, Regime::weak, grid);
  const auto weak2 = theoretical_curve(6, 0.05, 2.0, Regime::weak, grid);
  CHECK(weak1.front().power == doctest::Approx(0.05).epsilon(1e-10));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // the weak-regime curve does not involve xi
    CHECK(weak1[i].power == weak2[i].power);
    CHECK(weak1[i].ncp == weak2[i].ncp);
  }

  const auto classical = theoretical_curve(6, 0.05, 1.0, Regime::classical, grid);
  const auto weak = theoretical_curve(6, 0.05, 1.0, Regime::weak, grid);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(classical[i].power >= weak[i].power);
}

TEST_CASE("critical-regime noncentrality vanishes at sqrt(2) xi and has an interior peak") {
  const double xi = 1.3;
  const double at_root =
      noncentrality({6, 0.05, xi, std::sqrt(2.0) * xi, Regime::critical});
  CHECK(std::abs(at_root) <= 1e-12);

  double best = -1.0, best_ell = 0.0;
  const int k = 400;
  for (int i = 0; i <= k; ++i) {
    const double ell = 2.0 * xi * i / k;
    const double v = noncentrality({6, 0.05, xi, ell, Regime::critical});
    if (v > best) {
      best = v;
      best_ell = ell;
    }
  }
  CHECK(best > 0.0);
  CHECK(best_ell > 0.0);
  CHECK(best_ell < std::sqrt(2.0) * xi);  // non-monotone: peak before the zero
  CHECK(noncentrality({6, 0.05, xi, 2.0 * xi, Regime::critical}) <= 1e-12);
}

TEST_CASE("power is continuous in the noncentrality") {
  const double crit = chi2_quantile(0.95, 5.0);
  for (double ncp : {0.0, 0.4, 1.0, 3.0, 9.0, 25.0}) {
    const double a = 1.0 - noncentral_chi2_cdf(crit, 5.0, ncp);
    const double b = 1.0 - noncentral_chi2_cdf(crit, 5.0, ncp + 1e-6);
    CHECK(std::abs(a - b) < 1e-4);
  }
}

TEST_SUITE_END();

#include <doctest.h>

#include <cmath>

#include "testutil.hpp"
#include "weakpca/lecam.hpp"
#include "weakpca/montecarlo.hpp"

using namespace weakpca;

namespace {

ScenarioConfig small_custom() {
  ScenarioConfig cfg;
  cfg.figure = Figure::custom;
  cfg.p = 4;
  cfg.n = 120;
  cfg.reps = 150;
  cfg.w_values = {0, 1};
  cfg.ell_values = {0.0, 1.0};
  cfg.families = {SamplingFamily::gaussian(), SamplingFamily::student(4.0)};
  cfg.methods = {Method::sign, Method::anderson, Method::sign_oracle};
  cfg.seed = 90210;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("montecarlo");

TEST_CASE("build_scatter null cells reproduce the spike") {
  const Vector theta0{1, 0, 0, 0, 0, 0};
  const SymMatrix v = build_scatter(Figure::fig1, 6, 5000, 0, 0.0, theta0);
  // w = 0: delta = n^0 = 1, so the scatter is the classical unit spike
  const Matrix want = spike_power(6, theta0, 1.0, 1.0);
  CHECK((v.mat() - want).frobenius_norm() <= 1e-14);
  CHECK(v.mat().trace() == doctest::Approx(6.0).epsilon(1e-14));

  const SymMatrix weak = build_scatter(Figure::fig2, 6, 400, 3, 0.0, theta0);
  const double delta = std::pow(400.0, -0.75);
  CHECK(weak(0, 0) == doctest::Approx(1.0 - delta / 6.0 + delta).epsilon(1e-14));
}

TEST_CASE("build_scatter figure-3 alternatives rotate theta0") {
  const Vector theta0{1, 0};
  const SymMatrix v = build_scatter(Figure::fig3, 2, 200, 1, 3.0, theta0);
  const double angle = 3.0 * std::numbers::pi / 12.0;
  const Vector dir{std::cos(angle), std::sin(angle)};
  const double delta = std::pow(200.0, -1.0 / 8.0);
  const Matrix want = spike_power(2, dir, delta, 1.0);
  CHECK((v.mat() - want).frobenius_norm() <= 1e-13);
}

TEST_CASE("build_scatter validates its inputs") {
  const Vector theta0{1, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(build_scatter(Figure::fig2, 6, 400, 0, 1.0, theta0), DomainError);
  CHECK_THROWS_AS(build_scatter(Figure::fig3, 6, 200, 0, 0.0, theta0), DomainError);
  CHECK_THROWS_AS(build_scatter(Figure::fig1, 6, 400, -1, 0.0, theta0), DomainError);
}

TEST_CASE("figure presets match the experiment grids") {
  const ScenarioConfig f1 = fig1_preset(1);
  CHECK(f1.p == 6);
  CHECK(f1.n == 200000);
  CHECK(f1.reps == 2500);
  CHECK(f1.w_values.size() * f1.ell_values.size() * f1.families.size() * f1.methods.size() ==
        15);

  const ScenarioConfig f2 = fig2_preset(1);
  CHECK(f2.n == 400);
  CHECK(f2.reps == 5000);
  // 3 methods x 4 families x 4 w x 1 ell = 48 cells
  CHECK(f2.w_values.size() * f2.ell_values.size() * f2.families.size() * f2.methods.size() ==
        48);

  const ScenarioConfig f3 = fig3_preset(1);
  CHECK(f3.p == 2);
  CHECK(f3.n == 200);
  CHECK(f3.w_values.size() * f3.ell_values.size() * f3.families.size() * f3.methods.size() ==
        108);
}

TEST_CASE("scaling rules") {
  ScenarioConfig f1 = fig1_preset(1, 0.1);
  CHECK(f1.scaled_n() == 20000);
  CHECK(f1.scaled_reps() == 500);  // floor keeps M resolvable
  f1.scale = 1.0;
  CHECK(f1.scaled_reps() == 2500);

  ScenarioConfig small = small_custom();
  CHECK(small.scaled_reps() == 150);  // floor never raises a small configured M
  small.scale = 0.01;
  CHECK_THROWS_AS(run_scenario(small), DomainError);  // n too small after scaling
}

TEST_CASE("run_scenario is deterministic and schedule independent") {
  ScenarioConfig cfg = small_custom();
  cfg.jobs = 1;
  const auto serial = run_scenario(cfg);
  cfg.jobs = 3;
  const auto parallel = run_scenario(cfg);
  const auto again = run_scenario(cfg);
  CHECK(scenario_csv(serial) == scenario_csv(parallel));
  CHECK(scenario_csv(parallel) == scenario_csv(again));
  CHECK(serial.size() == 3 * 2 * 2 * 2);

  // different seed, different results
  cfg.seed = 90211;
  CHECK(scenario_csv(run_scenario(cfg)) != scenario_csv(serial));
}

TEST_CASE("result rows are self consistent") {
  ScenarioConfig cfg = small_custom();
  cfg.jobs = 2;
  const auto rows = run_scenario(cfg);
  for (const ResultRow& row : rows) {
    CHECK(row.rejection_frequency >= 0.0);
    CHECK(row.rejection_frequency <= 1.0);
    CHECK(row.n == 120);
    CHECK(row.reps == 150);
    const auto used = static_cast<double>(row.reps - row.excluded);
    const double want_se =
        std::sqrt(row.rejection_frequency * (1.0 - row.rejection_frequency) / used);
    CHECK(row.standard_error == doctest::Approx(want_se).epsilon(1e-15));
    CHECK(row.excluded <= row.reps / 100);
    // the frequency recounts to a whole number of rejections
    const double rejections = row.rejection_frequency * used;
    CHECK(std::abs(rejections - std::round(rejections)) <= 1e-9);
  }

  // null cells sit near the nominal level; ell=1 cells reject at least as often
  for (const ResultRow& row : rows) {
    if (row.ell == 0.0 && row.method != Method::anderson) {
      CHECK(std::abs(row.rejection_frequency - 0.05) <= 0.07);
    }
  }
}

TEST_CASE("scenario csv format") {
  ScenarioConfig cfg = small_custom();
  cfg.methods = {Method::sign};
  cfg.families = {SamplingFamily::gaussian()};
  cfg.w_values = {0};
  cfg.ell_values = {0.0};
  const auto rows = run_scenario(cfg);
  const std::string csv = scenario_csv(rows);
  CHECK(csv.rfind("method,figure,distribution,w,ell,p,n,M,alpha,rejection_frequency,"
                  "standard_error,excluded,seed\n",
                  0) == 0);
  CHECK(csv.back() == '\n');
  CHECK(csv.find("sign,custom,gaussian,0,0,4,120,150,0.05,") != std::string::npos);
}

TEST_CASE("compare_to_theory arithmetic") {
  ResultRow row;
  row.p = 6;
  row.alpha = 0.05;
  row.w = 0;
  row.ell = 0.0;
  row.reps = 500;
  row.rejection_frequency = 0.05;
  row.standard_error = std::sqrt(0.05 * 0.95 / 500.0);
  const auto cmp = compare_to_theory({row}, 1.0);
  CHECK(cmp.size() == 1);
  CHECK(cmp[0].theoretical == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(std::abs(cmp[0].z) <= 1e-6);

  // degenerate SE falls back to the binomial error of the theory value
  ResultRow sure = row;
  sure.w = 1;
  sure.ell = 4.0;
  sure.rejection_frequency = 1.0;
  sure.standard_error = 0.0;
  const auto cmp2 = compare_to_theory({sure}, 1.0);
  CHECK(std::isfinite(cmp2[0].z));
}

TEST_SUITE_END();

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weakpca/distributions.hpp"
#include "weakpca/eigen_tests.hpp"
#include "weakpca/power.hpp"

namespace weakpca {

enum class Figure { fig1, fig2, fig3, custom };

std::string figure_name(Figure f);

// One sampling family of an experiment, with the label that ends up in the
// CSV ("gaussian", "t2", ...).
struct SamplingFamily {
  EllipticalSpec::Family family = EllipticalSpec::Family::gaussian;
  double nu = 0.0;
  std::string label = "gaussian";

  static SamplingFamily gaussian() { return {EllipticalSpec::Family::gaussian, 0.0, "gaussian"}; }
  static SamplingFamily student(double nu);
};

// Full description of one Monte Carlo experiment. `scale` multiplies n and M
// (M never drops below 500 or its configured value, whichever is smaller);
// all local-alternative geometry (delta_n, nu_n, rotation angles) is
// recomputed from the scaled n.
struct ScenarioConfig {
  Figure figure = Figure::custom;
  std::size_t p = 6;
  std::size_t n = 400;
  std::size_t reps = 1000;  // M
  std::vector<int> w_values = {0};
  std::vector<double> ell_values = {0.0};
  std::vector<SamplingFamily> families = {SamplingFamily::gaussian()};
  std::vector<Method> methods = {Method::sign};
  double alpha = 0.05;
  double xi = 1.0;
  std::uint64_t seed = 0;
  double scale = 1.0;
  int jobs = 0;  // <= 0: hardware concurrency

  std::size_t scaled_n() const;
  std::size_t scaled_reps() const;
};

// Benchmark experiment presets. Figure 1: p=6, n=200,000, M=2,500, Gaussian,
// w in {0,1,2}, ell in {0..4}, proposed sign test. Figure 2: p=6, n=400,
// M=5,000, w in {0,1,2,3}, null only, four families, three tests.
// Figure 3: p=2, n=200, M=2,500, w in {0,1,2}, ell in {0..3}, three
// families, three tests.
ScenarioConfig fig1_preset(std::uint64_t seed, double scale = 1.0);
ScenarioConfig fig2_preset(std::uint64_t seed, double scale = 1.0);
ScenarioConfig fig3_preset(std::uint64_t seed, double scale = 1.0);
ScenarioConfig figure_preset(Figure f, std::uint64_t seed, double scale = 1.0);

struct ResultRow {
  Method method = Method::sign;
  Figure figure = Figure::custom;
  std::string distribution;
  int w = 0;
  double ell = 0.0;
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t reps = 0;  // configured M (before exclusions)
  double alpha = 0.05;
  double rejection_frequency = 0.0;
  double standard_error = 0.0;
  std::size_t excluded = 0;
  std::uint64_t seed = 0;
};

// Scatter matrix of one experiment cell. The spike strength is n^{-w/6},
// n^{-w/4} or n^{-w/8} for figures 1, 2 and 3; the spike direction is theta0
// rotated by the figure's local-alternative construction (figure 2 admits
// only ell = 0). Figure 3 requires p = 2.
SymMatrix build_scatter(Figure figure, std::size_t p, std::size_t n, int w, double ell,
                        const Vector& theta0);

// Runs every (method, family, w, ell) cell of the configuration: M
// replications each, drawing n observations and recording rejection at level
// alpha. Replication r of cell c draws from RngStream(seed, c * 2^32 + r),
// so results are independent of scheduling; replications run on `jobs`
// worker threads. Tyler non-convergence excludes the replication; more than
// 1% exclusions in a cell fails the whole run (ConvergenceError).
std::vector<ResultRow> run_scenario(const ScenarioConfig& cfg);

// CSV with the exact column set below, one row per cell, trailing newline:
// method,figure,distribution,w,ell,p,n,M,alpha,rejection_frequency,
// standard_error,excluded,seed
std::string scenario_csv(const std::vector<ResultRow>& rows);

struct TheoryComparison {
  ResultRow row;
  double theoretical = 0.0;
  double z = 0.0;  // (empirical - theoretical) / standard error
};

// Matches figure-1 style rejection frequencies against the asymptotic power
// curve: w = 0 is the classical regime, w >= 1 the weak regime, with
// ||tau|| = ell. Cells with zero standard error fall back to the binomial
// error of the theoretical power.
std::vector<TheoryComparison> compare_to_theory(const std::vector<ResultRow>& rows,
                                                double xi);

}  // namespace weakpca

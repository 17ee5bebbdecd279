#include "weakpca/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "weakpca/csv.hpp"
#include "weakpca/lecam.hpp"

namespace weakpca {

std::string figure_name(Figure f) {
  switch (f) {
    case Figure::fig1: return "fig1";
    case Figure::fig2: return "fig2";
    case Figure::fig3: return "fig3";
    case Figure::custom: return "custom";
  }
  return "?";
}

SamplingFamily SamplingFamily::student(double nu) {
  if (!(nu > 0.0)) throw DomainError("student family requires nu > 0");
  std::string label = "t" + format_double(nu);
  return {EllipticalSpec::Family::student, nu, std::move(label)};
}

std::size_t ScenarioConfig::scaled_n() const {
  const auto scaled = static_cast<std::size_t>(std::llround(static_cast<double>(n) * scale));
  return scaled;
}

std::size_t ScenarioConfig::scaled_reps() const {
  const auto scaled =
      static_cast<std::size_t>(std::llround(static_cast<double>(reps) * scale));
  // Down-scaling never pushes M below 500 (or below the configured M when
  // that is already smaller): rejection frequencies stay resolvable.
  return std::max(scaled, std::min<std::size_t>(reps, 500));
}

ScenarioConfig fig1_preset(std::uint64_t seed, double scale) {
  ScenarioConfig cfg;
  cfg.figure = Figure::fig1;
  cfg.p = 6;
  cfg.n = 200000;
  cfg.reps = 2500;
  cfg.w_values = {0, 1, 2};
  cfg.ell_values = {0.0, 1.0, 2.0, 3.0, 4.0};
  cfg.families = {SamplingFamily::gaussian()};
  cfg.methods = {Method::sign};
  cfg.seed = seed;
  cfg.scale = scale;
  return cfg;
}

ScenarioConfig fig2_preset(std::uint64_t seed, double scale) {
  ScenarioConfig cfg;
  cfg.figure = Figure::fig2;
  cfg.p = 6;
  cfg.n = 400;
  cfg.reps = 5000;
  cfg.w_values = {0, 1, 2, 3};
  cfg.ell_values = {0.0};
  cfg.families = {SamplingFamily::gaussian(), SamplingFamily::student(6),
                  SamplingFamily::student(4), SamplingFamily::student(2)};
  cfg.methods = {Method::sign, Method::tyler_lrt, Method::anderson};
  cfg.seed = seed;
  cfg.scale = scale;
  return cfg;
}

ScenarioConfig fig3_preset(std::uint64_t seed, double scale) {
  ScenarioConfig cfg;
  cfg.figure = Figure::fig3;
  cfg.p = 2;
  cfg.n = 200;
  cfg.reps = 2500;
  cfg.w_values = {0, 1, 2};
  cfg.ell_values = {0.0, 1.0, 2.0, 3.0};
  cfg.families = {SamplingFamily::gaussian(), SamplingFamily::student(4),
                  SamplingFamily::student(2)};
  cfg.methods = {Method::sign, Method::tyler_lrt, Method::anderson};
  cfg.seed = seed;
  cfg.scale = scale;
  return cfg;
}

ScenarioConfig figure_preset(Figure f, std::uint64_t seed, double scale) {
  switch (f) {
    case Figure::fig1: return fig1_preset(seed, scale);
    case Figure::fig2: return fig2_preset(seed, scale);
    case Figure::fig3: return fig3_preset(seed, scale);
    case Figure::custom: break;
  }
  throw DomainError("no preset for the custom figure");
}

namespace {

double spike_exponent(Figure figure) {
  switch (figure) {
    case Figure::fig1: return 6.0;
    case Figure::fig2: return 4.0;
    case Figure::fig3: return 8.0;
    case Figure::custom: return 6.0;  // custom configs follow the fig1 geometry
  }
  throw DomainError("unknown figure");
}

// First canonical direction with a usable component orthogonal to theta0.
Vector orthogonal_direction(const Vector& theta0) {
  const std::size_t p = theta0.size();
  for (std::size_t k = 0; k < p; ++k) {
    Vector d(p, 0.0);
    d[k] = 1.0;
    const double along = dot(d, theta0);
    for (std::size_t i = 0; i < p; ++i) d[i] -= along * theta0[i];
    const double rn = norm(d);
    if (rn > 1e-6) {
      for (double& x : d) x /= rn;
      return d;
    }
  }
  throw DomainError("could not build a direction orthogonal to theta0");
}

}  // namespace

SymMatrix build_scatter(Figure figure, std::size_t p, std::size_t n, int w, double ell,
                        const Vector& theta0) {
  if (w < 0) throw DomainError("w must be nonnegative");
  if (ell < 0.0) throw DomainError("ell must be nonnegative");
  if (figure == Figure::fig2 && ell != 0.0) {
    throw DomainError("figure 2 is a null-size experiment; ell must be 0");
  }
  if (figure == Figure::fig3 && p != 2) throw DomainError("figure 3 requires p = 2");
  const Vector t0 = require_unit(theta0);
  const double delta = std::pow(static_cast<double>(n), -w / spike_exponent(figure));

  Vector spike_dir = t0;
  if (ell > 0.0) {
    if (figure == Figure::fig3) {
      // theta0 + tau_ell = theta0 rotated by ell * pi / 12
      const double base = std::atan2(t0[1], t0[0]);
      const double angle = base + ell * std::numbers::pi / 12.0;
      spike_dir = {std::cos(angle), std::sin(angle)};
    } else {
      const SpikeModel model{p, t0, 1.0, delta};
      const double nu = perturbation_scale(model, n);
      const Perturbation pert = make_perturbation(t0, orthogonal_direction(t0), ell, nu);
      for (std::size_t i = 0; i < p; ++i) spike_dir[i] = t0[i] + nu * pert.tau[i];
    }
  }
  return SymMatrix(spike_power(p, spike_dir, delta, 1.0));
}

namespace {

struct Cell {
  Method method;
  SamplingFamily family;
  int w;
  double ell;
};

bool run_replication(const ScenarioConfig& cfg, const Cell& cell, const SymMatrix& scatter,
                     const ShapeMatrix& null_shape, const Vector& theta0, std::size_t n,
                     RngStream& rng) {
  EllipticalSpec spec{cell.family.family, cell.family.nu, scatter};
  const Matrix data = sample_elliptical(spec, n, rng);
  switch (cell.method) {
    case Method::sign:
      return sign_test(data, theta0, cfg.alpha).reject;
    case Method::tyler_lrt:
      return tyler_lrt(data, theta0, cfg.alpha).reject;
    case Method::anderson:
      return anderson_lrt(data, theta0, cfg.alpha).reject;
    case Method::sign_oracle:
      return oracle_sign_test(spatial_signs(data), null_shape, theta0, cfg.alpha).reject;
  }
  throw DomainError("unknown method");
}

}  // namespace

std::vector<ResultRow> run_scenario(const ScenarioConfig& cfg) {
  const std::size_t n = cfg.scaled_n();
  const std::size_t reps = cfg.scaled_reps();
  if (n < 10 * cfg.p) throw DomainError("scaled n must be at least 10 p");
  if (reps < 100) throw DomainError("scaled replication count must be at least 100");
  if (cfg.methods.empty() || cfg.families.empty() || cfg.w_values.empty() ||
      cfg.ell_values.empty()) {
    throw DomainError("scenario configuration has an empty dimension");
  }

  Vector theta0(cfg.p, 0.0);
  theta0[0] = 1.0;

  std::vector<Cell> cells;
  for (const Method m : cfg.methods)
    for (const SamplingFamily& fam : cfg.families)
      for (const int w : cfg.w_values)
        for (const double ell : cfg.ell_values) cells.push_back({m, fam, w, ell});

  // Shared per-cell inputs, precomputed once.
  std::vector<SymMatrix> scatters;
  std::vector<ShapeMatrix> null_shapes;
  scatters.reserve(cells.size());
  null_shapes.reserve(cells.size());
  for (const Cell& cell : cells) {
    SymMatrix scatter = build_scatter(cfg.figure, cfg.p, n, cell.w, cell.ell, theta0);
    null_shapes.push_back(ShapeMatrix(scatter));  // spike scatters already have trace p
    scatters.push_back(std::move(scatter));
  }

  // Replication outcomes, indexed (cell, replication): 0 accept, 1 reject,
  // 2 excluded (Tyler non-convergence).
  std::vector<std::vector<std::uint8_t>> outcomes(cells.size(),
                                                  std::vector<std::uint8_t>(reps, 0));

  const std::size_t total_tasks = cells.size() * reps;
  unsigned workers = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total_tasks));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1, std::memory_order_relaxed);
      if (task >= total_tasks) return;
      const std::size_t ci = task / reps;
      const std::size_t r = task % reps;
      RngStream rng(cfg.seed, (static_cast<std::uint64_t>(ci) << 32) | r);
      try {
        const bool reject =
            run_replication(cfg, cells[ci], scatters[ci], null_shapes[ci], theta0, n, rng);
        outcomes[ci][r] = reject ? 1 : 0;
      } catch (const ConvergenceError&) {
        outcomes[ci][r] = 2;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<ResultRow> rows;
  rows.reserve(cells.size());
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    std::size_t rejects = 0;
    std::size_t excluded = 0;
    for (const std::uint8_t o : outcomes[ci]) {
      if (o == 1) ++rejects;
      if (o == 2) ++excluded;
    }
    if (static_cast<double>(excluded) > 0.01 * static_cast<double>(reps)) {
      throw ConvergenceError(
          "more than 1% of replications failed to converge in cell " +
              method_name(cells[ci].method) + "/" + cells[ci].family.label + "/w=" +
              std::to_string(cells[ci].w),
          static_cast<double>(excluded) / static_cast<double>(reps));
    }
    const auto used = static_cast<double>(reps - excluded);
    const double freq = static_cast<double>(rejects) / used;
    ResultRow row;
    row.method = cells[ci].method;
    row.figure = cfg.figure;
    row.distribution = cells[ci].family.label;
    row.w = cells[ci].w;
    row.ell = cells[ci].ell;
    row.p = cfg.p;
    row.n = n;
    row.reps = reps;
    row.alpha = cfg.alpha;
    row.rejection_frequency = freq;
    row.standard_error = std::sqrt(freq * (1.0 - freq) / used);
    row.excluded = excluded;
    row.seed = cfg.seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string scenario_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "method,figure,distribution,w,ell,p,n,M,alpha,rejection_frequency,"
         "standard_error,excluded,seed\n";
  for (const ResultRow& r : rows) {
    out << method_name(r.method) << ',' << figure_name(r.figure) << ',' << r.distribution
        << ',' << r.w << ',' << format_double(r.ell) << ',' << r.p << ',' << r.n << ','
        << r.reps << ',' << format_double(r.alpha) << ','
        << format_double(r.rejection_frequency) << ',' << format_double(r.standard_error)
        << ',' << r.excluded << ',' << r.seed << '\n';
  }
  return out.str();
}

std::vector<TheoryComparison> compare_to_theory(const std::vector<ResultRow>& rows,
                                                double xi) {
  std::vector<TheoryComparison> out;
  out.reserve(rows.size());
  for (const ResultRow& row : rows) {
    PowerQuery q;
    q.p = row.p;
    q.alpha = row.alpha;
    q.xi = xi;
    q.tau_norm = row.ell;
    q.regime = row.w == 0 ? Regime::classical : Regime::weak;
    const double power = asymptotic_power(q);
    double se = row.standard_error;
    if (se == 0.0) {
      se = std::sqrt(power * (1.0 - power) / static_cast<double>(row.reps - row.excluded));
    }
    out.push_back({row, power, (row.rejection_frequency - power) / se});
  }
  return out;
}

}  // namespace weakpca

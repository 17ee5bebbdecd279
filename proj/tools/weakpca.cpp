#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "weakpca/csv.hpp"
#include "weakpca/distributions.hpp"
#include "weakpca/eigen_tests.hpp"
#include "weakpca/montecarlo.hpp"
#include "weakpca/power.hpp"

namespace {

using namespace weakpca;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitReject = 3;

// A direction is either a comma-separated list of numbers or the name of a
// file whose first line holds such a list.
Vector parse_direction(const std::string& spec) {
  auto try_parse = [](const std::string& text) -> std::optional<Vector> {
    Vector out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
          ++used;
        if (used != cell.size()) return std::nullopt;
        out.push_back(v);
      } catch (...) {
        return std::nullopt;
      }
    }
    if (out.empty()) return std::nullopt;
    return out;
  };

  if (auto v = try_parse(spec)) return *v;
  std::ifstream in(spec);
  if (!in) throw DomainError("'" + spec + "' is neither a number list nor a readable file");
  std::string line;
  if (!std::getline(in, line)) throw DomainError("'" + spec + "' is empty");
  if (auto v = try_parse(line)) return *v;
  throw DomainError("first line of '" + spec + "' is not a comma-separated number list");
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("WEAKPCA_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw DomainError("WEAKPCA_SEED is not an unsigned integer");
    }
  }
  return 0;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw DomainError("failed writing '" + path + "'");
}

int cmd_test(const std::string& data_path, const std::string& theta0_spec, double alpha,
             const std::string& method, int eigen_index, bool single_spike,
             const std::string& center_spec) {
  const Matrix data = read_csv_matrix(data_path);
  Vector theta0 = parse_direction(theta0_spec);
  if (theta0.size() != data.cols()) {
    throw DomainError("theta0 has dimension " + std::to_string(theta0.size()) +
                      " but the data has " + std::to_string(data.cols()) + " columns");
  }
  theta0 = require_unit(theta0, 1e-6);
  std::optional<Vector> center;
  if (!center_spec.empty()) center = parse_direction(center_spec);

  TestOutcome outcome;
  if (method == "sign") {
    outcome = sign_test(data, theta0, alpha, eigen_index, single_spike, center);
  } else if (method == "tyler") {
    outcome = tyler_lrt(data, theta0, alpha, eigen_index, center);
  } else if (method == "anderson") {
    outcome = anderson_lrt(data, theta0, alpha, eigen_index, center);
  } else {
    throw DomainError("unknown method '" + method + "'");
  }

  std::cout << "method=" << method_name(outcome.method) << " n=" << data.rows()
            << " p=" << data.cols() << " eigen-index=" << eigen_index
            << " alpha=" << format_double(alpha) << '\n';
  std::cout << "decision: " << (outcome.reject ? "reject" : "do not reject")
            << " H0 at level " << format_double(alpha) << '\n';
  std::cout << "statistic=" << format_double(outcome.statistic) << " df=" << outcome.df
            << " pvalue=" << format_double(outcome.p_value)
            << " reject=" << (outcome.reject ? 1 : 0) << '\n';
  return outcome.reject ? kExitReject : kExitOk;
}

int cmd_sample(const std::string& family, double nu, std::size_t p, std::size_t n,
               double spike, const std::string& theta0_spec, const std::string& scatter_path,
               std::uint64_t seed, const std::string& out_path) {
  SymMatrix scatter = [&]() -> SymMatrix {
    if (!scatter_path.empty()) {
      const Matrix m = read_csv_matrix(scatter_path);
      if (m.rows() != m.cols()) throw DomainError("scatter file must hold a square matrix");
      return SymMatrix(m);
    }
    Vector theta0(p, 0.0);
    theta0[0] = 1.0;
    if (!theta0_spec.empty()) theta0 = require_unit(parse_direction(theta0_spec), 1e-6);
    if (theta0.size() != p) throw DomainError("theta0 dimension does not match --p");
    if (spike == 0.0) return SymMatrix::identity(p);
    return SymMatrix(spike_power(p, theta0, spike, 1.0));
  }();

  EllipticalSpec spec = family == "gaussian" ? EllipticalSpec::gaussian(std::move(scatter))
                        : family == "t" ? EllipticalSpec::student(nu, std::move(scatter))
                                        : throw DomainError("unknown family '" + family + "'");
  RngStream rng(seed, 0);
  const Matrix data = sample_elliptical(spec, n, rng);
  write_csv_matrix(out_path, data);
  std::cerr << "wrote " << n << "x" << spec.dim() << " sample to " << out_path << '\n';
  return kExitOk;
}

int cmd_simulate(int figure, double scale, std::uint64_t seed, int jobs,
                 const std::string& out_path) {
  Figure fig;
  switch (figure) {
    case 1: fig = Figure::fig1; break;
    case 2: fig = Figure::fig2; break;
    case 3: fig = Figure::fig3; break;
    default: throw DomainError("--figure must be 1, 2 or 3");
  }
  ScenarioConfig cfg = figure_preset(fig, seed, scale);
  cfg.jobs = jobs;
  std::cerr << "running " << figure_name(fig) << " preset: p=" << cfg.p
            << " n=" << cfg.scaled_n() << " M=" << cfg.scaled_reps() << " seed=" << seed
            << '\n';
  const auto rows = run_scenario(cfg);
  write_text(out_path, scenario_csv(rows));
  return kExitOk;
}

int cmd_power(const std::string& regime_str, std::size_t p, double alpha, double xi,
              const std::vector<double>& ell_grid, const std::string& out_path) {
  const Regime regime = regime_from_name(regime_str);
  const auto curve = theoretical_curve(p, alpha, xi, regime, ell_grid);
  std::ostringstream out;
  out << "regime,p,xi,alpha,ell,ncp,power\n";
  for (const PowerPoint& pt : curve) {
    out << regime_name(regime) << ',' << p << ',' << format_double(xi) << ','
        << format_double(alpha) << ',' << format_double(pt.ell) << ','
        << format_double(pt.ncp) << ',' << format_double(pt.power) << '\n';
  }
  write_text(out_path, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sign tests for principal directions of elliptical data"};
  app.require_subcommand(1);

  // test
  std::string data_path, theta0_spec, method = "sign", center_spec;
  double alpha = 0.05;
  int eigen_index = 1;
  bool single_spike = false;
  auto* test_cmd = app.add_subcommand("test", "Test H0: theta_j = theta0 on a CSV dataset");
  test_cmd->add_option("--data", data_path, "CSV file, one observation per row")->required();
  test_cmd->add_option("--theta0", theta0_spec, "null direction: comma list or file")
      ->required();
  test_cmd->add_option("--alpha", alpha, "nominal level");
  test_cmd->add_option("--method", method, "sign|tyler|anderson");
  test_cmd->add_option("--eigen-index", eigen_index, "which eigenvector is tested (1-based)");
  test_cmd->add_flag("--single-spike", single_spike,
                     "use the single-spike null-shape estimate");
  test_cmd->add_option("--center", center_spec, "known location to subtract");

  // sample
  std::string family = "gaussian", sample_theta0, scatter_path, sample_out;
  double nu = 4.0, spike = 0.0;
  std::size_t sample_p = 6, sample_n = 1000;
  std::uint64_t sample_seed = 0;
  auto* sample_cmd = app.add_subcommand("sample", "Generate an elliptical sample as CSV");
  sample_cmd->add_option("--family", family, "gaussian|t");
  sample_cmd->add_option("--df", nu, "degrees of freedom for --family t");
  sample_cmd->add_option("--p", sample_p, "dimension");
  sample_cmd->add_option("--n", sample_n, "sample size");
  sample_cmd->add_option("--spike", spike, "spike strength delta*xi of the scatter");
  sample_cmd->add_option("--theta0", sample_theta0, "spike direction (default e1)");
  sample_cmd->add_option("--scatter", scatter_path, "CSV file with a full scatter matrix");
  sample_cmd->add_option("--seed", sample_seed, "RNG seed");
  sample_cmd->add_option("--out", sample_out, "output CSV path")->required();

  // simulate
  int figure = 2, jobs = 0;
  double scale = 1.0;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  auto* sim_cmd = app.add_subcommand("simulate", "Reproduce a figure preset, write CSV");
  sim_cmd->add_option("--figure", figure, "1, 2 or 3")->required();
  sim_cmd->add_option("--scale", scale, "multiplier on n and M");
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  sim_cmd->add_option("--jobs", jobs, "worker threads (default: hardware)");
  sim_cmd->add_option("--out", sim_out, "output CSV path (default stdout)");

  // power
  std::string regime_str = "i", power_out;
  std::size_t power_p = 6;
  double power_alpha = 0.05, power_xi = 1.0;
  std::vector<double> ell_grid = {0.0, 1.0, 2.0, 3.0, 4.0};
  auto* power_cmd = app.add_subcommand("power", "Theoretical asymptotic power curve CSV");
  power_cmd->add_option("--regime", regime_str, "i|ii|iii");
  power_cmd->add_option("--p", power_p, "dimension");
  power_cmd->add_option("--alpha", power_alpha, "nominal level");
  power_cmd->add_option("--xi", power_xi, "locality parameter");
  power_cmd->add_option("--ell-grid", ell_grid, "perturbation magnitudes")->delimiter(',');
  power_cmd->add_option("--out", power_out, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (test_cmd->parsed()) {
      return cmd_test(data_path, theta0_spec, alpha, method, eigen_index, single_spike,
                      center_spec);
    }
    if (sample_cmd->parsed()) {
      const std::uint64_t seed = sample_cmd->count("--seed") ? sample_seed : default_seed();
      return cmd_sample(family, nu, sample_p, sample_n, spike, sample_theta0, scatter_path,
                        seed, sample_out);
    }
    if (sim_cmd->parsed()) {
      const std::uint64_t seed = sim_cmd->count("--seed") ? sim_seed : default_seed();
      return cmd_simulate(figure, scale, seed, jobs, sim_out);
    }
    if (power_cmd->parsed()) {
      return cmd_power(regime_str, power_p, power_alpha, power_xi, ell_grid, power_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

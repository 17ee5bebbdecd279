#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "weakpca/distributions.hpp"
#include "weakpca/eigen_tests.hpp"
#include "weakpca/lecam.hpp"
#include "weakpca/montecarlo.hpp"
#include "weakpca/power.hpp"

namespace py = pybind11;
using namespace weakpca;

namespace {

Matrix matrix_from(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw DomainError("expected a 2-d array");
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  const auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = r(i, j);
  return m;
}

py::array_t<double> matrix_to(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      w(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
  return out;
}

ShapeMatrix shape_from(const py::array_t<double>& a) {
  return ShapeMatrix(SymMatrix(matrix_from(a)));
}

Regime regime_arg(const std::string& name) { return regime_from_name(name); }

py::dict outcome_dict(const TestOutcome& o) {
  py::dict d;
  d["statistic"] = o.statistic;
  d["df"] = o.df;
  d["p_value"] = o.p_value;
  d["reject"] = o.reject;
  d["method"] = method_name(o.method);
  return d;
}

std::optional<Vector> center_arg(const py::object& center) {
  if (center.is_none()) return std::nullopt;
  return center.cast<Vector>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sign tests for principal directions of elliptical data";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);

  m.def(
      "sign_test",
      [](const py::array_t<double>& data, const Vector& theta0, double alpha,
         int eigen_index, bool single_spike, const py::object& center) {
        return outcome_dict(sign_test(matrix_from(data), theta0, alpha, eigen_index,
                                      single_spike, center_arg(center)));
      },
      py::arg("data"), py::arg("theta0"), py::arg("alpha") = 0.05,
      py::arg("eigen_index") = 1, py::arg("single_spike") = false,
      py::arg("center") = py::none(),
      "Sign test of H0: the eigen_index-th principal direction equals theta0");

  m.def(
      "tyler_lrt",
      [](const py::array_t<double>& data, const Vector& theta0, double alpha,
         int eigen_index, const py::object& center) {
        return outcome_dict(
            tyler_lrt(matrix_from(data), theta0, alpha, eigen_index, center_arg(center)));
      },
      py::arg("data"), py::arg("theta0"), py::arg("alpha") = 0.05,
      py::arg("eigen_index") = 1, py::arg("center") = py::none());

  m.def(
      "anderson_lrt",
      [](const py::array_t<double>& data, const Vector& theta0, double alpha,
         int eigen_index, const py::object& center) {
        return outcome_dict(
            anderson_lrt(matrix_from(data), theta0, alpha, eigen_index, center_arg(center)));
      },
      py::arg("data"), py::arg("theta0"), py::arg("alpha") = 0.05,
      py::arg("eigen_index") = 1, py::arg("center") = py::none());

  m.def(
      "oracle_sign_test",
      [](const py::array_t<double>& signs, const py::array_t<double>& v0,
         const Vector& theta0, double alpha) {
        return outcome_dict(
            oracle_sign_test(matrix_from(signs), shape_from(v0), theta0, alpha));
      },
      py::arg("signs"), py::arg("v0"), py::arg("theta0"), py::arg("alpha") = 0.05);

  m.def(
      "tyler_shape",
      [](const py::array_t<double>& signs) { return matrix_to(tyler_shape(matrix_from(signs)).mat()); },
      py::arg("signs"), "Tyler's M-estimator of shape (input rows must be unit vectors)");

  m.def(
      "spatial_signs",
      [](const py::array_t<double>& data) { return matrix_to(spatial_signs(matrix_from(data))); },
      py::arg("data"));

  m.def(
      "sample_elliptical",
      [](const std::string& family, double nu, const py::array_t<double>& scatter,
         std::size_t n, std::uint64_t seed, std::uint64_t stream) {
        const SymMatrix s(matrix_from(scatter));
        EllipticalSpec spec = family == "gaussian"
                                  ? EllipticalSpec::gaussian(s)
                                  : EllipticalSpec::student(nu, s);
        RngStream rng(seed, stream);
        return matrix_to(sample_elliptical(spec, n, rng));
      },
      py::arg("family"), py::arg("nu"), py::arg("scatter"), py::arg("n"),
      py::arg("seed") = 0, py::arg("stream") = 0);

  m.def(
      "sample_angular_gaussian",
      [](const py::array_t<double>& shape, std::size_t n, std::uint64_t seed,
         std::uint64_t stream) {
        RngStream rng(seed, stream);
        return matrix_to(sample_angular_gaussian(shape_from(shape), n, rng));
      },
      py::arg("shape"), py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0);

  m.def("chi2_cdf", &chi2_cdf, py::arg("x"), py::arg("df"));
  m.def("chi2_quantile", &chi2_quantile, py::arg("q"), py::arg("df"));
  m.def("noncentral_chi2_cdf", &noncentral_chi2_cdf, py::arg("x"), py::arg("df"),
        py::arg("ncp"));

  m.def(
      "noncentrality",
      [](std::size_t p, double alpha, double xi, double tau_norm, const std::string& regime) {
        return noncentrality({p, alpha, xi, tau_norm, regime_arg(regime)});
      },
      py::arg("p"), py::arg("alpha"), py::arg("xi"), py::arg("tau_norm"), py::arg("regime"));

  m.def(
      "asymptotic_power",
      [](std::size_t p, double alpha, double xi, double tau_norm, const std::string& regime) {
        return asymptotic_power({p, alpha, xi, tau_norm, regime_arg(regime)});
      },
      py::arg("p"), py::arg("alpha"), py::arg("xi"), py::arg("tau_norm"), py::arg("regime"));

  m.def(
      "theoretical_curve",
      [](std::size_t p, double alpha, double xi, const std::string& regime,
         const std::vector<double>& ell_grid) {
        py::list out;
        for (const PowerPoint& pt : theoretical_curve(p, alpha, xi, regime_arg(regime), ell_grid)) {
          py::dict d;
          d["ell"] = pt.ell;
          d["ncp"] = pt.ncp;
          d["power"] = pt.power;
          out.append(d);
        }
        return out;
      },
      py::arg("p"), py::arg("alpha"), py::arg("xi"), py::arg("regime"), py::arg("ell_grid"));

  m.def(
      "simulate",
      [](int figure, double scale, std::uint64_t seed, int jobs) {
        Figure f = figure == 1 ? Figure::fig1 : figure == 2 ? Figure::fig2 : Figure::fig3;
        if (figure < 1 || figure > 3) throw DomainError("figure must be 1, 2 or 3");
        ScenarioConfig cfg = figure_preset(f, seed, scale);
        cfg.jobs = jobs;
        py::list out;
        for (const ResultRow& r : run_scenario(cfg)) {
          py::dict d;
          d["method"] = method_name(r.method);
          d["figure"] = figure_name(r.figure);
          d["distribution"] = r.distribution;
          d["w"] = r.w;
          d["ell"] = r.ell;
          d["p"] = r.p;
          d["n"] = r.n;
          d["M"] = r.reps;
          d["alpha"] = r.alpha;
          d["rejection_frequency"] = r.rejection_frequency;
          d["standard_error"] = r.standard_error;
          d["excluded"] = r.excluded;
          d["seed"] = r.seed;
          out.append(d);
        }
        return out;
      },
      py::arg("figure"), py::arg("scale") = 1.0, py::arg("seed") = 0, py::arg("jobs") = 0,
      "Run a figure preset and return one dict per experiment cell");

  m.attr("__version__") = "0.1.0";
}

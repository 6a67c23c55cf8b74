#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tcm/analysis.hpp"
#include "tcm/closed_form.hpp"
#include "tcm/entanglement.hpp"
#include "tcm/errors.hpp"
#include "tcm/fock_field.hpp"
#include "tcm/inversion.hpp"
#include "tcm/oracle.hpp"
#include "tcm/reduced_density.hpp"

namespace py = pybind11;
using namespace tcm;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict series_dict(const TimeSeries& s) {
  std::vector<double> gt, w, c, e, d;
  for (const auto& r : s.records) {
    gt.push_back(r.gt);
    w.push_back(r.W);
    c.push_back(r.concurrence);
    e.push_back(r.eof);
    d.push_back(r.norm_deficit);
  }
  py::dict out;
  out["gt"] = to_array(gt);
  out["W"] = to_array(w);
  out["concurrence"] = to_array(c);
  out["eof"] = to_array(e);
  out["norm_deficit"] = to_array(d);
  return out;
}

py::list intervals(const std::vector<Interval>& v) {
  py::list out;
  for (const auto& i : v) out.append(py::make_tuple(i.start, i.end));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-atom multimode Tavis-Cummings simulator";

  auto config_error = py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);
  py::register_exception<UnsupportedConfiguration>(m, "UnsupportedConfiguration", config_error.ptr());
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::enum_<Convention>(m, "Convention")
      .value("paper_literal", Convention::paper_literal)
      .value("consistent", Convention::consistent);
  py::enum_<FormulaSet>(m, "FormulaSet")
      .value("automatic", FormulaSet::automatic)
      .value("single_mode", FormulaSet::single_mode)
      .value("multimode", FormulaSet::multimode);
  py::enum_<Channel>(m, "Channel")
      .value("W", Channel::W)
      .value("concurrence", Channel::concurrence)
      .value("eof", Channel::eof);

  py::class_<TruncationWindow>(m, "TruncationWindow")
      .def(py::init<std::size_t, std::size_t>(), py::arg("n_min"), py::arg("n_max"))
      .def_readonly("n_min", &TruncationWindow::n_min)
      .def_readonly("n_max", &TruncationWindow::n_max)
      .def("__repr__", [](const TruncationWindow& w) {
        return "TruncationWindow(" + std::to_string(w.n_min) + ", " + std::to_string(w.n_max) + ")";
      });

  py::class_<FieldDistribution>(m, "Field")
      .def_static(
          "coherent",
          [](double mean, std::optional<std::pair<std::size_t, std::size_t>> window, double sigma_width,
             double coverage_epsilon) {
            if (window) return FieldDistribution::coherent(mean, TruncationWindow{window->first, window->second});
            return FieldDistribution::coherent(mean, WindowOptions{sigma_width, coverage_epsilon});
          },
          py::arg("mean"), py::arg("window") = py::none(), py::arg("sigma_width") = 6.0,
          py::arg("coverage_epsilon") = 1e-12)
      .def_static("fock", &FieldDistribution::fock, py::arg("n0"))
      .def_static("custom", &FieldDistribution::custom, py::arg("amplitudes"))
      .def_static("load", [](const std::string& path) { return load_custom_distribution(path); }, py::arg("path"))
      .def_property_readonly("mean", &FieldDistribution::mean)
      .def_property_readonly("window", &FieldDistribution::window)
      .def_property_readonly("warnings", &FieldDistribution::warnings)
      .def_property_readonly("amplitudes",
                             [](const FieldDistribution& f) {
                               auto a = f.amplitudes();
                               return std::vector<Complex>(a.begin(), a.end());
                             })
      .def("norm", &FieldDistribution::norm);

  m.def("uniform_grid", [](double gt_max, std::size_t steps) { return to_array(uniform_grid(gt_max, steps)); },
        py::arg("gt_max"), py::arg("steps"));

  m.def(
      "simulate",
      [](std::vector<FieldDistribution> fields, std::vector<double> gts, Convention convention, FormulaSet formulas) {
        TimeSeries s;
        {
          py::gil_scoped_release release;
          s = simulate({std::move(fields), convention, formulas}, gts);
        }
        return series_dict(s);
      },
      py::arg("fields"), py::arg("gts"), py::arg("convention") = Convention::consistent,
      py::arg("formulas") = FormulaSet::automatic,
      "Closed-form time series. Returns a dict of arrays: gt, W, concurrence, eof, norm_deficit.");

  m.def(
      "simulate_exact",
      [](const std::vector<FieldDistribution>& fields, std::vector<double> gts) {
        TimeSeries s;
        {
          py::gil_scoped_release release;
          s = simulate_exact(fields, gts);
        }
        return series_dict(s);
      },
      py::arg("fields"), py::arg("gts"), "Time series from exact sector diagonalization.");

  m.def(
      "reduced_density",
      [](const std::vector<FieldDistribution>& fields, double gt, Convention convention, FormulaSet formulas) {
        const AmplitudeSet set = ClosedFormEvolution(fields, convention, formulas).at(gt);
        return Eigen::Matrix4cd(partial_trace(set).rho);
      },
      py::arg("fields"), py::arg("gt"), py::arg("convention") = Convention::consistent,
      py::arg("formulas") = FormulaSet::automatic, "Normalized two-atom density matrix in the aa, ab, ba, bb basis.");

  m.def(
      "reduced_density_exact",
      [](const std::vector<FieldDistribution>& fields, double gt) {
        return Eigen::Matrix4cd(rho_atom_exact(ExactEvolution(fields).evolve(gt)).rho);
      },
      py::arg("fields"), py::arg("gt"));

  m.def(
      "concurrence", [](const Eigen::Matrix4cd& rho) { return concurrence(make_density(rho)).value; },
      py::arg("rho"), "Wootters concurrence of a two-qubit density matrix (normalized first).");
  m.def("eof", &eof, py::arg("concurrence"), "Entanglement of formation from concurrence.");

  m.def(
      "collapse_windows",
      [](std::vector<double> gt, std::vector<double> values, double threshold) {
        return intervals(collapse_windows(gt, values, threshold));
      },
      py::arg("gt"), py::arg("values"), py::arg("threshold") = 0.02);

  m.def(
      "oscillation_rate",
      [](std::vector<double> gt, std::vector<double> values, std::pair<double, double> window) {
        return oscillation_rate(gt, values, Interval{window.first, window.second});
      },
      py::arg("gt"), py::arg("values"), py::arg("window"));

  m.def(
      "revival_peaks",
      [](std::vector<double> gt, std::vector<double> values, std::size_t max_j, double mean) {
        const RevivalReport r = detect_revival_peaks(gt, values, max_j, mean);
        py::dict out;
        out["peak_times"] = r.peak_times;
        out["predicted"] = r.predicted;
        out["relative_errors"] = r.relative_errors;
        out["note"] = r.note;
        return out;
      },
      py::arg("gt"), py::arg("values"), py::arg("max_j"), py::arg("mean"));

  m.def(
      "mode_sweep",
      [](std::vector<double> gts, double mean, std::vector<std::size_t> modes, Convention convention) {
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = mode_sweep(gts, mean, modes, convention);
        }
        py::list out;
        for (const auto& r : rows) out.append(py::make_tuple(r.modes, r.gt, r.concurrence, r.eof));
        return out;
      },
      py::arg("gts"), py::arg("mean"), py::arg("modes"), py::arg("convention") = Convention::paper_literal,
      "Rows of (modes, gt, concurrence, eof).");
}

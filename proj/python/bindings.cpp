#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "spinquant/engine.hpp"
#include "spinquant/rates.hpp"
#include "spinquant/rng.hpp"
#include "spinquant/run.hpp"
#include "spinquant/spin.hpp"
#include "spinquant/stats.hpp"
#include "spinquant/version.hpp"

namespace py = pybind11;
using namespace spinquant;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Monte Carlo simulation of spin reorientation in a magnetic field: "
      "coherent precession builds a time-dependent density of states and "
      "inelastic scattering collapses an isotropic ensemble onto the two "
      "field-axis eigendirections.";
  m.attr("__version__") = version_string;

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<SpinDirection>(m, "SpinDirection")
      .def(py::init<double, double, double>(), py::arg("theta"), py::arg("phi") = 0.0,
           py::arg("tau_since_scatter") = 0.0)
      .def_readonly("theta", &SpinDirection::theta)
      .def_readonly("phi", &SpinDirection::phi)
      .def_readonly("tau_since_scatter", &SpinDirection::tau_since_scatter)
      .def("__repr__", [](const SpinDirection& d) {
        std::ostringstream s;
        s << "SpinDirection(theta=" << d.theta << ", phi=" << d.phi
          << ", tau_since_scatter=" << d.tau_since_scatter << ")";
        return s.str();
      });

  py::class_<Spinor>(m, "Spinor")
      .def_readonly("c_plus", &Spinor::c_plus)
      .def_readonly("c_minus", &Spinor::c_minus)
      .def("norm_squared", &Spinor::norm_squared);

  m.def("make_spinor", &make_spinor, py::arg("dir"));
  m.def("precess", &precess, py::arg("dir"), py::arg("dtau"));
  m.def("energy", &energy, py::arg("theta"));
  m.def("coherence_term", &coherence_term, py::arg("dir"));

  m.def("broadened_delta", &broadened_delta, py::arg("eps"), py::arg("tau"));
  m.def("dos_rho_bar", &dos_rho_bar, py::arg("theta"), py::arg("tau"));
  m.def("transition_dos", &transition_dos, py::arg("theta_from"),
        py::arg("theta_to"), py::arg("tau"));
  m.def("differential_rate", &differential_rate, py::arg("theta_from"),
        py::arg("theta_to"), py::arg("tau"), py::arg("tau_c"));
  m.def("total_rate", &total_rate, py::arg("theta_from"), py::arg("tau"),
        py::arg("tau_c"), py::arg("n_theta") = 2048);

  py::class_<RateTable>(m, "RateTable")
      .def_readonly("tau_c", &RateTable::tau_c)
      .def_readonly("theta_grid", &RateTable::theta_grid)
      .def_readonly("tau_grid", &RateTable::tau_grid)
      .def_property_readonly("tau_max", &RateTable::tau_max)
      .def("rate_at", &RateTable::rate_at, py::arg("theta"), py::arg("tau"))
      .def("cumulative_at", &RateTable::cumulative_at, py::arg("theta"),
           py::arg("tau"));

  m.def("build_rate_table", &build_rate_table, py::arg("tau_c"),
        py::arg("n_theta") = 2048, py::arg("n_tau") = 4096,
        py::arg("tau_max") = 0.0,
        py::call_guard<py::gil_scoped_release>());

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t, std::uint64_t, std::uint64_t>(),
           py::arg("master_seed"), py::arg("path_index") = 0,
           py::arg("draw_counter") = 0)
      .def_readonly("master_seed", &RngStream::master_seed)
      .def_readonly("path_index", &RngStream::path_index)
      .def_readonly("draw_counter", &RngStream::draw_counter)
      .def("next_u64", &RngStream::next_u64)
      .def("uniform01", &RngStream::uniform01);

  py::class_<PathEvent>(m, "PathEvent")
      .def_readonly("tau_lab", &PathEvent::tau_lab)
      .def_readonly("dir_before", &PathEvent::dir_before)
      .def_readonly("dir_after", &PathEvent::dir_after);

  py::class_<Path>(m, "Path")
      .def_readonly("initial", &Path::initial)
      .def_readonly("events", &Path::events)
      .def_readonly("tau_end", &Path::tau_end);

  m.def("sample_initial", &sample_initial, py::arg("rng"));
  m.def("sample_flight_time", &sample_flight_time, py::arg("dir"),
        py::arg("table"), py::arg("rng"));
  m.def("sample_final_direction", &sample_final_direction, py::arg("dir_from"),
        py::arg("tau_f"), py::arg("table"), py::arg("rng"));
  m.def("simulate_path",
        py::overload_cast<const SpinDirection&, double, const RateTable&, RngStream&>(
            &simulate_path),
        py::arg("initial"), py::arg("tau_end"), py::arg("table"), py::arg("rng"));
  m.def("simulate_path",
        py::overload_cast<double, const RateTable&, RngStream&>(&simulate_path),
        py::arg("tau_end"), py::arg("table"), py::arg("rng"));
  m.def("direction_at", &direction_at, py::arg("path"), py::arg("tau_lab"));
  m.def("run_paths", &run_paths, py::arg("n_paths"), py::arg("tau_end"),
        py::arg("table"), py::arg("master_seed"), py::arg("n_threads") = 0,
        py::call_guard<py::gil_scoped_release>());

  py::class_<EnsembleSnapshot>(m, "EnsembleSnapshot")
      .def_readonly("tau_lab", &EnsembleSnapshot::tau_lab)
      .def_readonly("theta_histogram", &EnsembleSnapshot::theta_histogram)
      .def_readonly("n_paths", &EnsembleSnapshot::n_paths)
      .def_readonly("rho11", &EnsembleSnapshot::rho11)
      .def_readonly("rho22", &EnsembleSnapshot::rho22)
      .def_readonly("rho12", &EnsembleSnapshot::rho12)
      .def_readonly("coherence_mag", &EnsembleSnapshot::coherence_mag)
      .def_property_readonly("rho21", &EnsembleSnapshot::rho21)
      .def_property_readonly("trace", &EnsembleSnapshot::trace);

  py::class_<CoherencePoint>(m, "CoherencePoint")
      .def_readonly("tau_lab", &CoherencePoint::tau_lab)
      .def_readonly("coherence_mag", &CoherencePoint::coherence_mag)
      .def_readonly("complex_avg", &CoherencePoint::complex_avg);

  m.def(
      "snapshot",
      [](const std::vector<Path>& paths, double tau_lab, int n_bins) {
        return snapshot(paths, tau_lab, n_bins);
      },
      py::arg("paths"), py::arg("tau_lab"), py::arg("n_bins") = 50);
  m.def(
      "coherence_series",
      [](const std::vector<Path>& paths, const std::vector<double>& times) {
        return coherence_series(paths, times);
      },
      py::arg("paths"), py::arg("times"));
  m.def("mixedness_check", &mixedness_check, py::arg("snapshot"));

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("tau_c_over_period", &RunConfig::tau_c_over_period)
      .def_readwrite("n_paths", &RunConfig::n_paths)
      .def_readwrite("tau_end", &RunConfig::tau_end)
      .def_readwrite("snapshot_times", &RunConfig::snapshot_times)
      .def_readwrite("n_theta_bins", &RunConfig::n_theta_bins)
      .def_readwrite("n_theta_grid", &RunConfig::n_theta_grid)
      .def_readwrite("n_tau_grid", &RunConfig::n_tau_grid)
      .def_readwrite("master_seed", &RunConfig::master_seed)
      .def_readwrite("output_dir", &RunConfig::output_dir)
      .def_readwrite("threads", &RunConfig::threads)
      .def_readwrite("tau_c_sweep", &RunConfig::tau_c_sweep)
      .def_property_readonly("tau_c", &RunConfig::tau_c)
      .def_property_readonly("horizon_tau", &RunConfig::horizon_tau);

  py::class_<RunManifest>(m, "RunManifest")
      .def_readonly("n_events_total", &RunManifest::n_events_total)
      .def_readonly("mean_events_per_path", &RunManifest::mean_events_per_path)
      .def_readonly("final_coherence_mag", &RunManifest::final_coherence_mag)
      .def_readonly("final_mixedness", &RunManifest::final_mixedness)
      .def_readonly("wall_time_seconds", &RunManifest::wall_time_seconds)
      .def_readonly("artifacts", &RunManifest::artifacts);

  m.def("validate_config", &validate_config, py::arg("text"));
  m.def("load_config_file", &load_config_file, py::arg("file"));
  m.def("run_experiment", &run_experiment, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_sweep", &run_sweep, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
}

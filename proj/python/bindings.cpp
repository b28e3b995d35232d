#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>
#include <pybind11/pybind11.h>

#include <map>
#include <string>

#include "qthermo/errors.hpp"
#include "qthermo/metrics.hpp"
#include "qthermo/sweep.hpp"

namespace py = pybind11;
using namespace qthermo;

namespace {

HermitianOperator herm(const ComplexMatrix& m) { return HermitianOperator(m); }
DensityMatrix state(const ComplexMatrix& m) { return DensityMatrix(m); }

PauliAxis axis_from(const std::string& which) {
  if (which == "x" || which == "X") return PauliAxis::X;
  if (which == "y" || which == "Y") return PauliAxis::Y;
  if (which == "z" || which == "Z") return PauliAxis::Z;
  throw InvalidInput("pauli: expected 'x', 'y' or 'z', got '" + which + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Driven-qubit thermodynamics: Gibbs states, time-ordered "
            "propagators, entropy production and its bounds";

  py::register_exception<ConvergenceError>(m, "ConvergenceError",
                                           PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("pauli", [](const std::string& which) {
    return pauli(axis_from(which)).matrix();
  });
  m.def("spectral_decompose", [](const ComplexMatrix& h) {
    const auto s = spectral_decompose(herm(h));
    return py::make_tuple(s.eigenvalues, s.eigenvectors);
  }, "Ascending eigenvalues and column eigenvectors of a Hermitian matrix.");

  m.def("partition_function", [](const ComplexMatrix& h, double beta) {
    return partition_function(herm(h), ThermalSpec(beta));
  }, py::arg("h"), py::arg("beta"));
  m.def("gibbs_state", [](const ComplexMatrix& h, double beta) {
    return gibbs_state(herm(h), ThermalSpec(beta)).matrix();
  }, py::arg("h"), py::arg("beta"));
  m.def("free_energy_difference",
        [](const ComplexMatrix& h_i, const ComplexMatrix& h_f, double beta) {
          return free_energy_difference(herm(h_i), herm(h_f), ThermalSpec(beta));
        }, py::arg("h_i"), py::arg("h_f"), py::arg("beta"));
  m.def("effective_temperature", [](double p0, double p1, double nu) {
    return effective_temperature(p0, p1, nu).beta();
  }, py::arg("p0"), py::arg("p1"), py::arg("nu"), "Returns beta in 1/Hz.");
  m.def("dephase", [](const ComplexMatrix& rho, const ComplexMatrix& h) {
    return dephase(state(rho), spectral_decompose(herm(h))).matrix();
  }, py::arg("rho"), py::arg("basis_hamiltonian"),
     "Dephases rho in the eigenbasis of basis_hamiltonian.");

  py::class_<DriveProtocol>(m, "DriveProtocol")
      .def(py::init([](double nu_i, double nu_f, double tau,
                       std::size_t slices) {
             DriveProtocol p{nu_i, nu_f, tau, slices};
             p.validate();
             return p;
           }),
           py::arg("nu_i"), py::arg("nu_f"), py::arg("tau"),
           py::arg("slices") = kDefaultSlices)
      .def_readwrite("nu_i", &DriveProtocol::nu_i)
      .def_readwrite("nu_f", &DriveProtocol::nu_f)
      .def_readwrite("tau", &DriveProtocol::tau)
      .def_readwrite("slices", &DriveProtocol::slices)
      .def("__repr__", [](const DriveProtocol& p) {
        return "DriveProtocol(nu_i=" + std::to_string(p.nu_i) +
               ", nu_f=" + std::to_string(p.nu_f) +
               ", tau=" + std::to_string(p.tau) +
               ", slices=" + std::to_string(p.slices) + ")";
      });

  m.def("drive_hamiltonian", [](double t, const DriveProtocol& p) {
    return drive_hamiltonian(t, p).matrix();
  }, py::arg("t"), py::arg("protocol"));
  m.def("propagator", [](const DriveProtocol& p, double tolerance) {
    return propagator(p, tolerance).matrix();
  }, py::arg("protocol"), py::arg("tolerance") = kDefaultPropagatorTol);
  m.def("evolve", [](const ComplexMatrix& rho, const ComplexMatrix& u) {
    return evolve(state(rho), UnitaryOperator(u)).matrix();
  }, py::arg("rho"), py::arg("u"));

  m.def("von_neumann_entropy", [](const ComplexMatrix& rho) {
    return von_neumann_entropy(state(rho));
  });
  m.def("relative_entropy",
        [](const ComplexMatrix& rho, const ComplexMatrix& sigma) {
          return relative_entropy(state(rho), state(sigma));
        });
  m.def("coherence", [](const ComplexMatrix& rho, const ComplexMatrix& h) {
    return coherence(state(rho), spectral_decompose(herm(h)));
  }, py::arg("rho"), py::arg("basis_hamiltonian"));
  m.def("average_work",
        [](const ComplexMatrix& rho_i, const ComplexMatrix& h_i,
           const ComplexMatrix& rho_tau, const ComplexMatrix& h_f) {
          return average_work(state(rho_i), herm(h_i), state(rho_tau),
                              herm(h_f));
        });
  m.def("irreversible_entropy",
        [](const ComplexMatrix& rho_i, const ComplexMatrix& h_i,
           const ComplexMatrix& rho_tau, const ComplexMatrix& h_f,
           double beta) {
          const auto s = irreversible_entropy(state(rho_i), herm(h_i),
                                              state(rho_tau), herm(h_f),
                                              ThermalSpec(beta));
          return py::make_tuple(s.work_route, s.relent_route);
        }, "Returns (work_route, relative_entropy_route).");
  m.def("entropy_decomposition",
        [](const ComplexMatrix& rho_tau, const ComplexMatrix& h_f,
           double beta) {
          const auto d = entropy_decomposition(state(rho_tau), herm(h_f),
                                               ThermalSpec(beta));
          return py::make_tuple(d.coherence_term, d.population_term);
        }, "Returns (coherence_term, population_term).");
  m.def("uhlmann_fidelity", [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return uhlmann_fidelity(state(a), state(b));
  });
  m.def("bures_length", [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return bures_length(state(a), state(b));
  });
  m.def("clausius_bound", [](double s_irr, double length) {
    const auto b = clausius_bound(s_irr, length);
    return py::make_tuple(b.bound_value, b.satisfied, b.margin);
  }, "Returns (bound_value, satisfied, margin).");
  m.def("wootters_length",
        [](const std::vector<double>& p, const std::vector<double>& q) {
          return wootters_length(p, q);
        });
  m.def("tpm_work_distribution",
        [](const ComplexMatrix& rho_i, const ComplexMatrix& h_i,
           const ComplexMatrix& h_f, const ComplexMatrix& u) {
          const auto dist = tpm_work_distribution(state(rho_i), herm(h_i),
                                                  herm(h_f), UnitaryOperator(u));
          std::vector<std::pair<double, double>> out;
          for (const auto& o : dist.outcomes)
            out.emplace_back(o.work, o.probability);
          return out;
        }, "List of (work_hz, probability), ascending in work.");
  m.def("overlap_fidelity", [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return overlap_fidelity(state(a), state(b));
  });

  py::class_<ThermoRecord>(m, "ThermoRecord")
      .def_readonly("avg_work", &ThermoRecord::avg_work)
      .def_readonly("delta_f", &ThermoRecord::delta_f)
      .def_readonly("s_irr_work_route", &ThermoRecord::s_irr_work_route)
      .def_readonly("s_irr_relent_route", &ThermoRecord::s_irr_relent_route)
      .def_readonly("coherence_term", &ThermoRecord::coherence_term)
      .def_readonly("population_term", &ThermoRecord::population_term)
      .def_readonly("bures_length", &ThermoRecord::bures_length)
      .def_readonly("bound_value", &ThermoRecord::bound_value)
      .def_readonly("jarzynski_lhs", &ThermoRecord::jarzynski_lhs)
      .def_readonly("jarzynski_rhs", &ThermoRecord::jarzynski_rhs)
      .def_readonly("fidelity", &ThermoRecord::fidelity)
      .def_readonly("tpm_mean_work", &ThermoRecord::tpm_mean_work)
      .def_readonly("slices", &ThermoRecord::slices);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("nu_f", &SweepRow::nu_f)
      .def_readonly("tau", &SweepRow::tau)
      .def_readonly("record", &SweepRow::record);

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("temperature_hz", &SweepConfig::temperature_hz)
      .def_readwrite("nu_i", &SweepConfig::nu_i)
      .def_readwrite("nu_f_list", &SweepConfig::nu_f_list)
      .def_readwrite("tau_start", &SweepConfig::tau_start)
      .def_readwrite("tau_end", &SweepConfig::tau_end)
      .def_readwrite("tau_steps", &SweepConfig::tau_steps)
      .def_readwrite("slices", &SweepConfig::slices)
      .def_readwrite("tolerance", &SweepConfig::tolerance)
      .def_readwrite("output_path", &SweepConfig::output_path)
      .def_readwrite("plot_path", &SweepConfig::plot_path)
      .def("tau_grid", &SweepConfig::tau_grid)
      .def("validate", &SweepConfig::validate);

  m.def("parse_config",
        [](const std::string& text,
           const std::map<std::string, std::string>& overrides) {
          std::vector<ConfigOverride> ov(overrides.begin(), overrides.end());
          return parse_config(text, ov);
        },
        py::arg("text") = "",
        py::arg("overrides") = std::map<std::string, std::string>{});
  m.def("analyze_protocol",
        [](const DriveProtocol& p, double beta, double tolerance) {
          return analyze_protocol(p, ThermalSpec(beta), tolerance);
        },
        py::arg("protocol"), py::arg("beta"),
        py::arg("tolerance") = kDefaultPropagatorTol);
  m.def("check_invariants", &check_invariants);
  m.def("run_sweep", &run_sweep, py::arg("config"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("emit_csv", &emit_csv, py::arg("rows"), py::arg("path"));
  m.def("emit_svg_plot", &emit_svg_plot, py::arg("rows"), py::arg("path"));
}

// Python bindings for the condensate entropy toolkit.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "becent/entropy.hpp"
#include "becent/gpe.hpp"
#include "becent/momentum.hpp"
#include "becent/pipeline.hpp"
#include "becent/radial.hpp"
#include "becent/sweep.hpp"

namespace py = pybind11;
using namespace becent;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gross-Pitaevskii ground states, Shannon entropies, and "
              "entropic-uncertainty analysis for trapped condensates";

    m.attr("GAUSSIAN_ENTROPY_3D") = gaussian_entropy_3d;
    m.attr("ENTROPY_SUM_BOUND") = entropy_sum_bound;

    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<SweepError>(m, "SweepError", PyExc_RuntimeError);
    py::register_exception<IngestError>(m, "IngestError", PyExc_ValueError);

    py::class_<RadialGrid>(m, "RadialGrid")
        .def(py::init<double, std::size_t>(), py::arg("r_max"), py::arg("n_points"))
        .def_property_readonly("r_max", &RadialGrid::r_max)
        .def_property_readonly("spacing", &RadialGrid::spacing)
        .def_property_readonly("n_points", &RadialGrid::n_points)
        .def_property_readonly("nodes", [](const RadialGrid& g) { return g.nodes(); });

    py::class_<MomentumGrid>(m, "MomentumGrid")
        .def(py::init<double, std::size_t>(), py::arg("k_max"), py::arg("n_points"))
        .def_static("conjugate", &MomentumGrid::conjugate, py::arg("source"))
        .def_property_readonly("k_max", &MomentumGrid::k_max)
        .def_property_readonly("spacing", &MomentumGrid::spacing)
        .def_property_readonly("n_points", &MomentumGrid::n_points)
        .def_property_readonly("nodes", [](const MomentumGrid& g) { return g.nodes(); });

    py::class_<RadialFunction>(m, "RadialFunction")
        .def(py::init<RadialGrid, std::vector<double>>(), py::arg("grid"),
             py::arg("values"))
        .def_readonly("grid", &RadialFunction::grid)
        .def_readonly("values", &RadialFunction::values);

    py::class_<MomentumFunction>(m, "MomentumFunction")
        .def(py::init<MomentumGrid, std::vector<double>>(), py::arg("grid"),
             py::arg("values"))
        .def_readonly("grid", &MomentumFunction::grid)
        .def_readonly("values", &MomentumFunction::values);

    m.def("integrate_radial", &integrate_radial, py::arg("f"));
    m.def("second_derivative", &second_derivative, py::arg("f"));

    py::class_<TrapSpec>(m, "TrapSpec")
        .def(py::init<long, double, double>(), py::arg("n_particles"),
             py::arg("scattering_length_angstrom"), py::arg("trap_length_angstrom"))
        .def_static("rb87", &TrapSpec::rb87, py::arg("n_particles"))
        .def_readonly("n_particles", &TrapSpec::n_particles)
        .def_readonly("scattering_length_angstrom", &TrapSpec::scattering_length_angstrom)
        .def_readonly("trap_length_angstrom", &TrapSpec::trap_length_angstrom)
        .def_readonly("coupling", &TrapSpec::coupling);

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("tol", &SolverOptions::tol)
        .def_readwrite("residual_tol", &SolverOptions::residual_tol)
        .def_readwrite("max_iterations", &SolverOptions::max_iterations)
        .def_readwrite("initial_time_step", &SolverOptions::initial_time_step)
        .def_readwrite("max_time_step", &SolverOptions::max_time_step)
        .def_readwrite("record_energy_every", &SolverOptions::record_energy_every);

    py::class_<CondensateState>(m, "CondensateState")
        .def_readonly("psi", &CondensateState::psi)
        .def_readonly("chemical_potential", &CondensateState::chemical_potential)
        .def_readonly("kinetic_energy", &CondensateState::kinetic_energy)
        .def_readonly("trap_energy", &CondensateState::trap_energy)
        .def_readonly("interaction_energy", &CondensateState::interaction_energy)
        .def_readonly("iterations", &CondensateState::iterations)
        .def_readonly("residual", &CondensateState::residual)
        .def_readonly("peak_density_a3", &CondensateState::peak_density_a3)
        .def_readonly("energy_trace", &CondensateState::energy_trace)
        .def("total_energy", &CondensateState::total_energy);

    m.def("thomas_fermi_mu", &thomas_fermi_mu, py::arg("spec"));
    m.def("default_grid", &default_grid, py::arg("spec"), py::arg("h_target") = 0.005);
    m.def(
        "solve_ground_state",
        [](const TrapSpec& spec, const RadialGrid& grid, const SolverOptions& opt) {
            return solve_ground_state(spec, grid, opt);
        },
        py::arg("spec"), py::arg("grid"), py::arg("options") = SolverOptions{},
        py::call_guard<py::gil_scoped_release>());

    py::class_<DensityPair>(m, "DensityPair")
        .def_readonly("rho", &DensityPair::rho)
        .def_readonly("nk", &DensityPair::nk)
        .def_readonly("nk_norm_defect", &DensityPair::nk_norm_defect);

    m.def("to_momentum",
          py::overload_cast<const RadialFunction&, const MomentumGrid&>(&to_momentum),
          py::arg("psi"), py::arg("kgrid"));
    m.def("to_momentum", py::overload_cast<const RadialFunction&>(&to_momentum),
          py::arg("psi"));

    m.def("shannon_entropy",
          py::overload_cast<const RadialFunction&>(&shannon_entropy), py::arg("density"));
    m.def("shannon_entropy",
          py::overload_cast<const MomentumFunction&>(&shannon_entropy),
          py::arg("density"));

    py::class_<Moments>(m, "Moments")
        .def_readonly("kinetic", &Moments::kinetic)
        .def_readonly("mean_square_radius", &Moments::mean_square_radius)
        .def_readonly("tail_warning", &Moments::tail_warning);
    m.def("moments", &moments, py::arg("pair"));

    py::class_<EurBounds>(m, "EurBounds")
        .def_readonly("s_r_min", &EurBounds::s_r_min)
        .def_readonly("s_r_max", &EurBounds::s_r_max)
        .def_readonly("s_k_min", &EurBounds::s_k_min)
        .def_readonly("s_k_max", &EurBounds::s_k_max)
        .def_readonly("s_min", &EurBounds::s_min)
        .def_readonly("s_max", &EurBounds::s_max);
    m.def("eur_bounds", &eur_bounds, py::arg("kinetic"), py::arg("mean_square_radius"));
    m.def("landsberg_omega", &landsberg_omega, py::arg("s_total"), py::arg("s_max"));

    py::class_<EntropyReport>(m, "EntropyReport")
        .def_readonly("n_particles", &EntropyReport::n_particles)
        .def_readonly("s_r", &EntropyReport::s_r)
        .def_readonly("s_k", &EntropyReport::s_k)
        .def_readonly("s_total", &EntropyReport::s_total)
        .def_readonly("kinetic", &EntropyReport::kinetic)
        .def_readonly("mean_square_radius", &EntropyReport::mean_square_radius)
        .def_readonly("bounds", &EntropyReport::bounds)
        .def_readonly("omega", &EntropyReport::omega)
        .def_readonly("tail_warning", &EntropyReport::tail_warning);
    m.def("make_entropy_report", &make_entropy_report, py::arg("n_particles"),
          py::arg("pair"));

    py::class_<GridInfo>(m, "GridInfo")
        .def_readonly("r_max", &GridInfo::r_max)
        .def_readonly("r_points", &GridInfo::r_points)
        .def_readonly("k_max", &GridInfo::k_max)
        .def_readonly("k_points", &GridInfo::k_points);

    py::class_<SolverSummary>(m, "SolverSummary")
        .def_readonly("chemical_potential", &SolverSummary::chemical_potential)
        .def_readonly("kinetic_energy", &SolverSummary::kinetic_energy)
        .def_readonly("trap_energy", &SolverSummary::trap_energy)
        .def_readonly("interaction_energy", &SolverSummary::interaction_energy)
        .def_readonly("iterations", &SolverSummary::iterations)
        .def_readonly("residual", &SolverSummary::residual)
        .def_readonly("peak_density_a3", &SolverSummary::peak_density_a3);

    py::class_<SweepEntry>(m, "SweepEntry")
        .def_readonly("n_particles", &SweepEntry::n_particles)
        .def_readonly("report", &SweepEntry::report)
        .def_readonly("densities", &SweepEntry::densities)
        .def_readonly("solver", &SweepEntry::solver)
        .def_readonly("grid", &SweepEntry::grid);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("entries", &SweepResult::entries)
        .def_readonly("scattering_length_angstrom", &SweepResult::scattering_length_angstrom)
        .def_readonly("trap_length_angstrom", &SweepResult::trap_length_angstrom);

    py::class_<SweepOptions>(m, "SweepOptions")
        .def(py::init<>())
        .def_readwrite("solver", &SweepOptions::solver)
        .def_readwrite("h_target", &SweepOptions::h_target)
        .def_readwrite("r_max", &SweepOptions::r_max)
        .def_readwrite("n_points", &SweepOptions::n_points)
        .def_readwrite("parallel", &SweepOptions::parallel);

    m.def("reference_n_values", [] { return reference_n_values(); });
    m.def("run_sweep", &run_sweep, py::arg("spec_template"), py::arg("n_values"),
          py::arg("options") = SweepOptions{},
          py::call_guard<py::gil_scoped_release>());

    py::class_<LogLawFit>(m, "LogLawFit")
        .def_readonly("intercept", &LogLawFit::intercept)
        .def_readonly("slope", &LogLawFit::slope)
        .def_readonly("rms_residual", &LogLawFit::rms_residual)
        .def_readonly("n_min", &LogLawFit::n_min)
        .def_readonly("n_max", &LogLawFit::n_max);
    m.def("fit_log_law", &fit_log_law, py::arg("points"));

    py::class_<ChainCheck>(m, "ChainCheck")
        .def_readonly("value", &ChainCheck::value)
        .def_readonly("lower", &ChainCheck::lower)
        .def_readonly("upper", &ChainCheck::upper)
        .def_readonly("slack_lower", &ChainCheck::slack_lower)
        .def_readonly("slack_upper", &ChainCheck::slack_upper)
        .def_readonly("ok", &ChainCheck::ok);

    py::class_<AuditRow>(m, "AuditRow")
        .def_readonly("n_particles", &AuditRow::n_particles)
        .def_readonly("position", &AuditRow::position)
        .def_readonly("momentum", &AuditRow::momentum)
        .def_readonly("total", &AuditRow::total)
        .def_readonly("pass_", &AuditRow::pass);

    py::class_<AuditTable>(m, "AuditTable")
        .def_readonly("rows", &AuditTable::rows)
        .def_readonly("all_pass", &AuditTable::all_pass);
    m.def(
        "audit_inequalities",
        [](const SweepResult& sweep, double tol) { return audit_inequalities(sweep, tol); },
        py::arg("sweep"), py::arg("tolerance") = 1e-6);

    m.def("ingest_density_pair",
          [](const std::string& pos, const std::string& mom) {
              return ingest_density_pair(pos, mom);
          },
          py::arg("position_file"), py::arg("momentum_file"));
}

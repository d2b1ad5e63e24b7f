#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lrqt/dipolar.hpp"
#include "lrqt/error.hpp"
#include "lrqt/mera.hpp"
#include "lrqt/protocol.hpp"
#include "lrqt/reliability.hpp"
#include "lrqt/schedule.hpp"

namespace py = pybind11;
using namespace lrqt;

namespace {

LatticeSpec make_lattice(int d, int L, double alpha) {
    return d == 1 ? LatticeSpec::chain(L, alpha) : LatticeSpec::cube(d, L, alpha);
}

std::vector<Complex> amplitudes(const PureState& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

ControlPrism prism_from(const std::array<double, 3>& edges) {
    return ControlPrism::anchored(edges[0], edges[1], edges[2]);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fast state transfer and GHZ preparation with power-law interactions";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<ScheduleMode>(m, "ScheduleMode")
        .value("hypercube", ScheduleMode::hypercube)
        .value("greedy", ScheduleMode::greedy);
    py::enum_<ProtocolPhase>(m, "ProtocolPhase")
        .value("ghz_only", ProtocolPhase::ghz_only)
        .value("full_transfer", ProtocolPhase::full_transfer);
    py::enum_<NnMode>(m, "NnMode").value("bound", NnMode::bound).value("exact", NnMode::exact);
    py::enum_<StepCounting>(m, "StepCounting")
        .value("continuous", StepCounting::continuous)
        .value("discrete", StepCounting::discrete);

    m.def("hypercube_coupling_sum", &hypercube_coupling_sum, py::arg("p"), py::arg("q"), py::arg("d"), py::arg("alpha"));
    m.def("shell_bucketed_sums", py::overload_cast<int, int, double>(&shell_bucketed_sums), py::arg("q"), py::arg("d"),
          py::arg("alpha"));

    py::class_<ScheduleResult>(m, "ScheduleResult")
        .def_readonly("d", &ScheduleResult::d)
        .def_readonly("alpha", &ScheduleResult::alpha)
        .def_readonly("times", &ScheduleResult::times)
        .def_readonly("cumulative", &ScheduleResult::cumulative)
        .def_readonly("residuals", &ScheduleResult::residuals)
        .def("max_residual", &ScheduleResult::max_residual);
    m.def("solve_hypercube_times", &solve_hypercube_times, py::arg("L"), py::arg("d"), py::arg("alpha"),
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
    m.def(
        "total_transfer_time",
        [](int L, int d, double alpha) {
            const auto t = total_transfer_time(L, d, alpha);
            return py::dict(py::arg("one_way") = t.one_way, py::arg("transfer") = t.transfer);
        },
        py::arg("L"), py::arg("d"), py::arg("alpha"));

    py::class_<ScalingFit>(m, "ScalingFit")
        .def_readonly("beta", &ScalingFit::beta)
        .def_readonly("intercept", &ScalingFit::intercept)
        .def_readonly("r_squared", &ScalingFit::r_squared)
        .def_readonly("L_min", &ScalingFit::L_min)
        .def_readonly("L_max", &ScalingFit::L_max);
    py::class_<ScalingFitReport>(m, "ScalingFitReport")
        .def_readonly("d", &ScalingFitReport::d)
        .def_readonly("alpha", &ScalingFitReport::alpha)
        .def_readonly("power_law", &ScalingFitReport::power_law)
        .def_readonly("logarithmic", &ScalingFitReport::logarithmic);
    m.def("fit_scaling", py::overload_cast<int, double, int, double>(&fit_scaling), py::arg("d"), py::arg("alpha"),
          py::arg("L_max"), py::arg("window") = 0.9, py::call_guard<py::gil_scoped_release>());

    m.def(
        "greedy_schedule",
        [](int d, int L, double alpha) {
            const auto log = greedy_schedule(make_lattice(d, L, alpha));
            return py::dict(py::arg("completion_times") = log.completion_times, py::arg("total_time") = log.total_time,
                            py::arg("destination_time") = log.destination_time,
                            py::arg("events") = log.events.size());
        },
        py::arg("d"), py::arg("L"), py::arg("alpha"));

    m.def(
        "run_protocol",
        [](int d, int L, double alpha, Complex a, Complex b, ScheduleMode mode, ProtocolPhase phase) {
            const auto rep = run_protocol(make_lattice(d, L, alpha), a, b, mode, phase);
            return py::dict(py::arg("fidelity") = rep.fidelity, py::arg("elapsed") = rep.elapsed,
                            py::arg("ghz_phase") = rep.ghz_phase, py::arg("state") = amplitudes(rep.final_state));
        },
        py::arg("d"), py::arg("L"), py::arg("alpha"), py::arg("a"), py::arg("b"),
        py::arg("mode") = ScheduleMode::greedy, py::arg("phase") = ProtocolPhase::full_transfer);

    m.def("dipole_coupling", &dipole_coupling, py::arg("r"));
    m.def(
        "prism_interaction",
        [](std::array<double, 3> edges, Point3 target, double tol) {
            return prism_interaction(prism_from(edges), target, tol);
        },
        py::arg("edges"), py::arg("target"), py::arg("tol") = 1e-10);
    m.def(
        "dVdx_analytic", [](std::array<double, 3> edges, Point3 point) { return dVdx_analytic(prism_from(edges), point); },
        py::arg("edges"), py::arg("point"));
    m.def(
        "dilation_step_times",
        [](int steps, double factor, double alpha, int d, const std::string& kernel, double tol) {
            DilationPlan plan;
            plan.steps = steps;
            plan.factor = factor;
            plan.alpha = alpha;
            plan.d = d;
            if (kernel == "dipolar") plan.kernel = DilationKernel::dipolar;
            else if (kernel == "isotropic") plan.kernel = DilationKernel::isotropic;
            else throw InvalidArgument("unknown kernel '" + kernel + "'");
            return dilation_schedule(plan, tol, SlabSampling{8, 3, 4}).per_step_times();
        },
        py::arg("steps") = 3, py::arg("factor") = 2.0, py::arg("alpha") = 3.0, py::arg("d") = 3,
        py::arg("kernel") = "dipolar", py::arg("tol") = 1e-8);

    py::class_<ReliabilityParams>(m, "ReliabilityParams")
        .def(py::init<>())
        .def_readwrite("gamma", &ReliabilityParams::gamma)
        .def_readwrite("dt", &ReliabilityParams::dt)
        .def_readwrite("lam", &ReliabilityParams::lam)
        .def_readwrite("eps", &ReliabilityParams::eps)
        .def_readwrite("c", &ReliabilityParams::c)
        .def_readwrite("P", &ReliabilityParams::P)
        .def("budget", &ReliabilityParams::budget);
    m.def("p_success", &p_success, py::arg("params"), py::arg("N"), py::arg("counting") = StepCounting::discrete);
    m.def("max_qubits_longrange", &max_qubits_longrange, py::arg("params"));
    m.def("max_qubits_nn", &max_qubits_nn, py::arg("params"), py::arg("mode"));
    m.def("advantage_ratio", &advantage_ratio, py::arg("params"), py::arg("mode"));
    m.def("max_qubits_gate_fidelity", &max_qubits_gate_fidelity, py::arg("params"));
    m.def("protocol_wall_time", &protocol_wall_time, py::arg("params"), py::arg("N"),
          py::arg("counting") = StepCounting::discrete);
    m.def("ghz_lifetime", &ghz_lifetime, py::arg("params"), py::arg("N"));

    m.def("mera_layer_count", &mera_layer_count, py::arg("L"), py::arg("phi") = 2);
    m.def(
        "mera_time_bound",
        [](long long L, int phi, double alpha, int d) {
            const auto plan = mera_time_bound(L, phi, alpha, d);
            return py::dict(py::arg("total_time") = plan.total_time, py::arg("regime") = plan.regime,
                            py::arg("layers") = plan.layers.size());
        },
        py::arg("L"), py::arg("phi") = 2, py::arg("alpha") = 3.0, py::arg("d") = 1);
    m.def(
        "mera_schedule",
        [](int L, double alpha, ScheduleMode mode, double gate_time, bool replay) {
            const auto s = build_mera_schedule(L, alpha, mode, gate_time);
            std::vector<double> layer_times;
            for (const auto& layer : s.layers) layer_times.push_back(layer.time);
            py::dict out(py::arg("total_time") = s.total_time, py::arg("layer_times") = layer_times);
            if (replay) {
                out["distance_to_direct"] =
                    distance_up_to_phase(replay_mera(s, MeraGateChoice::fixed_entangler),
                                         apply_mera_direct(s, MeraGateChoice::fixed_entangler));
            }
            return out;
        },
        py::arg("L"), py::arg("alpha") = 3.0, py::arg("mode") = ScheduleMode::hypercube, py::arg("gate_time") = 0.0,
        py::arg("replay") = false);
}

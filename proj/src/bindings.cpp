#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "remest/oracle.hpp"
#include "remest/range_dp.hpp"
#include "remest/rangeprop.hpp"

namespace py = pybind11;
using namespace remest;

namespace {

std::vector<ChannelSymbol> trajectory_symbols(const Trajectory& traj) { return traj.symbols; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Worst-case transmission scheduling and estimation for a bounded-noise "
            "autoregressive source";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<oracle::GuardError>(m, "GuardError", PyExc_RuntimeError);

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def(py::init<>())
      .def_static("homogeneous", &ProblemSpec::homogeneous, py::arg("horizon"), py::arg("budget"),
                  py::arg("a"), py::arg("lambda_"), py::arg("dim") = 1)
      .def_readwrite("horizon", &ProblemSpec::horizon)
      .def_readwrite("budget", &ProblemSpec::budget)
      .def_readwrite("noise_radii", &ProblemSpec::noise_radii)
      .def_readwrite("lambda_", &ProblemSpec::lambda)
      .def_readwrite("rotation", &ProblemSpec::rotation)
      .def_readwrite("dim", &ProblemSpec::dim)
      .def("__repr__", [](const ProblemSpec& spec) {
        return "ProblemSpec(horizon=" + std::to_string(spec.horizon) +
               ", budget=" + std::to_string(spec.budget) + ", dim=" + std::to_string(spec.dim) +
               ")";
      });

  py::class_<Schedule>(m, "Schedule")
      .def(py::init([](const std::string& bits) { return Schedule::from_string(bits); }),
           py::arg("bits"))
      .def_static("from_string", &Schedule::from_string)
      .def_readwrite("decisions", &Schedule::decisions)
      .def("transmissions", &Schedule::transmissions)
      .def("to_string", &Schedule::to_string)
      .def("__eq__", [](const Schedule& a, const Schedule& b) { return a == b; })
      .def("__repr__", [](const Schedule& s) { return "Schedule(\"" + s.to_string() + "\")"; });

  py::class_<ValueTable>(m, "ValueTable")
      .def("value", &ValueTable::value, py::arg("t"), py::arg("tau"), py::arg("e"))
      .def("transmit_decision", &ValueTable::transmit_decision, py::arg("t"), py::arg("tau"),
           py::arg("e"))
      .def_property_readonly("horizon", &ValueTable::horizon)
      .def_property_readonly("energy_cap", &ValueTable::energy_cap);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("optimal_cost", &SolveResult::optimal_cost)
      .def_readonly("schedule", &SolveResult::schedule)
      .def_readonly("table", &SolveResult::table);

  py::class_<RadiusTrajectory>(m, "RadiusTrajectory")
      .def_readonly("radii", &RadiusTrajectory::radii)
      .def_readonly("max_radius", &RadiusTrajectory::max_radius)
      .def_readonly("argmax_t", &RadiusTrajectory::argmax_t);

  py::class_<ChannelSymbol>(m, "ChannelSymbol")
      .def_property_readonly("transmitted", &ChannelSymbol::transmitted)
      .def_property_readonly("value",
                             [](const ChannelSymbol& y) -> py::object {
                               if (!y.transmitted()) return py::none();
                               return py::cast(y.value());
                             })
      .def("__repr__", [](const ChannelSymbol& y) {
        return y.transmitted() ? std::string("ChannelSymbol(observation)")
                               : std::string("ChannelSymbol(eps)");
      });

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("states", &Trajectory::states)
      .def_readonly("estimates", &Trajectory::estimates)
      .def_property_readonly("symbols", &trajectory_symbols)
      .def_readonly("errors", &Trajectory::errors)
      .def_readonly("cost", &Trajectory::cost);

  m.def("validate_spec", &validate_spec, py::arg("spec"));
  m.def("radius_at", &radius_at, py::arg("t"), py::arg("tau"), py::arg("spec"));
  m.def("solve", &solve, py::arg("spec"));
  m.def("spacing", &spacing, py::arg("horizon"), py::arg("budget"));
  m.def("homogeneous_cost", &homogeneous_cost, py::arg("horizon"), py::arg("budget"),
        py::arg("a"), py::arg("lambda_"));
  m.def("uniform_schedule", &uniform_schedule, py::arg("horizon"), py::arg("budget"));
  m.def(
      "min_budget",
      [](int horizon, double a, double lambda, double epsilon) -> py::object {
        const auto k = min_budget(horizon, a, lambda, epsilon);
        if (!k) return py::none();
        return py::int_(*k);
      },
      py::arg("horizon"), py::arg("a"), py::arg("lambda_"), py::arg("epsilon"));

  m.def("evaluate_schedule", &evaluate_schedule, py::arg("schedule"), py::arg("spec"));
  m.def("adversarial_noise", &adversarial_noise, py::arg("schedule"), py::arg("spec"));
  m.def("simulate", &simulate, py::arg("schedule"), py::arg("noise"), py::arg("spec"));

  m.def(
      "enumerate_schedules",
      [](const ProblemSpec& spec) {
        const auto result = oracle::enumerate_schedules(spec);
        return py::make_tuple(result.min_cost, result.optimal);
      },
      py::arg("spec"));
  m.def(
      "game_tree_minimax",
      [](const ProblemSpec& spec) { return oracle::game_tree_minimax(spec).value; },
      py::arg("spec"));
  m.def(
      "coordinator_value",
      [](const ProblemSpec& spec, bool full_prescriptions) {
        return oracle::coordinator_value(spec, full_prescriptions
                                                   ? oracle::PrescriptionSet::Full
                                                   : oracle::PrescriptionSet::AllOrNone);
      },
      py::arg("spec"), py::arg("full_prescriptions") = false);
}

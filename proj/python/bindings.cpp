#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstddef>
#include <vector>

#include "tempfrac/calibration.hpp"
#include "tempfrac/config.hpp"
#include "tempfrac/errors.hpp"
#include "tempfrac/fractional.hpp"
#include "tempfrac/mesh.hpp"
#include "tempfrac/observables.hpp"
#include "tempfrac/solver.hpp"
#include "tempfrac/verification.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace tempfrac;

namespace {

py::array_t<double> copy_1d(std::span<const double> data) {
    return py::array_t<double>(static_cast<py::ssize_t>(data.size()), data.data());
}

py::array_t<double> copy_lattice(const SolutionField& field, bool tempered) {
    const py::ssize_t rows = static_cast<py::ssize_t>(field.time().intervals() + 1);
    const py::ssize_t cols = static_cast<py::ssize_t>(field.space().intervals() + 1);
    py::array_t<double> out({rows, cols});
    auto view = out.mutable_unchecked<2>();
    for (py::ssize_t l = 0; l < rows; ++l) {
        const auto slice = tempered
                               ? field.tempered_slice(static_cast<std::size_t>(l))
                               : field.untempered_slice(static_cast<std::size_t>(l));
        for (py::ssize_t i = 0; i < cols; ++i) {
            view(l, i) = slice[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_tempfrac, m) {
    m.doc() = "Tempered time-fractional advection-diffusion solver with "
              "time-of-flight post-processing and calibration";
    m.attr("__version__") = "0.1.0";

    py::register_exception<StabilityError>(m, "StabilityException", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigException", PyExc_ValueError);

    py::class_<GradedMesh>(m, "GradedMesh")
        .def(py::init<std::size_t, double, double>(), "n"_a, "r"_a, "T"_a)
        .def_property_readonly("n", &GradedMesh::intervals)
        .def_property_readonly("r", &GradedMesh::grading)
        .def_property_readonly("T", &GradedMesh::horizon)
        .def("point", &GradedMesh::point, "i"_a)
        .def("length", &GradedMesh::length, "i"_a)
        .def("points", [](const GradedMesh& mesh) { return copy_1d(mesh.points()); })
        .def("lengths", [](const GradedMesh& mesh) { return copy_1d(mesh.lengths()); });
    m.def("build_graded_mesh", &build_graded_mesh, "n"_a, "r"_a, "T"_a);

    py::class_<SpatialMesh>(m, "SpatialMesh")
        .def(py::init<std::size_t, double>(), "K"_a, "L"_a)
        .def_property_readonly("K", &SpatialMesh::intervals)
        .def_property_readonly("L", &SpatialMesh::domain_length)
        .def_property_readonly("h", &SpatialMesh::step)
        .def("points", [](const SpatialMesh& mesh) { return copy_1d(mesh.points()); });

    py::class_<L1CoefficientTable>(m, "L1CoefficientTable")
        .def(py::init<double, const GradedMesh&>(), "alpha"_a, "mesh"_a)
        .def_property_readonly("alpha", &L1CoefficientTable::alpha)
        .def("a", &L1CoefficientTable::a, "j"_a, "k"_a)
        .def("tau_pow", &L1CoefficientTable::tau_pow, "j"_a)
        .def("gamma_two_minus_alpha", &L1CoefficientTable::gamma_two_minus_alpha);
    m.def("build_l1_table", &build_l1_table, "alpha"_a, "mesh"_a);

    m.def("gamma_eval", &gamma_eval, "z"_a);
    m.def(
        "l1_caputo",
        [](const std::vector<double>& samples, const L1CoefficientTable& table,
           std::size_t k) { return l1_caputo(samples, table, k); },
        "samples"_a, "table"_a, "k"_a);
    m.def(
        "temper",
        [](const std::vector<double>& values, double lambda, const GradedMesh& mesh,
           bool forward) {
            return temper(values, lambda, mesh,
                          forward ? TemperDirection::forward : TemperDirection::inverse);
        },
        "values"_a, "lambda"_a, "mesh"_a, "forward"_a = true);

    py::class_<TemperedParams>(m, "TemperedParams")
        .def(py::init<double, double>(), "alpha"_a, "lambda"_a = 0.0)
        .def_readwrite("alpha", &TemperedParams::alpha)
        .def_readwrite("lambda_", &TemperedParams::lambda);

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def(py::init([](double alpha, double lambda, double v, double D, double L,
                         double T, std::function<double(double)> g,
                         std::function<double(double, double)> f) {
                 ProblemSpec spec;
                 spec.params = {alpha, lambda};
                 spec.v = v;
                 spec.D = D;
                 spec.L = L;
                 spec.T = T;
                 spec.g = std::move(g);
                 spec.f = std::move(f);
                 return spec;
             }),
             "alpha"_a, "lambda"_a = 0.0, "v"_a = 1.0, "D"_a = 1.0, "L"_a = 1.0,
             "T"_a = 1.0, "g"_a = nullptr, "f"_a = nullptr)
        .def_readwrite("v", &ProblemSpec::v)
        .def_readwrite("D", &ProblemSpec::D)
        .def_readwrite("L", &ProblemSpec::L)
        .def_readwrite("T", &ProblemSpec::T)
        .def_readwrite("g", &ProblemSpec::g)
        .def_readwrite("f", &ProblemSpec::f)
        .def_property(
            "alpha", [](const ProblemSpec& s) { return s.params.alpha; },
            [](ProblemSpec& s, double a) { s.params.alpha = a; })
        .def_property(
            "lambda_", [](const ProblemSpec& s) { return s.params.lambda; },
            [](ProblemSpec& s, double l) { s.params.lambda = l; });

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("ok", &StabilityReport::ok)
        .def_readonly("hmax", &StabilityReport::hmax);
    m.def("check_stability", &check_stability, "spec"_a, "h"_a);

    py::class_<SolutionField>(m, "SolutionField")
        .def("tempered", [](const SolutionField& f) { return copy_lattice(f, true); })
        .def("untempered", [](const SolutionField& f) { return copy_lattice(f, false); })
        .def("times", [](const SolutionField& f) { return copy_1d(f.time().points()); })
        .def("xs", [](const SolutionField& f) { return copy_1d(f.space().points()); })
        .def_property_readonly("boundary_warning", &SolutionField::boundary_warning);
    m.def(
        "march",
        [](const ProblemSpec& spec, std::size_t n, double r, std::size_t K) {
            return march(spec, n, r, K);
        },
        "spec"_a, "n"_a, "r"_a, "K"_a);

    py::enum_<TimeAssignment>(m, "TimeAssignment")
        .value("node", TimeAssignment::node)
        .value("log_midpoint", TimeAssignment::log_midpoint);
    py::enum_<CurrentDifference>(m, "CurrentDifference")
        .value("backward", CurrentDifference::backward)
        .value("centered", CurrentDifference::centered);

    py::class_<CurrentTrace>(m, "CurrentTrace")
        .def(py::init<>())
        .def_readwrite("times", &CurrentTrace::times)
        .def_readwrite("current", &CurrentTrace::current)
        .def_readwrite("charge", &CurrentTrace::charge);
    m.def("charge_moment", &charge_moment, "field"_a, "l"_a);
    m.def("transient_current", &transient_current, "field"_a,
          "assignment"_a = TimeAssignment::node,
          "difference"_a = CurrentDifference::backward);

    py::class_<IndexWindow>(m, "IndexWindow")
        .def(py::init<std::size_t, std::size_t>(), "begin"_a, "end"_a)
        .def_readwrite("begin", &IndexWindow::begin)
        .def_readwrite("end", &IndexWindow::end);
    py::class_<PowerLawFit>(m, "PowerLawFit")
        .def_readonly("pre_slope", &PowerLawFit::pre_slope)
        .def_readonly("post_slope", &PowerLawFit::post_slope)
        .def_readonly("pre_intercept", &PowerLawFit::pre_intercept)
        .def_readonly("post_intercept", &PowerLawFit::post_intercept)
        .def_readonly("transit_time", &PowerLawFit::transit_time)
        .def_readonly("alpha_pre", &PowerLawFit::alpha_pre)
        .def_readonly("alpha_post", &PowerLawFit::alpha_post);
    m.def("fit_power_laws", &fit_power_laws, "trace"_a, "window_pre"_a, "window_post"_a);
    m.def(
        "window_from_log_fractions",
        [](const std::vector<double>& times, double f0, double f1) {
            return window_from_log_fractions(times, f0, f1);
        },
        "times"_a, "f0"_a, "f1"_a);

    m.def("manufactured_solution", &manufactured_solution, "alpha"_a, "lambda"_a, "x"_a,
          "t"_a);
    m.def("manufactured_forcing", &manufactured_forcing, "alpha"_a, "lambda"_a, "v"_a,
          "D"_a, "x"_a, "t"_a);
    m.def("optimal_grading", &optimal_grading, "alpha"_a);

    py::class_<ErrorRecord>(m, "ErrorRecord")
        .def_readonly("n", &ErrorRecord::n)
        .def_readonly("r", &ErrorRecord::r)
        .def_readonly("alpha", &ErrorRecord::alpha)
        .def_readonly("lambda_", &ErrorRecord::lambda)
        .def_readonly("h", &ErrorRecord::h)
        .def_readonly("max_abs_error", &ErrorRecord::max_abs_error)
        .def_readonly("eoc", &ErrorRecord::eoc);
    m.def(
        "run_convergence_table",
        [](double alpha, double lambda, double r, double h,
           const std::vector<std::size_t>& n_list) {
            return run_convergence_table(alpha, lambda, r, h, n_list);
        },
        "alpha"_a, "lambda"_a, "r"_a, "h"_a, "n_list"_a);

    py::class_<MeasuredTrace>(m, "MeasuredTrace")
        .def(py::init<>())
        .def_readwrite("times", &MeasuredTrace::times)
        .def_readwrite("current", &MeasuredTrace::current)
        .def_readwrite("source", &MeasuredTrace::source)
        .def("validate", &MeasuredTrace::validate);
    m.def("load_measured_trace", &load_measured_trace, "path"_a);

    m.def("gaussian_packet", &gaussian_packet, "x_c"_a, "w"_a, "A"_a = 1.0);

    py::class_<CalibrationParams>(m, "CalibrationParams")
        .def(py::init<>())
        .def(py::init([](double alpha, double lambda, double v, double D, double xc,
                         double width) {
                 return CalibrationParams{alpha, lambda, v, D, xc, width};
             }),
             "alpha"_a, "lambda"_a, "v"_a, "D"_a, "x_c"_a = 0.2, "w"_a = 0.05)
        .def_readwrite("alpha", &CalibrationParams::alpha)
        .def_readwrite("lambda_", &CalibrationParams::lambda)
        .def_readwrite("v", &CalibrationParams::v)
        .def_readwrite("D", &CalibrationParams::D)
        .def_readwrite("x_c", &CalibrationParams::xc)
        .def_readwrite("w", &CalibrationParams::width);

    py::class_<FitProblem>(m, "FitProblem")
        .def(py::init<>())
        .def_readwrite("lower", &FitProblem::lower)
        .def_readwrite("upper", &FitProblem::upper)
        .def_readwrite("frozen", &FitProblem::frozen)
        .def_readwrite("n", &FitProblem::n)
        .def_readwrite("r", &FitProblem::r)
        .def_readwrite("K", &FitProblem::K)
        .def_readwrite("L", &FitProblem::L)
        .def_readwrite("T", &FitProblem::T);

    py::class_<LossValue>(m, "LossValue")
        .def_readonly("value", &LossValue::value)
        .def_readonly("offset", &LossValue::offset)
        .def_readonly("used", &LossValue::used)
        .def_readonly("skipped", &LossValue::skipped)
        .def_readonly("penalized", &LossValue::penalized);
    m.def("loss", &loss, "candidate"_a, "problem"_a, "measured"_a);
    m.def("simulate_trace", &simulate_trace, "candidate"_a, "problem"_a, "horizon"_a);
    m.def("fitted_curve", &fitted_curve, "candidate"_a, "problem"_a, "measured"_a);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("best", &FitResult::best)
        .def_readonly("loss_value", &FitResult::loss_value)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("loss_trace", &FitResult::loss_trace)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("refined_loss", &FitResult::refined_loss)
        .def_readonly("refined_ratio", &FitResult::refined_ratio);
    m.def("fit", &fit, "problem"_a, "measured"_a, "initial"_a,
          "max_iterations"_a = static_cast<std::size_t>(500));
}

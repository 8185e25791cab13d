#include "anchored/harness.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace anchored;

namespace {

py::dict trace_columns(const RunTrace& t) {
    std::vector<long> k;
    std::vector<double> g, lyap, bound;
    for (const auto& r : t.records) {
        k.push_back(r.k);
        g.push_back(r.norm_g_y);
        lyap.push_back(r.lyapunov_main.value_or(NAN));
        bound.push_back(r.bound.value_or(NAN));
    }
    py::dict d;
    d["k"] = k;
    d["norm_g_y"] = g;
    d["lyapunov"] = lyap;
    d["bound"] = bound;
    d["scheme"] = t.meta.scheme;
    d["schedule"] = t.meta.schedule;
    d["L"] = t.meta.L;
    d["error"] = t.error;
    return d;
}

RunTrace run_instance(const ProblemInstance& inst, const std::string& scheme, const std::string& schedule,
                      long iters, double sigma, double rho, double omega) {
    ScheduleConstants c;
    c.L = inst.l_estimate;
    c.sigma = sigma;
    c.rho = rho;
    c.omega = omega;
    SolverData d;
    d.op = inst.op;
    Solver s = make_solver(ProblemCase::cocoercive, d, parse_scheme_kind(scheme), parse_schedule_kind(schedule), c);
    return run(s, inst.y0, iters);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Anchored and accelerated fixed-point schemes for co-coercive and monotone equations.";

    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);

    py::class_<ProblemInstance>(m, "Instance")
        .def_property_readonly("y0", [](const ProblemInstance& p) { return p.y0; })
        .def_property_readonly("solution", [](const ProblemInstance& p) { return p.solution; })
        .def_property_readonly("L", [](const ProblemInstance& p) { return p.l_estimate; })
        .def_property_readonly("data", [](const ProblemInstance& p) { return p.data; })
        .def_property_readonly("dim", [](const ProblemInstance& p) { return p.op.dim; })
        .def("apply", [](const ProblemInstance& p, const Vector& y) { return p.op(y); }, py::arg("y"));

    m.def("least_squares", &gen_least_squares, py::arg("n"), py::arg("p"), py::arg("seed") = 7,
          py::arg("noise_var") = 0.1);
    m.def("huber", &gen_minimax_huber, py::arg("m"), py::arg("n"), py::arg("seed") = 7);
    m.def("bilinear", &gen_bilinear, py::arg("m"), py::arg("n"), py::arg("seed") = 7);
    m.def("identity", &gen_identity, py::arg("dim"), py::arg("fill") = 1.0);

    m.def(
        "run",
        [](const ProblemInstance& inst, const std::string& scheme, const std::string& schedule, long iters,
           double sigma, double rho, double omega) {
            return trace_columns(run_instance(inst, scheme, schedule, iters, sigma, rho, omega));
        },
        py::arg("instance"), py::arg("scheme"), py::arg("schedule"), py::arg("iters") = 200, py::arg("sigma") = 1.0,
        py::arg("rho") = 0.0, py::arg("omega") = 3.0);

    m.def(
        "run_config",
        [](const std::string& text) { return trace_columns(execute(run_config_from(KeyValueConfig::parse_string(text)))); },
        py::arg("text"));

    m.def(
        "verify",
        [](const std::string& suite, const std::string& scale, std::uint64_t seed) {
            std::vector<py::tuple> out;
            for (const auto& r : run_suite(parse_suite(suite), parse_scale(scale), seed))
                out.push_back(py::make_tuple(r.suite, r.name, r.pass, r.detail));
            return out;
        },
        py::arg("suite") = "all", py::arg("scale") = "small", py::arg("seed") = 7);

    m.def(
        "rate_fit",
        [](const std::vector<double>& series) {
            const auto r = rate_fit(series);
            return py::make_tuple(r.slope, r.intercept);
        },
        py::arg("series"));

    m.def("list_schemes", [] {
        std::ostringstream out;
        list_schemes(out);
        return out.str();
    });
}

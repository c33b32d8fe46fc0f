// Python bindings for the main operations: body construction, densities,
// integration, and the inequality verifiers.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rslab/io.hpp"
#include "rslab/verify.hpp"

namespace py = pybind11;
using namespace rslab;

PYBIND11_MODULE(_rslab, m) {
    m.doc() = "convex-body inequality verification";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);

    py::class_<Body>(m, "Body")
        .def_readonly("dim", &Body::dim)
        .def_readonly("label", &Body::label)
        .def_property_readonly("vertices", [](const Body& b) { return b.vertices; })
        .def("is_empty", &Body::is_empty)
        .def("__repr__", [](const Body& b) {
            std::string form = b.form == Body::Form::vpolytope ? "vpolytope"
                               : b.form == Body::Form::ball    ? "ball"
                                                               : "oracle";
            return "<Body " + form + " dim=" + std::to_string(b.dim) +
                   (b.label.empty() ? "" : " '" + b.label + "'") + ">";
        });

    m.def("simplex", &make_simplex, py::arg("n"));
    m.def("cube", &make_cube, py::arg("n"), py::arg("half_width") = 1.0);
    m.def("ball", &make_ball, py::arg("n"), py::arg("r") = 1.0, py::arg("center") = Vec{});
    m.def("vpolytope", [](std::vector<Vec> vertices, const std::string& label) {
              return make_vpolytope(std::move(vertices), true, label);
          },
          py::arg("vertices"), py::arg("label") = "");
    m.def("random_polytope", &make_random_polytope, py::arg("n"), py::arg("n_vertices"),
          py::arg("seed"));
    m.def("transform", &transform, py::arg("k"), py::arg("scale"), py::arg("translate"));
    m.def("translate", &translate, py::arg("k"), py::arg("v"));
    m.def("minkowski_sum", &minkowski_sum);
    m.def("difference_body", &difference_body);
    m.def("conv_union", &conv_union);
    m.def("ck_body", &ck_body);
    m.def("intersect", &intersect);
    m.def("contains", &contains, py::arg("k"), py::arg("x"));
    m.def("exact_volume", &exact_volume);
    m.def("interior_point", &interior_point);
    m.def("body_to_json", &body_to_json);
    m.def("body_from_json", &body_from_json);

    py::class_<Density>(m, "Density")
        .def_readonly("n", &Density::n)
        .def_readonly("spec", &Density::spec)
        .def("__call__", [](const Density& d, const Vec& x) { return d.eval(x); })
        .def("__repr__",
             [](const Density& d) { return "<Density '" + d.spec + "'>"; });

    m.def("lebesgue", &make_lebesgue, py::arg("n"));
    m.def("gaussian", &make_gaussian, py::arg("n"));
    m.def("exp_norm", &make_exp_norm, py::arg("n"));
    m.def("indicator", &make_indicator, py::arg("k"));
    m.def("ring", &make_ring, py::arg("eps"), py::arg("delta"));
    m.def("wedge", &make_wedge, py::arg("theta"));
    m.def("cone_power", &make_cone_power, py::arg("k"), py::arg("r"));
    m.def("product", &make_product, py::arg("a"), py::arg("b"));
    m.def("density", [](const std::string& spec, int n) { return make_density(spec, n); },
          py::arg("spec"), py::arg("n"));

    py::class_<SubspaceSpec>(m, "SubspaceSpec")
        .def(py::init<int, std::vector<int>>(), py::arg("ambient"), py::arg("indices"))
        .def_readonly("n", &SubspaceSpec::n)
        .def_readonly("idx", &SubspaceSpec::idx)
        .def("dim", &SubspaceSpec::dim);

    py::class_<QCFunction>(m, "QCFunction")
        .def_readonly("dim", &QCFunction::dim)
        .def_readonly("sup_value", &QCFunction::sup_value)
        .def_readonly("levels", &QCFunction::levels)
        .def("__call__", [](const QCFunction& f, const Vec& x) { return f(x); })
        .def("n_levels", &QCFunction::n_levels);

    m.def("qc_indicator", &qc_indicator);
    m.def("qc_function", &make_qc_function, py::arg("dim"), py::arg("sup_value"),
          py::arg("levels"), py::arg("layers"));
    m.def("qc_approximation", &qc_approximation, py::arg("phi"), py::arg("m") = 64);

    py::class_<IntegrateConfig>(m, "IntegrateConfig")
        .def(py::init<>())
        .def_readwrite("n_samples", &IntegrateConfig::n_samples)
        .def_readwrite("seed", &IntegrateConfig::seed)
        .def_readwrite("grid_res", &IntegrateConfig::grid_res)
        .def_readwrite("theta_order", &IntegrateConfig::theta_order)
        .def_readwrite("theta_min", &IntegrateConfig::theta_min)
        .def_readwrite("sup_coarse", &IntegrateConfig::sup_coarse)
        .def_readwrite("sup_rounds", &IntegrateConfig::sup_rounds)
        .def_readwrite("sup_tol", &IntegrateConfig::sup_tol)
        .def_readwrite("threads", &IntegrateConfig::threads);

    py::class_<Estimate>(m, "Estimate")
        .def_readonly("value", &Estimate::value)
        .def_readonly("std_error", &Estimate::std_error)
        .def_readonly("n_samples", &Estimate::n_samples)
        .def_property_readonly("method",
                               [](const Estimate& e) { return method_name(e.method); })
        .def("__repr__", [](const Estimate& e) {
            return "<Estimate " + std::to_string(e.value) + " +- " +
                   std::to_string(e.std_error) + ">";
        });

    m.def("volume", &volume, py::arg("k"), py::arg("cfg"), py::arg("stream") = 0);
    m.def("measure", &measure, py::arg("phi"), py::arg("k"), py::arg("cfg"),
          py::arg("stream") = 0);
    m.def("translated_average", &translated_average, py::arg("phi"), py::arg("k"),
          py::arg("cfg"), py::arg("stream") = 0);
    m.def("section_measure", &section_measure, py::arg("phi"), py::arg("k"),
          py::arg("spec"), py::arg("x0"), py::arg("cfg"), py::arg("stream") = 0);

    py::class_<AuditResult>(m, "AuditResult")
        .def_readonly("name", &AuditResult::name)
        .def_readonly("passed", &AuditResult::passed)
        .def_readonly("warn_only", &AuditResult::warn_only)
        .def_readonly("note", &AuditResult::note);

    py::class_<IneqReport>(m, "IneqReport")
        .def_readonly("family", &IneqReport::family)
        .def_readonly("variant", &IneqReport::variant)
        .def_readonly("lhs", &IneqReport::lhs)
        .def_readonly("rhs", &IneqReport::rhs)
        .def_readonly("constant", &IneqReport::constant)
        .def_readonly("ratio", &IneqReport::ratio)
        .def_property_readonly("verdict",
                               [](const IneqReport& r) { return verdict_name(r.verdict); })
        .def_readonly("audits", &IneqReport::audits)
        .def_readonly("sup_converged", &IneqReport::sup_converged)
        .def_readonly("sup_on_rhs", &IneqReport::sup_on_rhs)
        .def_readonly("metadata", &IneqReport::metadata)
        .def_readonly("note", &IneqReport::note)
        .def("__repr__", [](const IneqReport& r) {
            return "<IneqReport " + r.family + "/" + r.variant + " " +
                   verdict_name(r.verdict) + ">";
        });

    m.def("verify_difference_body", &verify_difference_body, py::arg("variant"),
          py::arg("phi"), py::arg("k"), py::arg("l") = std::nullopt, py::arg("cfg"));
    m.def("verify_shifted", &verify_shifted, py::arg("variant"), py::arg("phi"),
          py::arg("k"), py::arg("omega"), py::arg("cfg"));
    m.def("verify_ck", &verify_ck, py::arg("variant"), py::arg("phi"), py::arg("k"),
          py::arg("l") = std::nullopt, py::arg("cfg"));
    m.def("verify_section_projection", &verify_section_projection, py::arg("variant"),
          py::arg("phi"), py::arg("k"), py::arg("h"), py::arg("e") = std::nullopt,
          py::arg("r") = std::nullopt, py::arg("cfg"));
    m.def("verify_functional", &verify_functional, py::arg("variant"), py::arg("f"),
          py::arg("g") = std::nullopt, py::arg("phi") = std::nullopt,
          py::arg("h") = std::nullopt, py::arg("p") = std::nullopt, py::arg("cfg"));
    m.def("check_lemma_f", &check_lemma_f, py::arg("phi1"), py::arg("n"), py::arg("m"),
          py::arg("x"));
    m.def("alpha_constant", &alpha_constant, py::arg("n"), py::arg("p"), py::arg("q"));

    py::class_<CounterexampleParams>(m, "CounterexampleParams")
        .def(py::init<>())
        .def_readwrite("eps", &CounterexampleParams::eps)
        .def_readwrite("delta", &CounterexampleParams::delta)
        .def_readwrite("thetas", &CounterexampleParams::thetas)
        .def_readwrite("alphas", &CounterexampleParams::alphas);

    m.def("run_counterexample", &run_counterexample, py::arg("id"), py::arg("params"),
          py::arg("cfg"));
}

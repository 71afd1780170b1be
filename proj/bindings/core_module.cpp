// Python bindings for the main operations: expression evaluation, state
// families, the quantum geometric tensor, chart pullbacks, and curvature.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsgeom/charts.hpp"
#include "qsgeom/curvature.hpp"
#include "qsgeom/expr.hpp"
#include "qsgeom/family.hpp"
#include "qsgeom/quantum_metric.hpp"

namespace py = pybind11;
using namespace qsg;

namespace {

using RealMatrix = std::vector<std::vector<double>>;
using ComplexMatrix = std::vector<std::vector<Complex>>;

RealMatrix to_rows(const MetricTensor& g) {
    RealMatrix out(g.dim, std::vector<double>(g.dim));
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) out[i][j] = g.at(i, j);
    return out;
}

MetricTensor from_rows(const RealMatrix& rows) {
    const int n = static_cast<int>(rows.size());
    MetricTensor g(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw DomainError("metric rows must form a square matrix");
        for (int j = 0; j < n; ++j) g.at(i, j) = rows[i][j];
    }
    return g;
}

ComplexMatrix to_rows(const HermitianTensor& q) {
    ComplexMatrix out(q.dim, std::vector<Complex>(q.dim));
    for (int i = 0; i < q.dim; ++i)
        for (int j = 0; j < q.dim; ++j) out[i][j] = q.at(i, j);
    return out;
}

DifferentiationScheme make_scheme(double h, int order) {
    DifferentiationScheme s;
    s.h = h;
    if (order == 2)
        s.kind = FdKind::Central2;
    else if (order == 4)
        s.kind = FdKind::Central4;
    else
        throw DomainError("order must be 2 or 4");
    s.validate();
    return s;
}

py::dict report_to_dict(const CurvatureReport& rep) {
    py::list points;
    for (const auto& rec : rep.points) {
        py::dict d;
        d["point"] = rec.p;
        d["max_abs_riemann"] = rec.max_abs_riemann;
        d["scalar"] = rec.scalar;
        points.append(d);
    }
    py::dict out;
    out["points"] = points;
    out["global_max"] = rep.global_max;
    out["flat"] = rep.flat;
    out["tol"] = rep.tol;
    out["seed"] = rep.seed;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical differential geometry of parametrized quantum state families";
    m.attr("__version__") = "0.1.0";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalFailure", PyExc_ArithmeticError);
    py::register_exception<ParseError>(m, "ExpressionParseError", PyExc_ValueError);

    // ---- expressions ----
    struct PyExpression {
        ExprPtr ast;
    };
    py::class_<PyExpression>(m, "Expression")
        .def_static("parse",
                    [](const std::string& src) { return PyExpression{parse_expression(src)}; })
        .def("evaluate",
             [](const PyExpression& e, const std::map<std::string, Complex>& bindings) {
                 return eval_expression(*e.ast, bindings);
             },
             py::arg("bindings") = std::map<std::string, Complex>{})
        .def("canonical", [](const PyExpression& e) { return canonical_print(*e.ast); })
        .def("free_symbols", [](const PyExpression& e) { return free_symbols(*e.ast); })
        .def("__repr__", [](const PyExpression& e) { return canonical_print(*e.ast); });

    m.def("parse_expression",
          [](const std::string& src) { return PyExpression{parse_expression(src)}; });
    m.def(
        "eval_expression",
        [](const std::string& src, const std::map<std::string, Complex>& bindings) {
            return eval_expression(*parse_expression(src), bindings);
        },
        py::arg("src"), py::arg("bindings") = std::map<std::string, Complex>{});

    // ---- state families ----
    py::class_<StateFamily>(m, "StateFamily")
        .def_readonly("name", &StateFamily::name)
        .def_property_readonly("param_names",
                               [](const StateFamily& f) {
                                   std::vector<std::string> names;
                                   for (const auto& p : f.parameters) names.push_back(p.name);
                                   return names;
                               })
        .def_property_readonly("bounds",
                               [](const StateFamily& f) {
                                   std::vector<std::pair<double, double>> b;
                                   for (const auto& p : f.parameters)
                                       b.emplace_back(p.lower, p.upper);
                                   return b;
                               })
        .def_readonly("state_dim", &StateFamily::state_dim)
        .def("evaluate", [](const StateFamily& f, const Point& p) { return evaluate_state(f, p); })
        .def(
            "differentiate",
            [](const StateFamily& f, const Point& p, int axis, double h, int order) {
                return differentiate_state(f, p, axis, make_scheme(h, order));
            },
            py::arg("point"), py::arg("axis"), py::arg("h") = 1e-3, py::arg("order") = 4);

    m.def("builtin_family", &builtin_family, py::arg("name"),
          py::arg("constants") = std::map<std::string, double>{});
    m.def(
        "load_family",
        [](const std::string& text, const std::map<std::string, double>& constants) {
            return family_from_definition(parse_family_file(text), constants);
        },
        py::arg("text"), py::arg("constants") = std::map<std::string, double>{},
        "Parse a family definition file's text into a StateFamily.");
    m.def("constant_state_family", &constant_state_family, py::arg("amplitudes"));
    m.def("inner_product", &inner_product, py::arg("a"), py::arg("b"));

    // ---- charts ----
    py::class_<ChartMap>(m, "ChartMap")
        .def_readonly("name", &ChartMap::name)
        .def_property_readonly("source_dim", &ChartMap::source_dim)
        .def_readonly("target_dim", &ChartMap::target_dim)
        .def("map", [](const ChartMap& c, const Point& p) { return c.map(p); });

    m.def("wick_chart", &wick_chart, py::arg("c"));
    m.def("hopf_chart", &hopf_chart, py::arg("r") = 1.0);
    m.def("identity_chart", &identity_chart, py::arg("dim"), py::arg("half_extent") = 1e6);
    m.def(
        "load_chart",
        [](const std::string& text, const std::map<std::string, double>& constants) {
            return chart_from_definition(parse_chart_file(text), constants);
        },
        py::arg("text"), py::arg("constants") = std::map<std::string, double>{});

    m.def("minkowski_line_element", &minkowski_line_element, py::arg("displacement"),
          py::arg("c"));
    m.def("complexify_pairs", [](const std::array<double, 4>& x) { return complexify_pairs(x); });
    m.def("split_pairs", &split_pairs, py::arg("z1"), py::arg("z2"));
    m.def("complex_pair_line_element", &complex_pair_line_element, py::arg("dz1"), py::arg("dz2"),
          py::arg("g11"), py::arg("g22"));
    m.def("wick_twisted_pair_line_element", &wick_twisted_pair_line_element, py::arg("dz1"),
          py::arg("dz2"), py::arg("g11"), py::arg("g22"));
    m.def(
        "jacobian",
        [](const ChartMap& chart, const Point& p, double h, int order) {
            const DMatrix j = jacobian(chart, p, make_scheme(h, order));
            RealMatrix out(j.rows, std::vector<double>(j.cols));
            for (int a = 0; a < j.rows; ++a)
                for (int b = 0; b < j.cols; ++b) out[a][b] = j.at(a, b);
            return out;
        },
        py::arg("chart"), py::arg("point"), py::arg("h") = 1e-3, py::arg("order") = 4);
    m.def(
        "pullback_metric",
        [](const RealMatrix& target, const ChartMap& chart, const Point& p, double h, int order) {
            return to_rows(pullback_metric(from_rows(target), chart, p, make_scheme(h, order)));
        },
        py::arg("target"), py::arg("chart"), py::arg("point"), py::arg("h") = 1e-3,
        py::arg("order") = 4);

    // ---- quantum metric ----
    m.def(
        "qgt",
        [](const StateFamily& fam, const Point& p, double h, int order,
           const std::string& convention) {
            return to_rows(qgt(fam, p, make_scheme(h, order), convention_from_name(convention)));
        },
        py::arg("family"), py::arg("point"), py::arg("h") = 1e-3, py::arg("order") = 4,
        py::arg("convention") = "projective",
        "Quantum geometric tensor as a nested list of complex entries.");
    m.def(
        "g_component_wirtinger",
        [](const StateFamily& fam, const Point& p, int axis_a, int axis_b, double scale, double h,
           int order, const std::string& convention) {
            return g_component_wirtinger(fam, p, axis_a, axis_b, scale, make_scheme(h, order),
                                         convention_from_name(convention));
        },
        py::arg("family"), py::arg("point"), py::arg("axis_a"), py::arg("axis_b"),
        py::arg("second_axis_scale") = 1.0, py::arg("h") = 1e-3, py::arg("order") = 4,
        py::arg("convention") = "projective");
    m.def(
        "assemble_real_metric",
        [](double g11, double g22, double c) { return to_rows(assemble_real_metric(g11, g22, c)); },
        py::arg("g11"), py::arg("g22"), py::arg("c"));
    m.def(
        "eta_coefficients",
        [](const RealMatrix& g, double c, double tol) {
            const EtaReport r = eta_coefficients(from_rows(g), c, tol);
            py::dict d;
            d["eta11"] = r.eta11;
            d["eta22"] = r.eta22;
            d["eta33"] = r.eta33;
            d["eta44"] = r.eta44;
            d["residual12"] = r.residual12;
            d["residual34"] = r.residual34;
            d["tol"] = r.tol;
            d["pass"] = r.pass;
            return d;
        },
        py::arg("metric"), py::arg("c"), py::arg("tol") = 1e-12);
    m.def(
        "signature",
        [](const RealMatrix& g, double zero_tol) {
            const SignatureTriple s = signature(from_rows(g), zero_tol);
            return py::make_tuple(s.n_plus, s.n_minus, s.n_zero);
        },
        py::arg("metric"), py::arg("zero_tol") = 1e-9);

    // ---- curvature ----
    py::class_<MetricField>(m, "MetricField")
        .def_readonly("name", &MetricField::name)
        .def_readonly("dim", &MetricField::dim)
        .def("evaluate", [](const MetricField& f, const Point& p) { return to_rows(f.eval(p)); });

    m.def("constant_field",
          [](const RealMatrix& g, double half) { return constant_field(from_rows(g), half); },
          py::arg("metric"), py::arg("box_halfwidth") = 5.0);
    m.def("builtin_metric_field", &builtin_metric_field, py::arg("name"));
    m.def(
        "pullback_field",
        [](const RealMatrix& target, const ChartMap& chart, double h, int order) {
            return pullback_field(from_rows(target), chart, make_scheme(h, order));
        },
        py::arg("target"), py::arg("chart"), py::arg("h") = 1e-3, py::arg("order") = 4);
    m.def(
        "riemann",
        [](const MetricField& f, const Point& p, double h, int order) {
            const RiemannResult r = riemann(f, p, make_scheme(h, order));
            py::dict d;
            d["max_abs"] = r.max_abs();
            d["scalar"] = r.scalar;
            return d;
        },
        py::arg("field"), py::arg("point"), py::arg("h") = 1e-3, py::arg("order") = 4);
    m.def(
        "flatness_scan",
        [](const MetricField& f, int n_points, double tol, std::uint64_t seed, double h,
           int order) {
            return report_to_dict(flatness_scan(f, n_points, tol, seed, make_scheme(h, order)));
        },
        py::arg("field"), py::arg("n_points") = 50, py::arg("tol") = 1e-6, py::arg("seed") = 1,
        py::arg("h") = 1e-3, py::arg("order") = 4);
}

// Python bindings for the main operations. Exact scalars come back as
// fractions.Fraction, floating ones as float or complex.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orb/error.hpp"
#include "orb/euler.hpp"
#include "orb/io.hpp"
#include "orb/statesum3d.hpp"
#include "orb/tqft2d.hpp"

namespace py = pybind11;
using namespace orb;

namespace {

py::object to_py(const Scalar& s) {
    if (s.is_exact()) return py::module_::import("fractions").attr("Fraction")(s.rational().get_str());
    Complex z = s.complex();
    if (z.imag() == 0.0) return py::float_(z.real());
    return py::cast(z);
}

Scalar from_py(const py::handle& x) {
    if (py::isinstance<py::bool_>(x)) throw py::type_error("expected a number");
    if (py::isinstance<py::float_>(x)) return Scalar::real(x.cast<double>());
    if (PyComplex_Check(x.ptr())) return Scalar(x.cast<Complex>());
    return Scalar::parse(py::str(x).cast<std::string>());
}

py::dict report_to_py(const Report& r) {
    py::list recs;
    for (const auto& x : r.records) {
        py::dict d;
        d["name"] = x.name;
        d["pass"] = x.pass;
        d["residual"] = x.residual;
        d["exact"] = x.exact;
        d["witness"] = x.witness;
        d["note"] = x.note;
        recs.append(d);
    }
    py::dict out;
    out["pass"] = r.all_pass();
    out["max_residual"] = r.max_residual();
    out["records"] = recs;
    return out;
}

io::json parse(const std::string& text) { return io::parse_json(text, "<python>"); }

}  // namespace

PYBIND11_MODULE(_orbifold, m) {
    m.doc() = "Orbifold state sums for 2D and 3D defect TQFTs";
    static py::exception<Error> exc(m, "OrbifoldError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = exc;
            err.attr("code") = e.code();
            exc(e.what());
        }
    });

    py::class_<Triangulation>(m, "Triangulation")
        .def_property_readonly("dim", &Triangulation::dim)
        .def_property_readonly("num_vertices", &Triangulation::num_vertices)
        .def_property_readonly("num_simplices", &Triangulation::num_simplices)
        .def_property_readonly("simplices", &Triangulation::simplices)
        .def_property_readonly("signs", &Triangulation::signs)
        .def_property_readonly("is_closed", &Triangulation::is_closed)
        .def_property_readonly("boundary_names",
                               [](const Triangulation& t) {
                                   std::vector<std::string> out;
                                   for (const auto& [k, v] : t.boundary()) out.push_back(k);
                                   return out;
                               })
        .def("euler_characteristic", &Triangulation::euler_characteristic)
        .def("f_vector", &Triangulation::f_vector)
        .def("canonical_form", [](const Triangulation& t) { return canonical_form(t); })
        .def("to_json", [](const Triangulation& t) { return io::format_json(io::to_json(t)); })
        .def("__repr__", [](const Triangulation& t) {
            return "<Triangulation dim=" + std::to_string(t.dim()) + " simplices=" +
                   std::to_string(t.num_simplices()) + ">";
        });

    m.def("builtin_manifold", &builtin_manifold, py::arg("name"), py::arg("params") = std::vector<int>{});
    m.def("builtin_manifold_names", &builtin_manifold_names);
    m.def("triangulation_from_json", [](const std::string& s) { return io::triangulation_from_json(parse(s)); });
    m.def("mirror", &mirror);
    m.def("disjoint_union", &disjoint_union);
    m.def("glue_along_boundary",
          [](const Triangulation& a, const Triangulation& b, const std::string& na, const std::string& nb) {
              return glue_along_boundary(a, b, na, nb);
          });
    m.def("isomorphic", &isomorphic);
    m.def(
        "enumerate_moves",
        [](const Triangulation& t, const std::string& kind) {
            std::vector<std::string> keys;
            for (const auto& s : enumerate_oriented_moves(t, parse_move_kind(kind))) keys.push_back(move_template_key(t, s));
            return keys;
        },
        "Template key of every site of the given move kind, in site order.");
    m.def(
        "apply_move",
        [](const Triangulation& t, const std::string& kind, size_t index) {
            auto sites = enumerate_oriented_moves(t, parse_move_kind(kind));
            if (index >= sites.size()) throw py::index_error("no such move site");
            return apply_pachner_move(t, sites[index]);
        },
        py::arg("t"), py::arg("kind"), py::arg("index"));
    m.def("oriented_move_templates", [](const std::string& kind) {
        std::vector<std::string> keys;
        for (const auto& [k, v] : oriented_move_representatives(parse_move_kind(kind))) keys.push_back(k);
        return keys;
    });

    py::class_<FrobeniusData>(m, "FrobeniusData")
        .def_readonly("dim", &FrobeniusData::dim)
        .def_readonly("basis", &FrobeniusData::basis)
        .def("is_exact", &FrobeniusData::is_exact)
        .def("to_json", [](const FrobeniusData& a) { return io::format_json(io::to_json(a)); });
    m.def("group_algebra", [](const std::vector<std::vector<int>>& t) { return group_algebra(t); });
    m.def("cyclic_group_algebra", [](int n) { return group_algebra(cyclic_group_table(n)); });
    m.def("symmetric_group_algebra", [](int k) { return group_algebra(symmetric_group_table(k)); });
    m.def("matrix_algebra", [](int n) { return matrix_algebra(n); });
    m.def("trivial_algebra", [] { return trivial_algebra(); });
    m.def("algebra_from_json", [](const std::string& s) { return io::algebra_from_json(parse(s)); });
    m.def("rescale_counit", [](const FrobeniusData& a, const py::object& l) { return rescale_counit(a, from_py(l)); });
    m.def(
        "check_frobenius_axioms",
        [](const FrobeniusData& a, double tol) { return report_to_py(check_frobenius_axioms(a, tol)); },
        py::arg("a"), py::arg("tol") = kDefaultTol);
    m.def(
        "evaluate_closed_2d",
        [](const Triangulation& t, const FrobeniusData& a, double tol) {
            return to_py(evaluate_closed_2d(t, a, Normalization::Orbifold, tol));
        },
        py::arg("t"), py::arg("a"), py::arg("tol") = kDefaultTol);
    m.def("state_space_dim", [](int k, const FrobeniusData& a) { return orbifold_state_space(k, a).dim(); });
    m.def("point_insertion_algebra", [](const FrobeniusData& a) {
        auto alg = point_insertion_algebra(a);
        py::list c, u;
        for (const auto& x : alg.structure) c.append(to_py(x));
        for (const auto& x : alg.unit) u.append(to_py(x));
        py::dict d;
        d["dim"] = alg.dim;
        d["structure"] = c;
        d["unit"] = u;
        return d;
    });
    m.def(
        "check_pachner_2d", [](const FrobeniusData& a, double tol) { return report_to_py(check_pachner_2d(a, tol)); },
        py::arg("a"), py::arg("tol") = kDefaultTol);

    py::class_<FusionData>(m, "FusionData")
        .def_readonly("n", &FusionData::n)
        .def_readonly("labels", &FusionData::labels)
        .def_property_readonly("phi", [](const FusionData& c) { return to_py(c.phi); })
        .def_property_readonly("d",
                               [](const FusionData& c) {
                                   py::list out;
                                   for (const auto& x : c.d) out.append(to_py(x));
                                   return out;
                               })
        .def("F", [](const FusionData& c, int a, int b, int x, int d, int e, int f) { return to_py(c.f(a, b, x, d, e, f)); })
        .def("to_json", [](const FusionData& c) { return io::format_json(io::to_json(c)); });
    m.def(
        "builtin_category",
        [](const std::string& name, const std::vector<int>& params, bool exact) {
            return builtin_category(name, params, exact ? Mode::Exact : Mode::Float);
        },
        py::arg("name"), py::arg("params") = std::vector<int>{}, py::arg("exact") = true);
    m.def("builtin_category_names", &builtin_category_names);
    m.def("category_from_json", [](const std::string& s) { return io::category_from_json(parse(s)); });
    m.def("with_phi", [](const FusionData& c, const py::object& phi) { return with_phi(c, from_py(phi)); });
    m.def(
        "perturb_f",
        [](const FusionData& c, const std::array<int, 6>& entry, const py::object& delta) {
            return perturb_f(c, entry, from_py(delta));
        });
    m.def(
        "validate_fusion_data", [](const FusionData& c, double tol) { return report_to_py(validate_fusion_data(c, tol)); },
        py::arg("c"), py::arg("tol") = kDefaultTol);
    m.def(
        "check_special_orbifold_datum",
        [](const FusionData& c, double tol) { return report_to_py(check_special_orbifold_datum(c, tol)); },
        py::arg("c"), py::arg("tol") = kDefaultTol);
    m.def(
        "check_pachner_3d", [](const FusionData& c, double tol) { return report_to_py(check_pachner_3d(c, tol)); },
        py::arg("c"), py::arg("tol") = kDefaultTol);
    m.def(
        "tv_evaluate_closed",
        [](const Triangulation& t, const FusionData& c, double tol) { return to_py(tv_evaluate_closed(t, c, tol)); },
        py::arg("t"), py::arg("c"), py::arg("tol") = kDefaultTol);

    m.def("euler_characteristics", [](const std::string& complex_json) {
        py::list out;
        for (const auto& s : euler_characteristics(io::stratified_from_json(parse(complex_json)))) {
            py::dict d;
            d["label"] = s.label;
            d["dim"] = s.dim;
            d["chi"] = s.chi;
            d["chi_tilde"] = s.chi_tilde;
            out.append(d);
        }
        return out;
    });
    m.def("z_euler_evaluate", [](const std::string& complex_json, const std::map<int, py::object>& psi) {
        EulerWeights w;
        for (const auto& [k, v] : psi) w.psi[k] = from_py(v);
        return to_py(z_euler_evaluate(io::stratified_from_json(parse(complex_json)), w));
    });
}

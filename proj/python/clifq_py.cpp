#include "clifq/clifford.hpp"
#include "clifq/dedekind.hpp"
#include "clifq/errors.hpp"
#include "clifq/exceptional.hpp"
#include "clifq/invariants.hpp"
#include "clifq/io.hpp"
#include "clifq/verify.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace clifq;

namespace {

std::vector<std::string> places(const BrauerClass2& c)
{
    std::vector<std::string> out;
    for (const auto& v : c.ramified) out.push_back(v.to_string());
    return out;
}

BrauerClass2 class_of(const std::vector<std::string>& ps)
{
    std::set<nt::Place> s;
    for (const auto& p : ps) s.insert(nt::Place::parse(p));
    return BrauerClass2(s);
}

Scalar to_scalar(const Field& f, const py::handle& h)
{
    if (py::isinstance<Scalar>(h)) return h.cast<Scalar>();
    if (py::isinstance<py::int_>(h)) return Scalar::parse(f, py::str(h).cast<std::string>());
    return Scalar::parse(f, h.cast<std::string>());
}

DiagonalForm make_form(const std::vector<py::object>& entries, const std::string& base)
{
    const Field f = Field::parse(base);
    std::vector<Scalar> e;
    for (const auto& x : entries) e.push_back(to_scalar(f, x));
    return DiagonalForm(f, e);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact Clifford algebras, quadratic forms and their invariants";

    auto base = py::register_exception<Error>(m, "ClifqError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<BoundExceeded>(m, "BoundExceeded", base.ptr());
    py::register_exception<Unsupported>(m, "Unsupported", base.ptr());
    py::register_exception<VerificationFailure>(m, "VerificationFailure", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<UsageError>(m, "UsageError", base.ptr());

    py::class_<Field>(m, "Field")
        .def(py::init(&Field::parse), py::arg("name"))
        .def_property_readonly("name", &Field::name)
        .def_property_readonly("characteristic", &Field::characteristic)
        .def("__eq__", [](const Field& a, const Field& b) { return a == b; })
        .def("__repr__", [](const Field& f) { return "Field('" + f.name() + "')"; });

    py::class_<Scalar>(m, "Scalar")
        .def(py::init([](const Field& f, const py::object& x) { return to_scalar(f, x); }), py::arg("field"), py::arg("value"))
        .def_property_readonly("field", &Scalar::field)
        .def("__str__", &Scalar::to_string)
        .def("__repr__", [](const Scalar& s) { return "Scalar('" + s.to_string() + "')"; })
        .def("__eq__", [](const Scalar& a, const Scalar& b) { return a == b; })
        .def("__add__", [](const Scalar& a, const Scalar& b) { return a + b; })
        .def("__sub__", [](const Scalar& a, const Scalar& b) { return a - b; })
        .def("__mul__", [](const Scalar& a, const Scalar& b) { return a * b; })
        .def("__truediv__", [](const Scalar& a, const Scalar& b) { return a / b; })
        .def("__neg__", [](const Scalar& a) { return -a; })
        .def("sqrt", &Scalar::sqrt)
        .def("is_square", &Scalar::is_square);

    py::class_<DiagonalForm>(m, "DiagonalForm")
        .def(py::init(&make_form), py::arg("entries"), py::arg("base") = "Q")
        .def_readonly("field", &DiagonalForm::field)
        .def_readonly("entries", &DiagonalForm::entries)
        .def_property_readonly("rank", &DiagonalForm::rank)
        .def("__add__", [](const DiagonalForm& a, const DiagonalForm& b) { return orthogonal_sum(a, b); })
        .def("twist", [](const DiagonalForm& q, const py::object& n) { return twist(q, to_scalar(q.field, n)); })
        .def("to_json", [](const DiagonalForm& q) { return io::to_json(q).dump(); })
        .def("__str__", &DiagonalForm::to_string)
        .def("__repr__", [](const DiagonalForm& q) { return "DiagonalForm(" + q.to_string() + ")"; })
        .def("__eq__", [](const DiagonalForm& a, const DiagonalForm& b) { return a == b; });

    m.def("hyperbolic", [](const std::string& base, int r) { return diagonal_of(hyperbolic(Field::parse(base), r)); },
          py::arg("base"), py::arg("r"), "Diagonalization of H(F^r).");
    m.def("form_from_json", [](const std::string& text) { return diagonal_of(io::form_from_json(io::parse(text))); });
    m.def("signed_discriminant", [](const DiagonalForm& q) { return signed_discriminant(q).to_string(); });
    m.def("witt_decompose", [](const DiagonalForm& q) {
        auto w = witt_decompose(q);
        return py::make_tuple(w.witt_index, w.anisotropic_kernel);
    });
    m.def("is_isotropic", py::overload_cast<const DiagonalForm&>(&is_isotropic));
    m.def("is_isometric", &is_isometric);
    m.def("hasse_invariant", [](const DiagonalForm& q, const std::string& v) { return hasse_invariant(q, nt::Place::parse(v)); });

    py::class_<StructureAlgebra>(m, "StructureAlgebra")
        .def_property_readonly("dim", &StructureAlgebra::dim)
        .def_property_readonly("labels", &StructureAlgebra::labels)
        .def_property_readonly("field", &StructureAlgebra::field)
        .def("multiply", &StructureAlgebra::multiply)
        .def("basis", &StructureAlgebra::basis)
        .def("center", [](const StructureAlgebra& a) { return center(a); })
        .def("is_associative", [](const StructureAlgebra& a) { return check_associative(a).associative; })
        .def("to_json", [](const StructureAlgebra& a) { return io::to_json(a).dump(); });
    m.def("algebra_from_json", [](const std::string& text) { return io::algebra_from_json(io::parse(text)); });
    m.def("quaternion", [](const py::object& a, const py::object& b, const std::string& base) {
        const Field f = Field::parse(base);
        return quaternion(to_scalar(f, a), to_scalar(f, b));
    }, py::arg("a"), py::arg("b"), py::arg("base") = "Q");

    m.def("even_clifford", [](const DiagonalForm& q) { return even_clifford(q).algebra; });
    m.def("clifford_bimodule_dim", [](const DiagonalForm& q) { return clifford_bimodule(q).dim(); });
    m.def("discriminant_delta", [](const DiagonalForm& q) { return discriminant_algebra(q).delta; });
    m.def("split_component_classes", [](const DiagonalForm& q) {
        auto sc = split_components(q);
        return py::make_tuple(places(class_of_algebra(sc.plus.algebra)), places(class_of_algebra(sc.minus.algebra)));
    });
    m.def("sum_isomorphism_check", [](const DiagonalForm& q, const DiagonalForm& r) {
        auto s = sum_isomorphism(q, r);
        return s.homomorphism && s.bijective && s.unit_preserving;
    });
    m.def("hyperbolic_model_check", [](const std::string& base, int r) {
        auto h = hyperbolic_model(Field::parse(base), r);
        return h.phi0_homomorphism && h.phi0_bijective && h.phi1_equivariant && h.phi1_bijective;
    });
    m.def("metabolic_split_certificate", [](const DiagonalForm& q) { return metabolic_split_certificate(q).found; });

    m.def("class_of_quaternion", [](const std::string& a, const std::string& b) {
        const Field Q = Field::rationals();
        return places(class_of_quaternion(Scalar::parse(Q, a).rational(), Scalar::parse(Q, b).rational()));
    });
    m.def("quaternion_from_class", [](const std::vector<std::string>& ps) {
        auto [a, b] = quaternion_from_class(class_of(ps));
        return py::make_tuple(a.get_str(), b.get_str());
    });
    m.def("hilbert_symbol", [](const std::string& a, const std::string& b, const std::string& v) {
        const Field Q = Field::rationals();
        return nt::hilbert_symbol(Scalar::parse(Q, a).rational(), Scalar::parse(Q, b).rational(), nt::Place::parse(v));
    });

    m.def("e0", py::overload_cast<const DiagonalForm&>(&e0));
    m.def("e1", [](const DiagonalForm& q) { return e1(q).to_string(); });
    m.def("e2", [](const DiagonalForm& q) { return places(e2(q)); });
    m.def("construct_preimage", [](const std::vector<std::string>& ps) { return construct_preimage(class_of(ps)); });
    m.def("milnor_reciprocity", [](const DiagonalForm& q) { return milnor_reciprocity_check(q); });
    m.def("constant_witt_lift", &constant_witt_lift);

    m.def("reduced_norm_form", [](const py::object& a, const py::object& b, const std::string& base) {
        const Field f = Field::parse(base);
        return reduced_norm_form(to_scalar(f, a), to_scalar(f, b)).form;
    }, py::arg("a"), py::arg("b"), py::arg("base") = "Q");
    m.def("albert_form", [](const py::object& a, const py::object& b, const py::object& c, const py::object& d, const std::string& base) {
        const Field f = Field::parse(base);
        return albert_form(to_scalar(f, a), to_scalar(f, b), to_scalar(f, c), to_scalar(f, d)).form;
    }, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("base") = "Q");
    m.def("pfaffian_roundtrip", [](long a, long b, long c, long d) {
        const Field Q = Field::rationals();
        auto r = pfaffian_roundtrip(Scalar::from_int(Q, a), Scalar::from_int(Q, b), Scalar::from_int(Q, c), Scalar::from_int(Q, d));
        py::dict out;
        out["albert_class"] = places(r.albert_class);
        out["expected"] = places(r.expected);
        out["holds"] = r.holds;
        return out;
    });

    m.def("class_group_mod_squares", [](long d) {
        py::list out;
        for (const auto& r : class_group_mod_squares(QuadOrder(d))) {
            auto [a, b] = r.ideal.basis();
            out.append(py::make_tuple(r.label, py::make_tuple(a.to_string(), b.to_string())));
        }
        return out;
    });
    m.def("hyperbolic_order_check", [](long d) {
        QuadOrder o(d);
        auto one = FracIdeal::unit(o);
        auto above = primes_above(o, 2);
        auto c = even_clifford_order(hyperbolic_ideal_form({one}, above.empty() ? one : above.front()));
        return py::make_tuple(c.closed, order_center_split(c));
    }, "Closure and O x O center for H_P(O), P the first prime above 2.");

    m.def("suite_names", [] {
        std::vector<std::string> out;
        for (const auto& s : suites()) out.push_back(s.name);
        return out;
    });
    m.def("run_suite_json", [](const std::string& name, unsigned long seed, size_t jobs) {
        VerificationReport r;
        {
            py::gil_scoped_release release;
            r = run_suite(name, seed, jobs);
        }
        return to_json(r).dump();
    }, py::arg("name"), py::arg("seed") = 0, py::arg("jobs") = 1);
    m.def("convert", &io::convert, py::arg("in_path"), py::arg("out_path"), py::arg("kind") = "json");
}

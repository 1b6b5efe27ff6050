#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "prodiff/freealg.hpp"
#include "prodiff/json_io.hpp"
#include "prodiff/lie.hpp"
#include "prodiff/norms.hpp"
#include "prodiff/series.hpp"
#include "prodiff/verify.hpp"

namespace py = pybind11;
using namespace prodiff;

namespace {

// Rationals cross the boundary as fractions.Fraction. Incoming values may be
// int, Fraction or an exact string; floats are refused rather than rounded.
Rational from_py(const py::handle& obj)
{
    if (py::isinstance<py::float_>(obj)) throw ParseError("floats are not exact; pass a Fraction, int or string");
    return parse_rational(py::str(obj).cast<std::string>());
}

py::object to_py(const Rational& r)
{
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::int_(py::str(r.get_num().get_str())), py::int_(py::str(r.get_den().get_str())));
}

std::vector<Rational> rationals(const py::sequence& seq)
{
    std::vector<Rational> out;
    for (const auto& item : seq) out.push_back(from_py(item));
    return out;
}

py::list to_list(std::span<const Rational> values)
{
    py::list out;
    for (const auto& v : values) out.append(to_py(v));
    return out;
}

py::dict norm_dict(const NormValue& v)
{
    py::dict d;
    d["value"] = to_py(v.value);
    d["kind"] = std::string(to_string(v.kind));
    if (v.witness_column) d["witness_column"] = *v.witness_column;
    return d;
}

// {(i1, i2, ...): c} with indices weakly increasing.
UElement uelement_from(const py::dict& terms)
{
    UElement u;
    for (const auto& [key, value] : terms) {
        std::vector<unsigned> idx;
        for (const auto& i : key.cast<py::tuple>()) idx.push_back(i.cast<unsigned>());
        u.add(PBWMonomial(idx), from_py(value));
    }
    return u;
}

py::dict uelement_to(const UElement& u)
{
    py::dict out;
    for (const auto& [d, comp] : u.components()) {
        for (const auto& [m, c] : comp) out[py::tuple(py::cast(m.indices()))] = to_py(c);
    }
    return out;
}

std::string to_json_text(const nlohmann::json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact formal diffeomorphisms, vector fields and quotient norms";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    py::class_<FormalDiffeo>(m, "Diffeo")
        .def(py::init([](std::size_t order, const py::sequence& tail) {
                 return FormalDiffeo(order, rationals(tail));
             }),
             py::arg("order"), py::arg("tail"), "x + a_2 x^2 + ... + a_N x^N from [a_2, ..., a_N]")
        .def_static("identity", &FormalDiffeo::identity)
        .def_property_readonly("order", &FormalDiffeo::order)
        .def_property_readonly("tail", [](const FormalDiffeo& g) { return to_list(g.tail()); })
        .def("coeff", [](const FormalDiffeo& g, std::size_t j) { return to_py(g.coeff(j)); })
        .def("is_identity", &FormalDiffeo::is_identity)
        .def("truncate_to", &FormalDiffeo::truncate_to)
        .def("to_json", [](const FormalDiffeo& g) { return to_json_text(json::to_json(g)); })
        .def_static("from_json", [](const std::string& s) { return json::diffeo_from_json(json::parse(s)); })
        .def("__eq__", [](const FormalDiffeo& a, const FormalDiffeo& b) { return a == b; })
        .def("__matmul__", [](const FormalDiffeo& a, const FormalDiffeo& b) { return compose(a, b); })
        .def("__repr__", [](const FormalDiffeo& g) { return "Diffeo(" + json::to_json(g).dump() + ")"; });

    py::class_<FormalVectorField>(m, "Field")
        .def(py::init([](std::size_t order, const py::sequence& coeffs) {
                 return FormalVectorField(order, rationals(coeffs));
             }),
             py::arg("order"), py::arg("coeffs"), "sum p_j x^{j+1} d/dx from [p_1, ..., p_N]")
        .def_static("basis", [](std::size_t order, std::size_t j, const py::object& c) {
            return FormalVectorField::basis(order, j, from_py(c));
        }, py::arg("order"), py::arg("j"), py::arg("c") = 1)
        .def_property_readonly("order", &FormalVectorField::order)
        .def_property_readonly("coeffs", [](const FormalVectorField& f) { return to_list(f.coeffs()); })
        .def("coeff", [](const FormalVectorField& f, std::size_t j) { return to_py(f.coeff(j)); })
        .def("is_zero", &FormalVectorField::is_zero)
        .def("to_json", [](const FormalVectorField& f) { return to_json_text(json::to_json(f)); })
        .def_static("from_json", [](const std::string& s) { return json::field_from_json(json::parse(s)); })
        .def("__eq__", [](const FormalVectorField& a, const FormalVectorField& b) { return a == b; })
        .def("__repr__", [](const FormalVectorField& f) { return "Field(" + json::to_json(f).dump() + ")"; });

    m.def("compose", &compose, "Group product whose series is b(a(x))");
    m.def("substitute", [](const FormalDiffeo& outer, const FormalDiffeo& inner) { return substitute(outer, inner); }, "outer(inner(x))");
    m.def("invert", [](const FormalDiffeo& g, const std::string& algorithm) {
        if (algorithm == "lagrange") return invert_lagrange(g);
        if (algorithm == "recursive") return invert_recursive(g);
        throw ParseError("algorithm must be lagrange or recursive");
    }, py::arg("gamma"), py::arg("algorithm") = "lagrange");
    m.def("scale", [](const FormalDiffeo& g, const py::object& s) { return scale_automorphism(g, from_py(s)); });
    m.def("scale_field", [](const FormalVectorField& f, const py::object& s) { return scale_field(f, from_py(s)); });
    m.def("bracket", &bracket);
    m.def("exp", [](const FormalVectorField& f, const std::string& algorithm) {
        if (algorithm == "matrix") return exp_field(f);
        if (algorithm == "flow") return exp_field_flow(f);
        throw ParseError("algorithm must be matrix or flow");
    }, py::arg("field"), py::arg("algorithm") = "matrix");
    m.def("log", &log_diffeo);
    m.def("bch", &bch);

    m.def("w_norm", [](const FormalDiffeo& g, const py::object& sigma, bool finite) {
        return norm_dict(w_norm(g, from_py(sigma), finite));
    }, py::arg("gamma"), py::arg("sigma"), py::arg("finitely_supported") = false);
    m.def("field_norm_bounds", [](const FormalVectorField& f, const py::object& t) {
        const FieldNormBound b = field_norm_bound(f, from_py(t));
        return py::make_tuple(norm_dict(b.lower), norm_dict(b.upper));
    });
    m.def("qn_norm", [](std::size_t n) { return to_py(qn_norm(n).value); });
    m.def("u_combinatorial", [](const std::vector<unsigned>& k) { return to_py(u_combinatorial(std::span<const unsigned>(k))); });

    m.def("q_norm", [](const py::dict& terms, const py::object& t) {
        const QNormResult q = qt_norm(uelement_from(terms), from_py(t));
        py::list certs;
        for (const auto& c : q.certificates) {
            py::dict comb;
            for (const auto& [w, v] : c.combination) comb[py::str(to_string(w))] = to_py(v);
            certs.append(py::make_tuple(c.degree, to_py(c.value), comb));
        }
        return py::make_tuple(to_py(q.value.value), certs);
    }, py::arg("terms"), py::arg("t") = 1, "Q_[t] of {(i1, ..., ik): c}; returns (value, certificates)");
    m.def("q_upper", [](const FormalVectorField& f, const py::object& t) {
        const UpperVectBound b = q_upper_vect(f, from_py(t));
        return py::make_tuple(to_py(b.certified.value), to_py(b.as_displayed));
    });
    m.def("q_lower", [](const py::dict& terms, const py::object& t, std::size_t columns) {
        const LowerVectBound b = q_lower_vect(uelement_from(terms), from_py(t), columns);
        return py::make_tuple(norm_dict(b.represented), to_py(b.scale));
    }, py::arg("terms"), py::arg("t"), py::arg("columns") = 30);
    m.def("straighten", [](const std::vector<unsigned>& product, const std::string& strategy) {
        const RewriteStrategy s = strategy == "rightmost" ? RewriteStrategy::rightmost : RewriteStrategy::leftmost;
        return uelement_to(pbw_straighten(RawProducts{{product, Rational(1)}}, s));
    }, py::arg("product"), py::arg("strategy") = "leftmost");

    m.def("verify", [](const std::string& suite, std::size_t order, std::uint64_t seed) {
        VerifyConfig cfg;
        cfg.order = order;
        cfg.seed = seed;
        py::gil_scoped_release release;
        return run_suite(suite, cfg).dump(2);
    }, py::arg("suite"), py::arg("order") = 12, py::arg("seed") = 7, "JSON report text");
}

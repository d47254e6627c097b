#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lamination/error.hpp"
#include "lamination/fixtures.hpp"
#include "lamination/gaps.hpp"
#include "lamination/geolam.hpp"
#include "lamination/io.hpp"
#include "lamination/quadratic.hpp"
#include "lamination/render.hpp"

namespace py = pybind11;
using namespace lam;

namespace {

// Fraction, int or "p/q" string
Angle to_angle(const py::handle& h) {
    if (py::isinstance<py::str>(h)) return Angle::parse(h.cast<std::string>());
    return Angle::parse(py::str(h).cast<std::string>());
}

py::object from_angle(const Angle& a) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(a.str());
}

Chord to_chord(const py::handle& h) {
    auto s = h.cast<py::sequence>();
    if (s.size() != 2) throw Error(ErrorCode::invalid_input, "a chord needs two endpoints");
    return Chord(to_angle(s[0]), to_angle(s[1]));
}

py::tuple from_chord(const Chord& c) { return py::make_tuple(from_angle(c.p()), from_angle(c.q())); }

std::vector<Angle> to_angles(const py::iterable& it) {
    std::vector<Angle> v;
    for (auto x : it) v.push_back(to_angle(x));
    return v;
}

py::list from_angles(const std::vector<Angle>& v) {
    py::list out;
    for (const auto& a : v) out.append(from_angle(a));
    return out;
}

std::vector<std::vector<Angle>> to_sets(const py::iterable& it) {
    std::vector<std::vector<Angle>> v;
    for (auto s : it) v.push_back(to_angles(s.cast<py::iterable>()));
    return v;
}

py::dict report_dict(const InvarianceReport& r) {
    py::list viol;
    for (const auto& v : r.violations) {
        py::list w;
        for (const auto& c : v.witness) w.append(from_chord(c));
        viol.append(py::dict(py::arg("rule") = v.rule, py::arg("witness") = w, py::arg("detail") = v.detail));
    }
    return py::dict(py::arg("passed") = r.pass(), py::arg("violations") = viol,
                    py::arg("exemptions") = r.exemptions.size(), py::arg("json") = r.to_json());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact invariant laminations of the circle";

    static py::handle exc = py::exception<Error>(m, "LaminationError").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = py::reinterpret_borrow<py::object>(exc)(e.what());
            err.attr("code") = error_code_name(e.code());
            err.attr("witness") = e.witness();
            PyErr_SetObject(exc.ptr(), err.ptr());
        }
    });

    m.def("sigma", [](int d, py::handle a) { return from_angle(sigma(d, to_angle(a))); }, py::arg("d"), py::arg("angle"));
    m.def("orbit", [](int d, py::handle a) {
        auto o = orbit_info(d, to_angle(a));
        return py::make_tuple(from_angles(o.orbit), o.preperiod, o.period);
    }, py::arg("d"), py::arg("angle"), "orbit points, preperiod, period");
    m.def("linked", [](py::handle a, py::handle b) { return linked(to_chord(a), to_chord(b)); });
    m.def("escape_depth", [](int d, py::handle c) { return escape_depth(d, to_chord(c)); });

    py::class_<Geolamination>(m, "Geolamination")
        .def(py::init<int, int>(), py::arg("degree") = 2, py::arg("depth") = 0)
        .def_property_readonly("degree", &Geolamination::degree)
        .def_property("depth", &Geolamination::depth, &Geolamination::set_depth)
        .def_readwrite("label", &Geolamination::label)
        .def("__len__", &Geolamination::size)
        .def("__contains__", [](const Geolamination& L, py::handle c) { return L.contains(to_chord(c)); })
        .def("__eq__", [](const Geolamination& a, const Geolamination& b) { return a == b; })
        .def("insert", [](Geolamination& L, py::handle c) { return L.insert(to_chord(c)); })
        .def("leaves", [](const Geolamination& L) {
            py::list out;
            for (const auto& c : L.leaf_list()) out.append(from_chord(c));
            return out;
        })
        .def("generation", [](const Geolamination& L, py::handle c) { return L.generation(to_chord(c)); })
        .def("to_lam", [](const Geolamination& L) { return serialize(L); })
        .def_static("from_lam", &parse_lam, py::arg("text"))
        .def("render_svg", [](const Geolamination& L, int size, bool geodesic, bool labels) {
            return render_svg(L, RenderOptions{size, geodesic, labels});
        }, py::arg("size") = 512, py::arg("geodesic") = false, py::arg("labels") = false)
        .def("__repr__", [](const Geolamination& L) {
            return "<Geolamination degree=" + std::to_string(L.degree()) + " depth=" + std::to_string(L.depth()) +
                   " leaves=" + std::to_string(L.size()) + (L.label.empty() ? "" : " '" + L.label + "'") + ">";
        });

    m.def("pullback", [](py::iterable portrait, int depth, int degree) {
        return pullback_construct(degree, CriticalPortrait{to_sets(portrait)}, depth, ChoicePolicy::canonical());
    }, py::arg("portrait"), py::arg("depth"), py::arg("degree") = 2,
       "canonical pullback of a critical portrait given as a list of angle sets");
    m.def("from_equivalence", [](py::iterable classes, int depth, int degree) {
        return from_equivalence(degree, to_sets(classes), depth);
    }, py::arg("classes"), py::arg("depth"), py::arg("degree") = 2);
    m.def("from_minor", [](py::handle minor, int depth) { return lamination_from_minor(to_chord(minor), depth); },
          py::arg("minor"), py::arg("depth"));
    m.def("fixture", [](const std::string& name, int depth) {
        if (name == "basilica") return fixtures::basilica(depth);
        if (name == "rabbit") return fixtures::rabbit(depth);
        if (name == "airplane") return fixtures::airplane(depth);
        if (name == "l12") return fixtures::l12(depth);
        if (name == "l12a") return fixtures::l12a(depth);
        if (name == "siegel") return fixtures::siegel(depth);
        throw Error(ErrorCode::invalid_input, "unknown fixture '" + name + "'");
    }, py::arg("name"), py::arg("depth"));

    m.def("check", [](const Geolamination& L, const std::string& kind) {
        if (kind == "sibling") return report_dict(is_sibling_invariant(L));
        if (kind == "thurston") return report_dict(is_thurston_invariant(L));
        if (kind == "unlinked") return report_dict(verify_unlinked(L));
        throw Error(ErrorCode::invalid_input, "unknown check '" + kind + "'");
    }, py::arg("lamination"), py::arg("kind") = "sibling");

    m.def("gaps", [](const Geolamination& L, bool classify) {
        py::list out;
        for (const auto& G : gaps_of(L)) {
            py::list edges;
            for (const auto& e : G.edges) edges.append(from_chord(e));
            py::dict d(py::arg("vertices") = from_angles(G.vertices), py::arg("edges") = edges,
                       py::arg("infinite") = G.infinite(), py::arg("frontier_exempt") = G.frontier_exempt);
            if (classify) {
                auto c = classify_gap(L, G);
                d["kind"] = gap_kind_name(c.kind);
                d["k"] = c.k;
                d["period"] = c.period ? py::cast(*c.period) : py::none();
                d["preperiod"] = c.preperiod ? py::cast(*c.preperiod) : py::none();
            }
            out.append(d);
        }
        return out;
    }, py::arg("lamination"), py::arg("classify") = false);

    m.def("majors_and_minor", [](const Geolamination& L) {
        auto mp = majors_and_minor(L);
        return py::dict(py::arg("major") = from_chord(mp.M), py::arg("sibling") = from_chord(mp.M_sibling),
                        py::arg("minor") = from_chord(mp.minor));
    });
    m.def("is_hyperbolic", &is_hyperbolic);
    m.def("is_qml_leaf", [](py::handle c, int depth) { return is_qml_leaf(to_chord(c), depth); },
          py::arg("minor"), py::arg("depth") = 8);
    m.def("qml_approx", [](int max_period, int depth, int jobs) {
        QmlApprox q;
        {
            py::gil_scoped_release nogil;
            q = qml_approx(max_period, depth, jobs);
        }
        py::list leaves;
        for (const auto& c : q.leaves) leaves.append(from_chord(c));
        return py::make_tuple(leaves, from_angles(q.degenerate));
    }, py::arg("max_period"), py::arg("depth") = 8, py::arg("jobs") = 1, "(leaves, degenerate points)");
    m.def("limit_geolaminations", &limit_geolaminations, py::arg("lamination"), py::arg("depth"));
    m.def("minor_quotient", [](const std::vector<Geolamination>& family) {
        return quotient_json(minor_quotient(family));
    }, py::arg("family"), "JSON list of minor classes");
    m.def("hausdorff", [](const Geolamination& a, const Geolamination& b, int resolution, int jobs) {
        py::gil_scoped_release nogil;
        return hausdorff_distance(a, b, resolution, jobs);
    }, py::arg("a"), py::arg("b"), py::arg("resolution") = 256, py::arg("jobs") = 1);
    m.def("siegel_set", [](py::handle diameter, int iters) {
        auto s = siegel_set(to_chord(diameter), iters);
        return py::make_tuple(from_angles(s.survivors), from_angles(s.periodic));
    }, py::arg("diameter"), py::arg("iterations"), "(survivors, periodic survivors)");
}

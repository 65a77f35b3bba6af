#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "glpstar/cli.hpp"
#include "glpstar/decide.hpp"
#include "glpstar/oracle.hpp"
#include "glpstar/parser.hpp"
#include "glpstar/proofs.hpp"
#include "glpstar/reductions.hpp"

namespace py = pybind11;
using namespace glpstar;

namespace {

using FormulaLike = std::variant<Formula, std::string>;

Formula to_formula(const FormulaLike& f) {
    if (const auto* s = std::get_if<std::string>(&f)) return parse_formula(*s);
    return std::get<Formula>(f);
}

SystemId to_system(const std::string& name) {
    const auto s = parse_system(name);
    if (!s) throw py::value_error("unknown system '" + name + "'");
    return *s;
}

ModalitySet theta_of(const std::optional<std::vector<unsigned>>& theta, const Formula& f) {
    if (theta) return {theta->begin(), theta->end()};
    ModalitySet out;
    for (unsigned n : modalities_in(f)) out.insert(n);
    return out;
}

py::dict report_dict(const ViolationReport& r) {
    py::list items;
    for (const auto& v : r.violations) items.append(v.describe());
    py::dict d;
    d["ok"] = r.empty();
    d["violations"] = items;
    return d;
}

}  // namespace

PYBIND11_MODULE(_glpstar, m) {
    m.doc() = "Decision procedures for many-sorted provability logics";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SortConflict>(m, "SortConflict", PyExc_ValueError);
    py::register_exception<ResourceLimitExceeded>(m, "ResourceLimitExceeded", PyExc_RuntimeError);

    py::class_<Formula>(m, "Formula")
        .def(py::init([](const std::string& text) { return parse_formula(text); }), py::arg("text"))
        .def_property_readonly("sort", [](const Formula& f) { return sort_of(f).to_string(); })
        .def_property_readonly("size", &Formula::size)
        .def("__str__", [](const Formula& f) { return render_formula(f); })
        .def("__repr__", [](const Formula& f) { return "Formula('" + render_formula(f) + "')"; })
        .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
        .def("__hash__", [](const Formula& f) { return f.hash(); });

    py::class_<KripkeModel>(m, "Model")
        .def(py::init([](const std::string& text) { return parse_model(text); }), py::arg("text"))
        .def_property_readonly("worlds", [](const KripkeModel& k) { return k.frame.names(); })
        .def_property_readonly("root",
                               [](const KripkeModel& k) -> std::optional<std::string> {
                                   if (!k.root) return std::nullopt;
                                   return k.frame.name(*k.root);
                               })
        .def("__len__", &KripkeModel::size)
        .def("__str__", [](const KripkeModel& k) { return render_model(k); })
        .def("dot", [](const KripkeModel& k) { return export_dot(k, k.root); })
        .def("holds",
             [](const KripkeModel& k, const std::string& world, const FormulaLike& f) {
                 return model_check(k, world, to_formula(f));
             },
             py::arg("world"), py::arg("formula"))
        .def("valid", [](const KripkeModel& k, const FormulaLike& f) { return valid_in_model(k, to_formula(f)); })
        .def("validate", [](const KripkeModel& k) {
            py::dict d;
            d["frame"] = report_dict(check_jstar_frame(k.frame));
            d["persistence"] = report_dict(check_strong_persistence(k));
            return d;
        });

    py::class_<Verdict>(m, "Verdict")
        .def_readonly("theorem", &Verdict::theorem)
        .def_property_readonly("target", [](const Verdict& v) { return v.target; })
        .def_property_readonly("countermodel",
                               [](const Verdict& v) -> std::optional<KripkeModel> {
                                   if (!v.countermodel) return std::nullopt;
                                   return v.countermodel->model;
                               })
        .def_property_readonly("rounds", [](const Verdict& v) {
            py::list out;
            for (const auto& r : v.stats.rounds) out.append(py::make_tuple(r.round, r.candidates, r.survivors));
            return out;
        })
        .def("__bool__", [](const Verdict& v) { return v.theorem; })
        .def("__repr__", [](const Verdict& v) { return std::string(v.theorem ? "<theorem>" : "<non-theorem>"); });

    m.def("parse", [](const std::string& text) { return parse_formula(text); }, py::arg("text"));
    m.def("sort_of", [](const FormulaLike& f) { return sort_of(to_formula(f)).to_string(); }, py::arg("formula"));

    m.def(
        "decide",
        [](const std::string& system, const FormulaLike& f, const std::string& via, bool literal_boxes,
           bool minimize) {
            DecideOptions opt;
            if (via != "mplus" && via != "nplus") throw py::value_error("via must be 'mplus' or 'nplus'");
            opt.route = via == "nplus" ? GlpStarRoute::NPlus : GlpStarRoute::MPlus;
            opt.nplus_variant = literal_boxes ? NPlusVariant::Literal : NPlusVariant::Default;
            opt.minimize = minimize;
            const SystemId sys = to_system(system);
            const Formula g = to_formula(f);
            py::gil_scoped_release release;
            return decide(sys, g, opt);
        },
        py::arg("system"), py::arg("formula"), py::arg("via") = "mplus", py::arg("literal_boxes") = false,
        py::arg("minimize") = true);

    m.def(
        "reduce",
        [](const std::string& kind, const FormulaLike& fl, std::optional<std::vector<unsigned>> theta) {
            const Formula f = to_formula(fl);
            if (kind == "m") return m_formula(f);
            if (kind == "mplus") return m_plus(f);
            if (kind == "n") return n_formula(f);
            if (kind == "n-crossed") return n_formula(f, NPairing::Crossed);
            if (kind == "nplus") return n_plus(f);
            if (kind == "nplus-literal") return n_plus(f, NPlusVariant::Literal);
            if (kind == "h") return h_formula(f);
            if (kind == "rtheta") return r_theta(f, theta_of(theta, f));
            if (kind == "rthetaplus") return r_theta_plus(f, theta_of(theta, f));
            throw py::value_error("unknown reduction '" + kind + "'");
        },
        py::arg("kind"), py::arg("formula"), py::arg("theta") = py::none());

    m.def(
        "closure",
        [](const FormulaLike& f) {
            const FormulaSet d = adequate_closure({to_formula(f)});
            const auto levels = modal_levels(d);
            return py::make_tuple(d.sorted(), std::vector<unsigned>(levels.begin(), levels.end()));
        },
        py::arg("formula"), "Sorted members of the adequate closure and its levels.");

    m.def(
        "oracle",
        [](const FormulaLike& fl, std::size_t max_worlds) -> py::object {
            SearchBudget b;
            b.max_worlds = max_worlds;
            const Formula f = to_formula(fl);
            OracleResult r;
            {
                py::gil_scoped_release release;
                r = brute_force_countermodel(f, b);
            }
            if (!r.found()) return py::none();
            KripkeModel k = *r.model;
            k.root = r.world;
            return py::cast(k);
        },
        py::arg("formula"), py::arg("max_worlds") = 4, "First countermodel within the bound, rooted at a failing world.");

    m.def(
        "check_proof",
        [](const std::string& text, bool loeb_literal) {
            MatchOptions opt;
            opt.loeb_literal = loeb_literal;
            const ProofCheck c = check_proof(parse_proof(text), opt);
            return py::make_tuple(c.accepted, c.line, c.reason);
        },
        py::arg("text"), py::arg("loeb_literal") = false);

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            const cli::Result r = cli::run(args);
            return py::make_tuple(r.status, r.out, r.err);
        },
        py::arg("args"), "Run a glpw command; returns (status, stdout, stderr).");
}

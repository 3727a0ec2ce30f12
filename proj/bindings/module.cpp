#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "pdwa/engine.hpp"
#include "pdwa/qelim.hpp"

namespace py = pybind11;
using namespace pdwa;

namespace {

Int to_int(const py::int_& v) { return Int(py::str(v).cast<std::string>()); }

py::int_ from_int(const Int& v) {
    PyObject* obj = PyLong_FromString(v.get_str().c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

CompileOptions make_options(int base, bool minimize_steps, const std::string& backend) {
    CompileOptions opts;
    opts.base = base;
    opts.minimize_each_step = minimize_steps;
    if (backend == "qe")
        opts.backend = Backend::QeThenAutomata;
    else if (backend != "automata")
        throw std::invalid_argument("backend must be 'automata' or 'qe'");
    return opts;
}

// value copy of a compiled automaton plus enough context to test points
struct PyAutomaton {
    Dwa dwa;

    size_t states() const { return dwa.state_count(); }
    bool accepts(const std::vector<py::int_>& point) const {
        std::vector<Int> z;
        z.reserve(point.size());
        for (auto& v : point) z.push_back(to_int(v));
        return membership(dwa, encode_int(z, dwa.base));
    }
};

PyAutomaton compile_text(const std::string& source, int base, bool minimize_steps,
                         const std::string& backend) {
    Parsed p = parse(source);
    CompileOptions opts = make_options(base, minimize_steps, backend);
    return {minimize(compile(p.phi, p.vars, opts))};
}

}  // namespace

PYBIND11_MODULE(_pdwa, m) {
    m.doc() = "deterministic word automata for linear integer arithmetic";
    m.attr("__version__") = PDWA_VERSION;

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<PyAutomaton>(m, "Automaton")
        .def_property_readonly("states", &PyAutomaton::states)
        .def_property_readonly("arity", [](const PyAutomaton& a) { return a.dwa.arity; })
        .def_property_readonly("base", [](const PyAutomaton& a) { return a.dwa.base; })
        .def("accepts", &PyAutomaton::accepts, py::arg("point"),
             "membership of an integer tuple, one value per track")
        .def("to_dot", [](const PyAutomaton& a) { return to_dot(a.dwa); })
        .def("to_json", [](const PyAutomaton& a) { return to_json_text(a.dwa); })
        .def("__repr__", [](const PyAutomaton& a) {
            return "<Automaton states=" + std::to_string(a.dwa.state_count()) +
                   " arity=" + std::to_string(a.dwa.arity) +
                   " base=" + std::to_string(a.dwa.base) + ">";
        });

    m.def(
        "decide",
        [](const std::string& source, int base, const std::string& backend) {
            Parsed p = parse(source);
            return decide(p.phi, p.vars, make_options(base, true, backend));
        },
        py::arg("formula"), py::arg("base") = 2, py::arg("backend") = "automata",
        "truth value of a sentence");

    m.def(
        "solve",
        [](const std::string& source, int base) -> py::object {
            Parsed p = parse(source);
            auto model = solve(p.phi, p.vars, make_options(base, true, "automata"));
            if (!model) return py::none();
            py::dict out;
            for (auto& [var, value] : *model)
                out[py::str(p.vars.name(var))] = from_int(value);
            return out;
        },
        py::arg("formula"), py::arg("base") = 2,
        "a satisfying assignment as {variable: int}, or None");

    m.def(
        "qe",
        [](const std::string& source) {
            Parsed p = parse(source);
            return formula_text(eliminate_all(p.phi, p.vars), p.vars);
        },
        py::arg("formula"), "quantifier-free equivalent as text");

    m.def("compile", &compile_text, py::arg("formula"), py::arg("base") = 2,
          py::arg("minimize_steps") = true, py::arg("backend") = "automata",
          "compile to a minimal automaton over the free variables in pool order");

    m.def(
        "automaton_from_json",
        [](const std::string& text) { return PyAutomaton{from_json_text(text)}; },
        py::arg("text"), "load an automaton from its JSON serialization");

    m.def(
        "mult_table",
        [](int m_digits, int base) { return PyAutomaton{build_mult(m_digits, base)}; },
        py::arg("m"), py::arg("base") = 2,
        "multiplication-table automaton over (a, b, a*b) with m-digit factors");

    m.def(
        "crosscheck",
        [](const std::string& source, int base) {
            Parsed p = parse(source);
            CrosscheckReport r = crosscheck(p.phi, p.vars, make_options(base, true, "automata"));
            py::dict out;
            out["formula"] = r.formula;
            out["automata_size"] = r.automata_size;
            out["qe_automata_size"] = r.qe_automata_size;
            out["languages_equal"] = r.languages_equal;
            out["samples_checked"] = r.samples_checked;
            out["sample_mismatches"] = r.sample_mismatches;
            out["pass"] = r.pass;
            return out;
        },
        py::arg("formula"), py::arg("base") = 2,
        "compare the automata and QE-then-automata backends on one formula");
}

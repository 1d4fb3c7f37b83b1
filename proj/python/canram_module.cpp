#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "canram/canonicity.hpp"
#include "canram/coloring_io.hpp"
#include "canram/commands.hpp"
#include "canram/derived_partition.hpp"

namespace py = pybind11;
using namespace canram;

namespace {

py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<PositionPair> to_pairs(
    int n, const std::vector<std::pair<std::vector<int>, std::vector<int>>>& raw) {
  std::vector<PositionPair> out;
  for (const auto& [p, q] : raw) out.emplace_back(PositionSet(n, p), PositionSet(n, q));
  return out;
}

}  // namespace

PYBIND11_MODULE(_canram, m) {
  m.doc() = "Canonical Ramsey reduction engine";

  static PyObject* error =
      py::exception<Error>(m, "CanramError", PyExc_ValueError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string message = std::string(errc_name(e.code())) + ": " + e.what();
      PyErr_SetString(error, message.c_str());
    }
  });

  py::class_<Coloring>(m, "Coloring")
      .def_static(
          "generator",
          [](const std::string& spec, int n, Element N) {
            return make_coloring(parse_generator(spec), n, N);
          },
          py::arg("spec"), py::arg("n"), py::arg("N"))
      .def_static(
          "from_table",
          [](int n, Element N, const std::vector<ColorId>& lex_colors) {
            return Coloring::from_lex_table(n, N, lex_colors);
          },
          py::arg("n"), py::arg("N"), py::arg("lex_colors"),
          "Colours of the n-subsets of range(N) in lexicographic order.")
      .def_static("from_file", &read_coloring_file, py::arg("path"))
      .def_property_readonly("n", &Coloring::arity)
      .def_property_readonly("N", &Coloring::universe)
      .def_property_readonly("description", &Coloring::description)
      .def("color",
           [](const Coloring& c, const std::vector<Element>& s) {
             return c.color_of(KSubset(s));
           })
      .def("lex_table", &Coloring::lex_table)
      .def("__repr__", [](const Coloring& c) {
        return "<Coloring " + c.description() + " n=" + std::to_string(c.arity()) +
               " N=" + std::to_string(c.universe()) + ">";
      });

  py::class_<Report>(m, "Report")
      .def_property_readonly("data", [](const Report& r) { return to_python(r.data); })
      .def_property_readonly("text", [](const Report& r) { return r.text; })
      .def_property_readonly("exit_code", [](const Report& r) { return r.exit_code; })
      .def("render", &Report::render, py::arg("json") = false);

  m.def("atoms", &cmd_atoms, py::arg("coloring"));
  m.def("verify", &cmd_verify, py::arg("coloring"), py::arg("size"),
        py::arg("max_gap") = 8);
  m.def(
      "find",
      [](const Coloring& c, std::size_t size, const std::string& mode) {
        if (mode != "homogeneous" && mode != "canonical") {
          throw Error(Errc::kInvalidArgument, "mode must be homogeneous or canonical");
        }
        return cmd_find(c, mode == "canonical" ? FindMode::kCanonical : FindMode::kHomogeneous,
                        size);
      },
      py::arg("coloring"), py::arg("size"), py::arg("mode") = "homogeneous");
  m.def(
      "cascade",
      [](const Coloring& c, const std::vector<Element>& start, std::optional<std::size_t> atom,
         std::optional<std::vector<Element>> atom_of,
         const std::vector<std::pair<std::vector<int>, std::vector<int>>>& pairs) {
        CascadeOptions o;
        o.atom_index = atom;
        if (atom_of) o.atom_of = KSubset(*atom_of);
        o.start = KSubset(start);
        o.pairs = to_pairs(c.arity(), pairs);
        o.full = pairs.empty();
        return cmd_cascade(c, o);
      },
      py::arg("coloring"), py::arg("start"), py::arg("atom") = py::none(),
      py::arg("atom_of") = py::none(),
      py::arg("pairs") = std::vector<std::pair<std::vector<int>, std::vector<int>>>{});
  m.def("analyze_fn", &cmd_analyze_fn, py::arg("coloring"), py::arg("cap") = 8,
        py::arg("pool") = std::vector<Element>{});
  m.def("selftest", &cmd_selftest);

  m.def(
      "signature",
      [](const Coloring& c, const std::vector<Element>& z) {
        return signature_of(c, KSubset(z)).hex();
      },
      py::arg("coloring"), py::arg("z"));
  m.def(
      "is_canonical",
      [](const Coloring& c, const std::vector<Element>& X, const std::vector<int>& I) {
        std::uint32_t mask = 0;
        for (int i : I) {
          if (i < 0 || i >= c.arity()) throw Error(Errc::kInvalidArgument, "index out of range");
          mask |= 1U << i;
        }
        return static_cast<bool>(check_canonical(c, KSubset(X), IndexSet(c.arity(), mask)));
      },
      py::arg("coloring"), py::arg("X"), py::arg("I"));
  m.def(
      "sparsity",
      [](const std::vector<Element>& X, const std::vector<Element>& x) {
        return sparsity(RankedSet(X), KSubset(x));
      },
      py::arg("X"), py::arg("x"));
  m.def(
      "reach",
      [](const std::vector<Element>& X, const std::vector<Element>& x,
         const std::vector<Element>& y) { return reach(RankedSet(X), KSubset(x), KSubset(y)); },
      py::arg("X"), py::arg("x"), py::arg("y"));
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "strata_scope/arrangement.hpp"
#include "strata_scope/counting.hpp"
#include "strata_scope/errors.hpp"
#include "strata_scope/export.hpp"
#include "strata_scope/resolution.hpp"
#include "strata_scope/strata.hpp"
#include "strata_scope/tree.hpp"

namespace py = pybind11;
using namespace strata_scope;

namespace {

py::object parse_json(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

Graph graph_from(const std::string& name) {
  if (name == "complete") return Graph::Complete;
  if (name == "edgeless") return Graph::Edgeless;
  throw std::invalid_argument("unknown graph: " + name);
}

}  // namespace

PYBIND11_MODULE(strata_scope, m) {
  m.doc() = "Strata of partition-lattice compactifications and their resolutions";

  // Translators registered later are tried first.
  const auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<CapExceeded>(m, "CapExceeded", error);
  py::register_exception<ModelInconsistency>(m, "ModelInconsistency", error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });
  m.attr("schema_version") = kSchemaVersion;

  m.def("partitions", [](int n) {
    std::vector<std::string> out;
    for (const auto& p : enumerate_partitions(n)) out.push_back(format_partition(p));
    return out;
  }, py::arg("n"));
  m.def("meet", [](const std::string& a, const std::string& b, int n) {
    return format_partition(meet(parse_partition(a, n), parse_partition(b, n)));
  }, py::arg("a"), py::arg("b"), py::arg("n"));
  m.def("join", [](const std::string& a, const std::string& b, int n) {
    return format_partition(join(parse_partition(a, n), parse_partition(b, n)));
  }, py::arg("a"), py::arg("b"), py::arg("n"));

  m.def("tree", [](const std::string& nest, int n, const std::string& graph, bool stabilized) {
    return parse_json(tree_json(grafted_tree(parse_nest(nest, n, graph_from(graph)), stabilized)));
  }, py::arg("nest"), py::arg("n"), py::arg("graph") = "complete", py::arg("stabilized") = false);

  m.def("strata", [](const std::string& space, int n, bool force) {
    const Space s = parse_space(space);
    return parse_json(strata_json(s, n, strata(s, n, {force})));
  }, py::arg("space"), py::arg("n"), py::arg("force") = false);

  m.def("resolve", [](const std::string& space, int n, unsigned threads, bool rows) {
    ResolutionOptions options;
    options.threads = threads;
    options.keep_rows = rows;
    options.keep_preimages = rows;
    ResolutionReport report;
    {
      py::gil_scoped_release release;
      report = resolution_report(parse_space(space), n, options);
    }
    return parse_json(resolution_json(report));
  }, py::arg("space"), py::arg("n"), py::arg("threads") = 0, py::arg("rows") = false);

  m.def("li_check", [](int n, const std::string& graph, const std::string& kind) {
    const Enumeration e = standard_enumeration(n, graph_from(graph), parse_enumeration_kind(kind));
    return parse_json(li_json(e, check_li_condition(e)));
  }, py::arg("n"), py::arg("graph") = "complete", py::arg("enumeration") = "zl");

  m.def("incidence", [](int n) { return parse_json(incidence_json(projective_incidence(n))); }, py::arg("n"));
  m.def("count", [](int n) { return parse_json(count_json(count_report(n, {true}))); }, py::arg("n"));
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dcicheck/commands.hpp"
#include "dcicheck/error.hpp"
#include "dcicheck/perm_group.hpp"
#include "dcicheck/two_closure.hpp"

namespace py = pybind11;
using namespace dcicheck;

namespace {

// Reports cross the boundary as JSON text; the package decodes them.
py::tuple wrap(const CommandOutput& out) { return py::make_tuple(out.report.dump(), out.exit_code); }

CommandConfig make_config(const std::string& group, const std::string& mode, std::optional<std::size_t> max_set_size,
                          std::uint64_t seed, unsigned workers, bool connected_only, bool exclude_identity) {
  CommandConfig c;
  c.group = group;
  c.mode = mode;
  c.max_set_size = max_set_size;
  c.seed = seed;
  c.workers = workers;
  c.connected_only = connected_only;
  c.exclude_identity = exclude_identity;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cayley isomorphism checks for small groups";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ScopeInfeasible>(m, "ScopeInfeasible");
  py::register_exception<CapExceeded>(m, "CapExceeded");
  py::register_exception<InternalError>(m, "InternalError");

  py::class_<CommandConfig>(m, "Config")
      .def(py::init(&make_config), py::arg("group") = "dihedral:6", py::arg("mode") = "dci",
           py::arg("max_set_size") = py::none(), py::arg("seed") = 0, py::arg("workers") = 1,
           py::arg("connected_only") = false, py::arg("exclude_identity") = false)
      .def_readwrite("group", &CommandConfig::group)
      .def_readwrite("mode", &CommandConfig::mode)
      .def_readwrite("max_set_size", &CommandConfig::max_set_size)
      .def_readwrite("seed", &CommandConfig::seed)
      .def_readwrite("workers", &CommandConfig::workers)
      .def_readwrite("connected_only", &CommandConfig::connected_only)
      .def_readwrite("exclude_identity", &CommandConfig::exclude_identity);

  m.def("verify_theorem", [](std::size_t p, const CommandConfig& c) { return wrap(cmd_verify_theorem(p, c)); });
  m.def("scan", [](const CommandConfig& c) { return wrap(cmd_scan(c)); });
  m.def("two_closure", [](const std::string& gens, std::size_t degree, const CommandConfig& c) {
    return wrap(cmd_two_closure(gens, degree, c));
  });
  m.def("dci_graph", [](const std::string& set, const CommandConfig& c) { return wrap(cmd_dci_graph(set, c)); });
  m.def("dichotomy", [](const CommandConfig& c) { return wrap(cmd_dichotomy(c)); });
  m.def("case_analysis", [](std::size_t p, const std::string& id, const CommandConfig& c) {
    return wrap(cmd_case(p, id, c));
  });
  m.def("babai_strong", [](std::size_t p, const std::string& pi, std::size_t count, const CommandConfig& c) {
    return wrap(cmd_babai_strong(p, pi, count, c));
  });
  m.def("cayley", [](const std::string& set, const CommandConfig& c) { return wrap(cmd_cayley(set, c)); });
  m.def("canon", [](const std::string& text) { return wrap(cmd_canon(text)); });
  m.def("iso", [](const std::string& a, const std::string& b) { return wrap(cmd_iso(a, b)); });
  m.def("aut", [](const std::string& text) { return wrap(cmd_aut(text)); });

  m.def(
      "group_order",
      [](const std::vector<std::string>& gens, std::size_t degree) {
        std::vector<Permutation> perms;
        for (const auto& g : gens) perms.push_back(Permutation::parse(g, degree));
        return PermGroup(degree, perms).order().str();
      },
      py::arg("generators"), py::arg("degree"));
}

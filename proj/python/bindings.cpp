#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fibprod/bounds.hpp"
#include "fibprod/errors.hpp"
#include "fibprod/pipeline.hpp"
#include "fibprod/reduction.hpp"
#include "fibprod/search.hpp"

namespace py = pybind11;
using namespace fibprod;

namespace {

EquationKind kind_of(const std::string& text) {
  if (auto kind = parse_equation_kind(text)) return *kind;
  throw ConfigError("unknown equation '" + text + "' (expected F=LL or L=FF)");
}

std::vector<py::tuple> triples(const std::vector<SolutionTriple>& ts) {
  std::vector<py::tuple> out;
  for (const auto& t : ts) out.push_back(py::make_tuple(t.k, t.m, t.n));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified solver for F_k = L_m L_n and L_k = F_m F_n";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted", PyExc_ArithmeticError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  m.def("fib", [](SequenceIndex n) { return py::int_(py::str(fib(n).get_str())); }, py::arg("n"));
  m.def("lucas", [](SequenceIndex n) { return py::int_(py::str(lucas(n).get_str())); }, py::arg("n"));

  m.def(
      "enumerate_solutions",
      [](const std::string& equation, SequenceIndex m_max, SequenceIndex n_max) {
        SearchRange range;
        range.m_max = m_max;
        range.n_max = n_max;
        const EquationKind kind = kind_of(equation);
        std::vector<SolutionTriple> found;
        {
          py::gil_scoped_release release;
          found = enumerate_solutions(kind, range);
        }
        return triples(found);
      },
      py::arg("equation"), py::arg("m_max") = 75, py::arg("n_max") = 160);

  m.def("published_solution_set", [](const std::string& equation) {
    return triples(published_solution_set(kind_of(equation)));
  });

  m.def(
      "common_terms",
      [](SequenceIndex limit) {
        std::vector<py::int_> out;
        for (const auto& v : common_terms(limit)) out.push_back(py::int_(py::str(v.get_str())));
        return out;
      },
      py::arg("limit") = 160);

  m.def(
      "baker_bounds",
      [](const std::string& equation, Precision start, Precision cap) {
        const IndexBoundReport r = baker_bounds(kind_of(equation), {start, cap});
        py::dict constants;
        for (const auto& c : r.provenance) constants[py::str(c.label)] = c.value.to_double();
        py::dict out;
        out["k_bound"] = py::int_(py::str(r.k_bound.get_str()));
        out["m_bound"] = py::int_(py::str(r.m_bound.get_str()));
        out["n_bound"] = py::int_(py::str(r.n_bound.get_str()));
        out["solver_iterations"] = r.solver_iterations;
        out["constants"] = constants;
        return out;
      },
      py::arg("equation"), py::arg("precision") = 256, py::arg("precision_cap") = 16384);

  m.def(
      "reduced_bounds",
      [](const std::string& equation) {
        const ReducedBounds r = reduce_index_bounds(kind_of(equation));
        return py::make_tuple(r.m_bound, r.n_bound);
      },
      py::arg("equation"));

  m.def(
      "run",
      [](const std::string& command, const std::string& equation, Precision start, Precision cap,
         std::optional<SequenceIndex> m_max, std::optional<SequenceIndex> n_max) {
        const auto parsed = parse_command(command);
        if (!parsed) throw ConfigError("unknown command '" + command + "'");
        PipelineConfig config;
        config.equations = parse_equation_selection(equation);
        config.precision = {start, cap};
        config.m_max = m_max;
        config.n_max = n_max;
        config.validate();
        std::string text;
        {
          py::gil_scoped_release release;
          text = serialize(run_pipeline(config, *parsed));
        }
        return text;
      },
      py::arg("command"), py::arg("equation") = "both", py::arg("precision") = 256,
      py::arg("precision_cap") = 16384, py::arg("m_max") = py::none(), py::arg("n_max") = py::none(),
      "Runs a pipeline command and returns the structured report as JSON text.");
}

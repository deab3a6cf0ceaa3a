#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wgrz/error.hpp"
#include "wgrz/kripke.hpp"
#include "wgrz/kripke_json.hpp"
#include "wgrz/qbf_semantics.hpp"
#include "wgrz/reduction.hpp"
#include "wgrz/solver.hpp"
#include "wgrz/verify.hpp"

namespace py = pybind11;
using namespace wgrz;

namespace {

// Models cross the boundary as the JSON text used by the CLI.
std::string model_text(const KripkeModel& m) { return dump_json(model_to_json(m)); }

py::dict sat(const std::string& formula, const std::string& engine, int bound, std::uint64_t budget) {
  const ModalFormula f = parse_modal(formula);
  SatVerdict v;
  if (engine == "tableau") {
    v = sat_k_tableau(f, {budget, true});
  } else if (engine == "bounded") {
    v = sat_bounded(f, bound);
  } else {
    throw PreconditionError("unknown engine '" + engine + "'");
  }
  py::dict out;
  out["verdict"] = v.label();
  out["nodes"] = v.stats.nodes;
  out["max_depth"] = v.stats.max_depth;
  out["witness"] = v.witness ? py::object(py::str(model_text(*v.witness))) : py::object(py::none());
  out["note"] = v.note;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "TQBF encodings into the constant fragment of modal logics between K and wGrz";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  py::register_exception<UnknownWorld>(m, "UnknownWorld", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());

  m.def("is_true_qbf", [](const std::string& f) { return is_true_qbf(parse_qbf(f)); }, py::arg("formula"));
  m.def("to_prenex", [](const std::string& f) { return render(to_prenex(parse_qbf(f))); }, py::arg("formula"));
  m.def("negate_prenex", [](const std::string& f) { return render(negate_prenex(parse_qbf(f))); },
        py::arg("formula"));
  m.def("encode_star", [](const std::string& f) { return render(encode_star(parse_qbf(f)).formula); },
        py::arg("formula"));
  m.def("encode_alpha", [](const std::string& f) { return render(encode_alpha(parse_qbf(f))); }, py::arg("formula"));
  m.def("alpha", [](int k) { return render(alpha(k)); }, py::arg("k"));
  m.def("wgrz_axiom", [] { return render(wgrz_axiom()); });
  m.def("modal_size", [](const std::string& f) { return formula_size(parse_modal(f)); }, py::arg("formula"));
  m.def("is_constant", [](const std::string& f) { return is_constant(parse_modal(f)); }, py::arg("formula"));
  m.def("sat", &sat, py::arg("formula"), py::arg("engine") = "tableau", py::arg("bound") = 6,
        py::arg("budget") = TableauOptions{}.node_budget);
  m.def("quantifier_tree", [](const std::string& f) { return model_text(quantifier_tree(parse_qbf(f))); },
        py::arg("formula"));
  m.def(
      "extended_model",
      [](const std::string& f) {
        const QbfFormula q = parse_qbf(f);
        return model_text(extend_model(quantifier_tree(q), make_context(q)));
      },
      py::arg("formula"));
  m.def(
      "model_check",
      [](const std::string& model, const std::string& formula) {
        const KripkeModel km = model_from_json(nlohmann::json::parse(model));
        return model_check(km, km.root(), parse_modal(formula));
      },
      py::arg("model"), py::arg("formula"));
  m.def(
      "verify",
      [](int n_max, int count, std::uint64_t seed) {
        CorpusSpec spec;
        spec.n_max = n_max;
        spec.count = count;
        spec.seed = seed;
        const VerifyReport report = run_verify(spec);
        py::dict out;
        out["passed"] = report.passed();
        out["instances"] = report.records.size();
        out["summary"] = report.summary();
        return out;
      },
      py::arg("n_max") = 3, py::arg("count") = 200, py::arg("seed") = 0);
}

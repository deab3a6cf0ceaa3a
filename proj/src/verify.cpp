#include "wgrz/verify.hpp"

#include <algorithm>
#include <sstream>

#include "wgrz/error.hpp"
#include "wgrz/kripke.hpp"
#include "wgrz/qbf_semantics.hpp"
#include "wgrz/reduction.hpp"

namespace wgrz {

namespace {

using Q = QbfFormula;
using M = ModalFormula;

int uniform(Rng& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

Q binary(int which, Q l, Q r) {
  switch (which) {
    case 0: return Q::conj(std::move(l), std::move(r));
    case 1: return Q::disj(std::move(l), std::move(r));
    default: return Q::implies(std::move(l), std::move(r));
  }
}

Q matrix_of_size(Rng& rng, int vars, int size) {
  if (size <= 2) {
    const int pick = uniform(rng, 0, vars);
    return pick == 0 ? Q::falsum() : Q::var(pick);
  }
  const int rest = size - 1;
  const int left = 1 + 2 * uniform(rng, 0, (rest - 2) / 2);
  return binary(uniform(rng, 0, 2), matrix_of_size(rng, vars, left), matrix_of_size(rng, vars, rest - left));
}

Q qbf_of_size(Rng& rng, int vars, int size) {
  if (size <= 1) {
    const int pick = uniform(rng, 0, vars);
    return pick == 0 ? Q::falsum() : Q::var(pick);
  }
  if (size == 2 || uniform(rng, 0, 3) == 0) {
    const auto kind = uniform(rng, 0, 1) == 0 ? Q::Kind::Forall : Q::Kind::Exists;
    return Q::quantifier(kind, uniform(rng, 1, vars), qbf_of_size(rng, vars, size - 1));
  }
  const int left = uniform(rng, 1, size - 2);
  return binary(uniform(rng, 0, 2), qbf_of_size(rng, vars, left), qbf_of_size(rng, vars, size - 1 - left));
}

M modal_of_size(Rng& rng, int vars, int size) {
  if (size <= 1) {
    const int pick = uniform(rng, 0, vars + 1);
    if (pick == vars) return M::falsum();
    if (pick == vars + 1) return M::verum();
    return M::var(pick + 1);
  }
  if (size == 2 || uniform(rng, 0, 1) == 0) {
    M inner = modal_of_size(rng, vars, size - 1);
    switch (uniform(rng, 0, 2)) {
      case 0: return M::negation(std::move(inner));
      case 1: return M::box(std::move(inner));
      default: return M::dia(std::move(inner));
    }
  }
  const int left = uniform(rng, 1, size - 2);
  M l = modal_of_size(rng, vars, left);
  M r = modal_of_size(rng, vars, size - 1 - left);
  switch (uniform(rng, 0, 2)) {
    case 0: return M::conj({std::move(l), std::move(r)});
    case 1: return M::disj(std::move(l), std::move(r));
    default: return M::implies(std::move(l), std::move(r));
  }
}

bool witness_ok(const SatVerdict& v, const M& f) {
  if (!v.satisfiable()) return true;
  return v.witness && model_check(*v.witness, v.witness->root(), f);
}

}  // namespace

std::vector<QbfFormula> enumerate_matrices(int vars, int size) {
  std::vector<Q> out;
  if (size < 1) return out;
  if (size == 1) {
    for (int v = 1; v <= vars; ++v) out.push_back(Q::var(v));
    out.push_back(Q::falsum());
    return out;
  }
  for (int which = 0; which < 3; ++which) {
    for (int left = 1; left <= size - 2; ++left) {
      const auto ls = enumerate_matrices(vars, left);
      const auto rs = enumerate_matrices(vars, size - 1 - left);
      for (const auto& l : ls) {
        for (const auto& r : rs) out.push_back(binary(which, l, r));
      }
    }
  }
  return out;
}

QbfFormula random_matrix(Rng& rng, int vars, int max_size) {
  return matrix_of_size(rng, vars, 1 + 2 * uniform(rng, 0, (max_size - 1) / 2));
}

QbfFormula random_prenex(Rng& rng, int n, int max_size) {
  Q f = random_matrix(rng, n, max_size);
  std::vector<Q::Kind> kinds;
  for (int i = 0; i < n; ++i) kinds.push_back(uniform(rng, 0, 1) == 0 ? Q::Kind::Forall : Q::Kind::Exists);
  for (int i = n; i >= 1; --i) f = Q::quantifier(kinds[i - 1], i, f);
  return f;
}

QbfFormula random_closed_qbf(Rng& rng, int vars, int max_size) {
  for (;;) {
    Q f = qbf_of_size(rng, vars, uniform(rng, 1, max_size));
    for (int v : free_vars(f)) {
      f = Q::quantifier(uniform(rng, 0, 1) == 0 ? Q::Kind::Forall : Q::Kind::Exists, v, f);
    }
    if (static_cast<int>(formula_size(f)) <= max_size) return f;
  }
}

ModalFormula random_modal(Rng& rng, int vars, int max_size) {
  return modal_of_size(rng, vars, uniform(rng, 1, max_size));
}

std::vector<CorpusInstance> generate_corpus(const CorpusSpec& spec) {
  if (spec.n_max < 1) throw PreconditionError("corpus needs n_max >= 1");
  std::vector<CorpusInstance> out;
  for (int size = 1; size <= spec.exhaustive_size_max; ++size) {
    for (const auto& matrix : enumerate_matrices(1, size)) {
      out.push_back({Q::forall(1, matrix), "exhaustive"});
      out.push_back({Q::exists(1, matrix), "exhaustive"});
    }
  }
  if (spec.n_max >= 2) {
    Rng rng(spec.seed);
    for (int i = 0; i < spec.count; ++i) {
      const int n = 2 + i % (spec.n_max - 1);
      out.push_back({random_prenex(rng, n, spec.random_size_max), "random"});
    }
  }
  return out;
}

bool InstanceRecord::passed() const {
  auto agrees = [&](const std::string& verdict) { return verdict == (truth ? "sat" : "unsat"); };
  if (!agrees(star_verdict) || !agrees(alpha_verdict)) return false;
  if (!alpha_constant || !routes_agree || !witnesses_check) return false;
  if (tree_satisfies_star == false || closures_in_class == false || closures_satisfy_star == false) return false;
  if (extended && (!extended->alpha_at_root || !extended->transitive || !extended->star_failures.empty())) {
    return false;
  }
  return true;
}

nlohmann::ordered_json InstanceRecord::to_json() const {
  nlohmann::ordered_json j;
  j["index"] = index;
  j["formula"] = formula;
  j["origin"] = origin;
  j["n"] = n;
  j["is_true_qbf"] = truth;
  j["star"] = star_verdict;
  j["alpha"] = alpha_verdict;
  j["alpha_constant"] = alpha_constant;
  j["routes_agree"] = routes_agree;
  j["witnesses_check"] = witnesses_check;
  auto opt = [](const std::optional<bool>& b) { return b ? nlohmann::ordered_json(*b) : nlohmann::ordered_json(); };
  j["tree_satisfies_star"] = opt(tree_satisfies_star);
  j["closures_in_class"] = opt(closures_in_class);
  j["closures_satisfy_star"] = opt(closures_satisfy_star);
  if (extended) {
    j["extended"] = {{"worlds", extended->worlds},
                     {"alpha_at_root", extended->alpha_at_root},
                     {"transitive", extended->transitive},
                     {"star_failures", extended->star_failures}};
  } else {
    j["extended"] = nullptr;
  }
  j["star_size"] = star_size;
  j["alpha_size"] = alpha_size;
  j["star_nodes"] = star_nodes;
  j["alpha_nodes"] = alpha_nodes;
  j["pass"] = passed();
  return j;
}

InstanceRecord check_instance(const QbfFormula& f, std::size_t index, const std::string& origin, int extended_n_max,
                              const TableauOptions& options) {
  InstanceRecord r;
  r.index = index;
  r.formula = render(f);
  r.origin = origin;
  r.truth = is_true_qbf(f);

  const StarEncoding star = encode_star(f);
  const M alpha_formula = encode_alpha(f);
  const EncodingContext& ctx = star.context;
  r.n = ctx.n;
  r.alpha_constant = is_constant(alpha_formula);
  r.routes_agree = alpha_formula == encode_alpha_direct(f);
  r.star_size = formula_size(star.formula);
  r.alpha_size = formula_size(alpha_formula);

  const SatVerdict sv = sat_k_tableau(star.formula, options);
  const SatVerdict av = sat_k_tableau(alpha_formula, options);
  r.star_verdict = sv.label();
  r.alpha_verdict = av.label();
  r.star_nodes = sv.stats.nodes;
  r.alpha_nodes = av.stats.nodes;
  r.witnesses_check = witness_ok(sv, star.formula) && witness_ok(av, alpha_formula);

  if (!r.truth) return r;

  const KripkeModel tree = quantifier_tree(f);
  r.tree_satisfies_star = model_check(tree, tree.root(), star.formula);

  bool in_class = true;
  bool closures_star = true;
  const std::pair<Closure, FrameClass> closures[] = {
      {Closure::Transitive, FrameClass::GL},
      {Closure::ReflexiveTransitive, FrameClass::Grz},
      {Closure::ReflexiveSymmetric, FrameClass::KTB},
  };
  std::map<int, std::vector<std::size_t>> valuation;
  for (const auto& [var, set] : tree.valuation()) {
    auto& target = valuation[var];
    for (auto w = set.find_first(); w != WorldSet::npos; w = set.find_next(w)) target.push_back(w);
  }
  for (const auto& [mode, cls] : closures) {
    KripkeFrame closed = close(tree.frame(), mode);
    in_class = in_class && frame_class_check(closed, cls);
    const KripkeModel model(std::move(closed), valuation, tree.root());
    closures_star = closures_star && model_check(model, model.root(), star.formula);
  }
  r.closures_in_class = in_class;
  r.closures_satisfy_star = closures_star;

  if (ctx.n <= extended_n_max) {
    const KripkeModel extended = extend_model(tree, ctx);
    ExtendedChecks e;
    e.worlds = extended.frame().size();
    e.transitive = is_transitive(extended.frame());
    ModelChecker checker(extended);
    e.alpha_at_root = checker.holds(extended.root(), alpha_formula);
    for (int m = 1; m <= ctx.variable_count(); ++m) {
      const WorldSet& alpha_true = checker.truth_set(alpha(m));
      for (std::size_t w = 0; w < extended.frame().size(); ++w) {
        const WorldId& id = extended.frame().world(w);
        const bool expected_false = id.is_base() && !extended.holds(m, w);
        if (alpha_true.test(w) == expected_false) e.star_failures.push_back(id.tag() + ":" + std::to_string(m));
      }
    }
    r.extended = std::move(e);
  }
  return r;
}

bool VerifyReport::passed() const {
  return size_bound_holds && std::all_of(records.begin(), records.end(), [](const auto& r) { return r.passed(); });
}

std::string VerifyReport::json_lines() const {
  std::string out;
  for (const auto& r : records) out += r.to_json().dump() + "\n";
  return out;
}

std::string VerifyReport::summary() const {
  std::size_t passed_count = 0, true_count = 0, extended_count = 0;
  for (const auto& r : records) {
    passed_count += r.passed();
    true_count += r.truth;
    extended_count += r.extended.has_value();
  }
  std::ostringstream out;
  out << "corpus: n_max=" << spec.n_max << " exhaustive_size_max=" << spec.exhaustive_size_max
      << " random_size_max=" << spec.random_size_max << " count=" << spec.count << " seed=" << spec.seed << "\n";
  out << "instances: " << records.size() << " (" << true_count << " true, " << extended_count
      << " with extended-model checks)\n";
  out << "passed: " << passed_count << "/" << records.size() << "\n";
  out << "size constant c2 = " << size_constant << ": |phi*_alpha| <= c2 * |phi*|^2 "
      << (size_bound_holds ? "holds" : "FAILS") << "\n";
  for (const auto& r : records) {
    if (!r.passed()) out << "FAILED #" << r.index << ": " << r.formula << "\n";
  }
  out << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

VerifyReport run_verify(const CorpusSpec& spec, const TableauOptions& options) {
  VerifyReport report;
  report.spec = spec;
  const auto corpus = generate_corpus(spec);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    report.records.push_back(check_instance(corpus[i].formula, i, corpus[i].origin, spec.extended_n_max, options));
  }
  report.size_bound_holds = true;
  if (!report.records.empty()) {
    const auto smallest = std::min_element(report.records.begin(), report.records.end(),
                                           [](const auto& a, const auto& b) { return a.star_size < b.star_size; });
    const auto square = [](std::uint64_t s) { return static_cast<double>(s) * static_cast<double>(s); };
    report.size_constant = static_cast<double>(smallest->alpha_size) / square(smallest->star_size);
    for (const auto& r : report.records) {
      // Exact integer form of alpha <= c2 * star^2 with c2 = a0 / s0^2.
      const unsigned __int128 lhs = static_cast<unsigned __int128>(r.alpha_size) * smallest->star_size * smallest->star_size;
      const unsigned __int128 rhs = static_cast<unsigned __int128>(smallest->alpha_size) * r.star_size * r.star_size;
      if (lhs > rhs) report.size_bound_holds = false;
    }
  }
  return report;
}

CrossCheck cross_validate(const ModalFormula& f, int bound) {
  CrossCheck c{sat_k_tableau(f), sat_bounded(f, bound)};
  const bool sound = witness_ok(c.tableau, f) && witness_ok(c.bounded, f);
  if (c.tableau.outcome == SatOutcome::Unknown || c.bounded.outcome == SatOutcome::Unknown) {
    c.agree = sound;
    return c;
  }
  if (c.bounded.satisfiable()) {
    c.conclusive = true;
    c.agree = c.tableau.satisfiable();
  } else if (c.tableau.unsatisfiable()) {
    c.conclusive = true;
  } else if (c.tableau.witness && static_cast<int>(c.tableau.witness->frame().size()) <= bound) {
    c.conclusive = true;
    c.agree = false;  // the tableau found a model the oracle should have seen
  }
  c.agree = c.agree && sound;
  return c;
}

}  // namespace wgrz

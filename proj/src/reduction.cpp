#include "wgrz/reduction.hpp"

#include <deque>

#include "wgrz/error.hpp"

namespace wgrz {

namespace {

using M = ModalFormula;
using Atom = std::function<ModalFormula(int)>;

M conj_or_verum(std::vector<M> parts) { return parts.empty() ? M::verum() : M::conj(std::move(parts)); }

void check_matrix_vars(const QbfFormula& f, int n) {
  switch (f.kind()) {
    case QbfFormula::Kind::Var:
      if (f.index() > n) {
        throw PreconditionError("matrix mentions p" + std::to_string(f.index()) + " outside p1..p" + std::to_string(n));
      }
      return;
    case QbfFormula::Kind::Falsum:
      return;
    default:
      check_matrix_vars(f.left(), n);
      check_matrix_vars(f.right(), n);
  }
}

M build_star(const EncodingContext& ctx, const Atom& atom) {
  const int n = ctx.n;
  auto p = [&](int i) { return atom(i); };
  auto q = [&](int i) { return atom(ctx.q(i)); };
  auto neg = [](M f) { return M::negation(std::move(f)); };

  // level(i) = q_i & ~q_{i+1}: exactly i quantifiers resolved
  std::vector<M> level;
  for (int i = 0; i <= n; ++i) level.push_back(M::conj({q(i), neg(q(i + 1))}));

  std::vector<M> start{q(0)};
  for (int i = 1; i <= n; ++i) start.push_back(neg(p(i)));
  start.push_back(neg(q(1)));

  std::vector<M> monotone;
  for (int i = 1; i <= n + 1; ++i) monotone.push_back(M::implies(q(i), q(i - 1)));

  std::vector<M> existential;
  std::vector<M> universal;
  for (int i = 1; i <= n; ++i) {
    const M& here = level[i - 1];
    if (ctx.quantifiers[i - 1].quantifier == QbfFormula::Kind::Exists) {
      existential.push_back(M::implies(here, M::dia(level[i])));
    } else {
      universal.push_back(M::implies(
          here, M::conj({M::dia(M::conj({q(i), neg(q(i + 1)), p(i)})),
                         M::dia(M::conj({q(i), neg(q(i + 1)), neg(p(i))}))})));
    }
  }

  std::vector<M> persistence;
  for (int i = 1; i <= n - 1; ++i) {
    const M guard = M::conj({q(i + 1), neg(q(n + 1))});
    std::vector<M> keep;
    for (int j = 1; j <= i; ++j) keep.push_back(M::implies(p(j), M::box(M::implies(guard, p(j)))));
    for (int j = 1; j <= i; ++j) keep.push_back(M::implies(neg(p(j)), M::box(M::implies(guard, neg(p(j))))));
    persistence.push_back(M::implies(q(i), M::conj(std::move(keep))));
  }

  const M leaf = M::implies(level[n], translate_matrix(ctx.matrix, atom));

  return M::conj({
      M::conj(std::move(start)),
      M::box_le(n, conj_or_verum(std::move(monotone))),
      M::box_le(n - 1, conj_or_verum(std::move(existential))),
      M::box_le(n - 1, conj_or_verum(std::move(universal))),
      M::box_le(n - 1, conj_or_verum(std::move(persistence))),
      M::box_pow(n, leaf),
  });
}

std::vector<int> sorted_model(const QbfModel& m) { return {m.begin(), m.end()}; }

}  // namespace

EncodingContext make_context(const QbfFormula& f) {
  if (!is_closed(f)) throw PreconditionError("encoding expects a closed formula: " + render(f));
  auto [prefix, matrix] = split_prenex(f);
  const int n = static_cast<int>(prefix.size());
  if (n < 1) throw PreconditionError("encoding expects at least one quantifier");
  for (int i = 0; i < n; ++i) {
    if (prefix[i].variable != i + 1) {
      throw PreconditionError("quantifier " + std::to_string(i + 1) + " must bind p" + std::to_string(i + 1) +
                              " (see normalize_prefix)");
    }
  }
  check_matrix_vars(matrix, n);
  return EncodingContext{n, std::move(prefix), std::move(matrix)};
}

ModalFormula translate_matrix(const QbfFormula& matrix, const Atom& atom) {
  switch (matrix.kind()) {
    case QbfFormula::Kind::Var: return atom(matrix.index());
    case QbfFormula::Kind::Falsum: return M::falsum();
    case QbfFormula::Kind::And:
      return M::conj({translate_matrix(matrix.left(), atom), translate_matrix(matrix.right(), atom)});
    case QbfFormula::Kind::Or:
      return M::disj(translate_matrix(matrix.left(), atom), translate_matrix(matrix.right(), atom));
    case QbfFormula::Kind::Implies:
      return M::implies(translate_matrix(matrix.left(), atom), translate_matrix(matrix.right(), atom));
    default:
      throw PreconditionError("matrix must be quantifier-free");
  }
}

StarEncoding encode_star(const QbfFormula& f) {
  EncodingContext ctx = make_context(f);
  std::vector<M> atoms;
  for (int i = 1; i <= ctx.variable_count(); ++i) atoms.push_back(M::var(i));
  M phi = build_star(ctx, [&](int i) { return atoms.at(i - 1); });
  return {std::move(phi), std::move(ctx)};
}

ModalFormula alpha(int k) {
  if (k < 1) throw PreconditionError("alpha_k is defined for k >= 1");
  const M blind = M::box(M::falsum());
  const M exactly_k = M::conj({M::dia_pow(k, blind), M::negation(M::dia_pow(k + 1, blind))});
  const M escape = M::box(M::implies(M::dia(M::verum()), M::dia(blind)));
  return expand_sugar(M::box(M::implies(exactly_k, escape)));
}

Substitution alpha_substitution(const EncodingContext& ctx) {
  Substitution s;
  for (int i = 1; i <= ctx.variable_count(); ++i) s.set(i, alpha(i));
  return s;
}

ModalFormula encode_alpha(const QbfFormula& f) {
  StarEncoding star = encode_star(f);
  return substitute(star.formula, alpha_substitution(star.context));
}

ModalFormula encode_alpha_direct(const QbfFormula& f) {
  EncodingContext ctx = make_context(f);
  std::vector<M> atoms;
  for (int i = 1; i <= ctx.variable_count(); ++i) atoms.push_back(alpha(i));
  return build_star(ctx, [&](int i) { return atoms.at(i - 1); });
}

KripkeModel quantifier_tree(const QbfFormula& f) {
  const EncodingContext ctx = make_context(f);
  if (!is_true_qbf(f)) throw PreconditionError("quantifier tree exists only for true formulas: " + render(f));

  const int n = ctx.n;
  // suffix[k] = Q_{k+1} p_{k+1} ... Q_n p_n . matrix
  std::vector<QbfFormula> suffix(n + 1, ctx.matrix);
  for (int k = n - 1; k >= 0; --k) {
    suffix[k] = QbfFormula::quantifier(ctx.quantifiers[k].quantifier, k + 1, suffix[k + 1]);
  }

  struct Pending {
    std::size_t index;
    int level;
    QbfModel model;
  };
  std::vector<WorldId> worlds;
  std::vector<int> levels;
  std::vector<QbfModel> models;
  std::vector<Edge> edges;
  auto add_world = [&](int level, const QbfModel& model) {
    const std::size_t idx = worlds.size();
    worlds.push_back(WorldId::base(level, sorted_model(model), static_cast<int>(idx)));
    levels.push_back(level);
    models.push_back(model);
    return idx;
  };

  std::deque<Pending> queue;
  queue.push_back({add_world(0, {}), 0, {}});
  while (!queue.empty()) {
    Pending cur = std::move(queue.front());
    queue.pop_front();
    if (cur.level == n) continue;
    const int var = cur.level + 1;
    QbfModel without = cur.model;
    QbfModel with = cur.model;
    with.insert(var);
    std::vector<QbfModel> children;
    if (ctx.quantifiers[cur.level].quantifier == QbfFormula::Kind::Forall) {
      children = {without, with};
    } else {
      children.push_back(evaluate(without, suffix[cur.level + 1]) ? without : with);
    }
    for (auto& child : children) {
      const std::size_t idx = add_world(cur.level + 1, child);
      edges.emplace_back(cur.index, idx);
      queue.push_back({idx, cur.level + 1, std::move(child)});
    }
  }

  std::map<int, std::vector<std::size_t>> valuation;
  for (int v = 1; v <= ctx.variable_count(); ++v) valuation[v];
  for (std::size_t w = 0; w < worlds.size(); ++w) {
    for (int v : models[w]) valuation[v].push_back(w);
    for (int i = 0; i <= levels[w]; ++i) valuation[ctx.q(i)].push_back(w);
  }
  return KripkeModel(KripkeFrame(std::move(worlds), edges), valuation, 0);
}

int world_level(const WorldId& w) {
  if (!w.is_base()) throw PreconditionError("not a quantifier-tree world: " + w.tag());
  return w.as_base().level;
}

namespace {

// Worlds a_0..a_m, b (and c), with edges of the transitive closure.
KripkeFrame gadget(int m, bool plus, const std::optional<WorldId>& host) {
  if (m < 1) throw PreconditionError("gadget frames need m >= 1");
  std::vector<WorldId> worlds;
  for (int i = 0; i <= m; ++i) worlds.push_back(WorldId::gadget(m, GadgetPart::A, i, host));
  const std::size_t b = worlds.size();
  worlds.push_back(WorldId::gadget(m, GadgetPart::B, 0, host));
  std::vector<Edge> edges{{0, b}, {b, b}};
  for (int i = 0; i < m; ++i) edges.emplace_back(i, i + 1);
  if (plus) {
    const std::size_t c = worlds.size();
    worlds.push_back(WorldId::gadget(m, GadgetPart::C, 0, host));
    edges.emplace_back(c, c);
    edges.emplace_back(c, 0);
  }
  return close(KripkeFrame(std::move(worlds), edges), Closure::Transitive);
}

}  // namespace

KripkeFrame frame_Fm(int m) { return gadget(m, false, std::nullopt); }
KripkeFrame frame_Fm_plus(int m) { return gadget(m, true, std::nullopt); }

bool is_upward_persistent(const KripkeModel& model) {
  const KripkeFrame& frame = model.frame();
  for (const auto& [var, set] : model.valuation()) {
    for (auto w = set.find_first(); w != WorldSet::npos; w = set.find_next(w)) {
      for (std::size_t v : frame.successors(w)) {
        if (!set.test(v)) return false;
      }
    }
  }
  return true;
}

KripkeModel extend_model(const KripkeModel& base, const EncodingContext& ctx) {
  if (!is_upward_persistent(base)) throw PreconditionError("extend_model needs an upward-persistent valuation");
  const KripkeFrame& frame = base.frame();
  std::vector<WorldId> worlds = frame.worlds();
  std::vector<Edge> edges = frame.edges();

  for (std::size_t w = 0; w < frame.size(); ++w) {
    for (int m = 1; m <= ctx.variable_count(); ++m) {
      if (base.holds(m, w)) continue;
      const KripkeFrame copy = gadget(m, false, frame.world(w));
      const std::size_t offset = worlds.size();
      worlds.insert(worlds.end(), copy.worlds().begin(), copy.worlds().end());
      for (const auto& [i, j] : copy.edges()) edges.emplace_back(offset + i, offset + j);
      edges.emplace_back(w, offset);  // w -> a_0 of the copy
    }
  }

  std::map<int, std::vector<std::size_t>> valuation;
  for (const auto& [var, set] : base.valuation()) {
    auto& target = valuation[var];
    for (auto w = set.find_first(); w != WorldSet::npos; w = set.find_next(w)) target.push_back(w);
  }
  KripkeFrame closed = close(KripkeFrame(std::move(worlds), edges), Closure::Transitive);
  return KripkeModel(std::move(closed), valuation, base.root());
}

ModalFormula wgrz_axiom(int variable) {
  const M p = M::var(variable);
  return M::implies(M::box_plus(M::implies(M::box(M::implies(p, M::box(p))), p)), p);
}

}  // namespace wgrz

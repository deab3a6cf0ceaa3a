#include "wgrz/qbf_semantics.hpp"

#include <algorithm>
#include <map>

#include "wgrz/error.hpp"

namespace wgrz {

namespace {

using Kind = QbfFormula::Kind;

void collect_free(const QbfFormula& f, std::multiset<int>& bound, std::set<int>& out) {
  switch (f.kind()) {
    case Kind::Var:
      if (bound.count(f.index()) == 0) out.insert(f.index());
      return;
    case Kind::Falsum:
      return;
    case Kind::Forall:
    case Kind::Exists: {
      auto it = bound.insert(f.index());
      collect_free(f.body(), bound, out);
      bound.erase(it);
      return;
    }
    default:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
  }
}

int max_index(const QbfFormula& f) {
  switch (f.kind()) {
    case Kind::Var:
      return f.index();
    case Kind::Falsum:
      return 0;
    case Kind::Forall:
    case Kind::Exists:
      return std::max(f.index(), max_index(f.body()));
    default:
      return std::max(max_index(f.left()), max_index(f.right()));
  }
}

Kind dual(Kind q) { return q == Kind::Forall ? Kind::Exists : Kind::Forall; }

QbfFormula rebuild_binary(Kind kind, QbfFormula l, QbfFormula r) {
  switch (kind) {
    case Kind::And: return QbfFormula::conj(std::move(l), std::move(r));
    case Kind::Or: return QbfFormula::disj(std::move(l), std::move(r));
    default: return QbfFormula::implies(std::move(l), std::move(r));
  }
}

struct Pulled {
  std::vector<PrefixEntry> prefix;
  QbfFormula matrix;
};

class PrenexBuilder {
 public:
  explicit PrenexBuilder(int next_fresh) : next_fresh_(next_fresh) {}

  Pulled pull(const QbfFormula& f, const std::map<int, int>& renaming) {
    switch (f.kind()) {
      case Kind::Var: {
        auto it = renaming.find(f.index());
        return {{}, it == renaming.end() ? f : QbfFormula::var(it->second)};
      }
      case Kind::Falsum:
        return {{}, f};
      case Kind::Forall:
      case Kind::Exists: {
        int target = f.index();
        if (used_.count(target) != 0) target = next_fresh_++;
        used_.insert(target);
        std::map<int, int> inner = renaming;
        inner[f.index()] = target;
        Pulled body = pull(f.body(), inner);
        body.prefix.insert(body.prefix.begin(), PrefixEntry{f.kind(), target});
        return body;
      }
      default: {
        Pulled l = pull(f.left(), renaming);
        Pulled r = pull(f.right(), renaming);
        if (f.kind() == Kind::Implies) {
          for (auto& e : l.prefix) e.quantifier = dual(e.quantifier);
        }
        l.prefix.insert(l.prefix.end(), r.prefix.begin(), r.prefix.end());
        return {std::move(l.prefix), rebuild_binary(f.kind(), std::move(l.matrix), std::move(r.matrix))};
      }
    }
  }

 private:
  int next_fresh_;
  std::set<int> used_;
};

QbfFormula rename_free(const QbfFormula& f, const std::map<int, int>& renaming) {
  switch (f.kind()) {
    case Kind::Var: {
      auto it = renaming.find(f.index());
      return it == renaming.end() ? f : QbfFormula::var(it->second);
    }
    case Kind::Falsum:
      return f;
    case Kind::Forall:
    case Kind::Exists:
      throw PreconditionError("matrix must be quantifier-free");
    default:
      return rebuild_binary(f.kind(), rename_free(f.left(), renaming), rename_free(f.right(), renaming));
  }
}

}  // namespace

std::set<int> free_vars(const QbfFormula& f) {
  std::multiset<int> bound;
  std::set<int> out;
  collect_free(f, bound, out);
  return out;
}

bool is_closed(const QbfFormula& f) { return free_vars(f).empty(); }

QbfFormula universal_closure(const QbfFormula& f) {
  const std::set<int> free = free_vars(f);
  QbfFormula out = f;
  for (auto it = free.rbegin(); it != free.rend(); ++it) out = QbfFormula::forall(*it, std::move(out));
  return out;
}

bool evaluate(const QbfModel& model, const QbfFormula& f) {
  switch (f.kind()) {
    case Kind::Var:
      return model.count(f.index()) != 0;
    case Kind::Falsum:
      return false;
    case Kind::And:
      return evaluate(model, f.left()) && evaluate(model, f.right());
    case Kind::Or:
      return evaluate(model, f.left()) || evaluate(model, f.right());
    case Kind::Implies:
      return !evaluate(model, f.left()) || evaluate(model, f.right());
    case Kind::Forall:
    case Kind::Exists: {
      QbfModel with = model;
      with.insert(f.index());
      QbfModel without = model;
      without.erase(f.index());
      if (f.kind() == Kind::Forall) return evaluate(with, f.body()) && evaluate(without, f.body());
      return evaluate(with, f.body()) || evaluate(without, f.body());
    }
  }
  return false;
}

bool is_true_qbf(const QbfFormula& f) { return evaluate({}, universal_closure(f)); }

bool is_quantifier_free(const QbfFormula& f) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Falsum:
      return true;
    case Kind::Forall:
    case Kind::Exists:
      return false;
    default:
      return is_quantifier_free(f.left()) && is_quantifier_free(f.right());
  }
}

bool is_prenex(const QbfFormula& f) {
  const QbfFormula* cur = &f;
  while (cur->is_quantifier()) cur = &cur->body();
  return is_quantifier_free(*cur);
}

std::pair<std::vector<PrefixEntry>, QbfFormula> split_prenex(const QbfFormula& f) {
  if (!is_prenex(f)) throw PreconditionError("formula is not in prenex form: " + render(f));
  std::vector<PrefixEntry> prefix;
  const QbfFormula* cur = &f;
  while (cur->is_quantifier()) {
    prefix.push_back({cur->kind(), cur->index()});
    cur = &cur->body();
  }
  return {std::move(prefix), *cur};
}

QbfFormula join_prenex(const std::vector<PrefixEntry>& prefix, QbfFormula matrix) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    matrix = QbfFormula::quantifier(it->quantifier, it->variable, std::move(matrix));
  }
  return matrix;
}

QbfFormula to_prenex(const QbfFormula& f) {
  if (!is_closed(f)) throw PreconditionError("to_prenex expects a closed formula: " + render(f));
  if (is_prenex(f)) return f;
  PrenexBuilder builder(max_index(f) + 1);
  Pulled pulled = builder.pull(f, {});
  return join_prenex(pulled.prefix, std::move(pulled.matrix));
}

QbfFormula negate_prenex(const QbfFormula& f) {
  if (!is_closed(f)) throw PreconditionError("negate_prenex expects a closed formula: " + render(f));
  auto [prefix, matrix] = split_prenex(f);
  for (auto& e : prefix) e.quantifier = dual(e.quantifier);
  return join_prenex(prefix, QbfFormula::negation(std::move(matrix)));
}

QbfFormula normalize_prefix(const QbfFormula& f) {
  if (!is_closed(f)) throw PreconditionError("expected a closed formula: " + render(f));
  auto [prefix, matrix] = split_prenex(f);
  std::map<int, int> renaming;  // later (inner) binders overwrite earlier ones
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    renaming[prefix[i].variable] = static_cast<int>(i) + 1;
    prefix[i].variable = static_cast<int>(i) + 1;
  }
  return join_prenex(prefix, rename_free(matrix, renaming));
}

}  // namespace wgrz

#include "wgrz/modal.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "lexer.hpp"
#include "wgrz/error.hpp"

namespace wgrz {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

ModalFormula ModalFormula::make(Kind kind, int param, std::vector<ModalFormula> kids) {
  Node node{kind, param, std::move(kids)};
  std::size_t h = mix(static_cast<std::size_t>(kind) * 1315423911u, static_cast<std::size_t>(param));
  std::uint64_t sum = 0;
  int deepest = 0;
  for (const auto& k : node.kids) {
    h = mix(h, k.hash());
    sum += k.size();
    deepest = std::max(deepest, k.depth());
    node.has_vars = node.has_vars || k.has_vars();
  }
  node.hash = h;

  const std::uint64_t n = static_cast<std::uint64_t>(param);
  switch (kind) {
    case Kind::Var:
      node.has_vars = true;
      node.size = 1;
      break;
    case Kind::Falsum:
    case Kind::Verum:
      node.size = 1;
      break;
    case Kind::Not:
    case Kind::Or:
    case Kind::Implies:
      node.size = sum + 1;
      node.depth = deepest;
      break;
    case Kind::And:
      node.size = sum + node.kids.size() - 1;
      node.depth = deepest;
      break;
    case Kind::Box:
    case Kind::Dia:
      node.size = sum + 1;
      node.depth = deepest + 1;
      break;
    case Kind::BoxPlus:
      node.size = 2 * sum + 2;
      node.depth = deepest + 1;
      break;
    case Kind::BoxLe:
      // sum_{i=0..n} (i + |f|) plus n conjunction symbols
      node.size = n == 0 ? sum : n * (n + 1) / 2 + (n + 1) * sum + n;
      node.depth = deepest + param;
      break;
    case Kind::BoxPow:
    case Kind::DiaPow:
      node.size = sum + n;
      node.depth = deepest + param;
      break;
  }
  return ModalFormula(std::make_shared<const Node>(std::move(node)));
}

ModalFormula ModalFormula::var(int index) {
  if (index < 1) throw PreconditionError("variable indices are positive, got " + std::to_string(index));
  return make(Kind::Var, index, {});
}

ModalFormula ModalFormula::falsum() {
  static const ModalFormula instance = make(Kind::Falsum, 0, {});
  return instance;
}

ModalFormula ModalFormula::verum() {
  static const ModalFormula instance = make(Kind::Verum, 0, {});
  return instance;
}

ModalFormula ModalFormula::negation(ModalFormula operand) { return make(Kind::Not, 0, {std::move(operand)}); }

ModalFormula ModalFormula::conj(std::vector<ModalFormula> conjuncts) {
  if (conjuncts.empty()) throw std::invalid_argument("conjunction needs at least one conjunct");
  if (conjuncts.size() == 1) return conjuncts.front();
  return make(Kind::And, 0, std::move(conjuncts));
}

ModalFormula ModalFormula::disj(ModalFormula left, ModalFormula right) {
  return make(Kind::Or, 0, {std::move(left), std::move(right)});
}

ModalFormula ModalFormula::implies(ModalFormula left, ModalFormula right) {
  return make(Kind::Implies, 0, {std::move(left), std::move(right)});
}

ModalFormula ModalFormula::box(ModalFormula operand) { return make(Kind::Box, 0, {std::move(operand)}); }
ModalFormula ModalFormula::dia(ModalFormula operand) { return make(Kind::Dia, 0, {std::move(operand)}); }
ModalFormula ModalFormula::box_plus(ModalFormula operand) { return make(Kind::BoxPlus, 0, {std::move(operand)}); }

namespace {
void check_count(int count) {
  if (count < 0) throw std::invalid_argument("modal sugar count must be non-negative");
}
}  // namespace

ModalFormula ModalFormula::box_le(int radius, ModalFormula operand) {
  check_count(radius);
  return make(Kind::BoxLe, radius, {std::move(operand)});
}

ModalFormula ModalFormula::box_pow(int count, ModalFormula operand) {
  check_count(count);
  return make(Kind::BoxPow, count, {std::move(operand)});
}

ModalFormula ModalFormula::dia_pow(int count, ModalFormula operand) {
  check_count(count);
  return make(Kind::DiaPow, count, {std::move(operand)});
}

bool operator==(const ModalFormula& a, const ModalFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.param() != b.param()) return false;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  if (ka.size() != kb.size()) return false;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (!(ka[i] == kb[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Substitution

Substitution::Substitution(std::initializer_list<std::pair<const int, ModalFormula>> entries) {
  for (const auto& [index, f] : entries) set(index, f);
}

void Substitution::set(int index, ModalFormula replacement) {
  map_.insert_or_assign(index, std::move(replacement));
}

const ModalFormula* Substitution::lookup(int index) const {
  auto it = map_.find(index);
  return it == map_.end() ? nullptr : &it->second;
}

namespace {

// Rebuilds a node with new children, reusing the original when nothing changed.
ModalFormula rebuild(const ModalFormula& f, std::vector<ModalFormula> kids) {
  bool same = true;
  for (std::size_t i = 0; i < kids.size(); ++i) same = same && kids[i].id() == f.child(i).id();
  if (same) return f;
  using K = ModalFormula::Kind;
  switch (f.kind()) {
    case K::Not: return ModalFormula::negation(std::move(kids[0]));
    case K::And: return ModalFormula::conj(std::move(kids));
    case K::Or: return ModalFormula::disj(std::move(kids[0]), std::move(kids[1]));
    case K::Implies: return ModalFormula::implies(std::move(kids[0]), std::move(kids[1]));
    case K::Box: return ModalFormula::box(std::move(kids[0]));
    case K::Dia: return ModalFormula::dia(std::move(kids[0]));
    case K::BoxPlus: return ModalFormula::box_plus(std::move(kids[0]));
    case K::BoxLe: return ModalFormula::box_le(f.param(), std::move(kids[0]));
    case K::BoxPow: return ModalFormula::box_pow(f.param(), std::move(kids[0]));
    case K::DiaPow: return ModalFormula::dia_pow(f.param(), std::move(kids[0]));
    default: return f;
  }
}

using Memo = std::unordered_map<const void*, ModalFormula>;

ModalFormula substitute_rec(const ModalFormula& f, const Substitution& s, Memo& memo) {
  if (!f.has_vars()) return f;
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  ModalFormula out = f;
  if (f.kind() == ModalFormula::Kind::Var) {
    if (const ModalFormula* r = s.lookup(f.index())) out = *r;
  } else {
    std::vector<ModalFormula> kids;
    kids.reserve(f.children().size());
    for (const auto& k : f.children()) kids.push_back(substitute_rec(k, s, memo));
    out = rebuild(f, std::move(kids));
  }
  memo.emplace(f.id(), out);
  return out;
}

ModalFormula box_n(int count, ModalFormula f) {
  for (int i = 0; i < count; ++i) f = ModalFormula::box(std::move(f));
  return f;
}

ModalFormula expand_rec(const ModalFormula& f, Memo& memo) {
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  using K = ModalFormula::Kind;
  ModalFormula out = f;
  if (!f.children().empty()) {
    std::vector<ModalFormula> kids;
    kids.reserve(f.children().size());
    for (const auto& k : f.children()) kids.push_back(expand_rec(k, memo));
    switch (f.kind()) {
      case K::BoxPlus:
        out = ModalFormula::conj({kids[0], ModalFormula::box(kids[0])});
        break;
      case K::BoxLe: {
        std::vector<ModalFormula> layers;
        ModalFormula layer = kids[0];
        for (int i = 0; i <= f.param(); ++i) {
          layers.push_back(layer);
          layer = ModalFormula::box(layer);
        }
        out = ModalFormula::conj(std::move(layers));
        break;
      }
      case K::BoxPow:
        out = box_n(f.param(), kids[0]);
        break;
      case K::DiaPow: {
        out = kids[0];
        for (int i = 0; i < f.param(); ++i) out = ModalFormula::dia(out);
        break;
      }
      default:
        out = rebuild(f, std::move(kids));
    }
  }
  memo.emplace(f.id(), out);
  return out;
}

void collect_vars(const ModalFormula& f, std::set<int>& out, std::unordered_map<const void*, bool>& seen) {
  if (!f.has_vars() || !seen.emplace(f.id(), true).second) return;
  if (f.kind() == ModalFormula::Kind::Var) {
    out.insert(f.index());
    return;
  }
  for (const auto& k : f.children()) collect_vars(k, out, seen);
}

}  // namespace

ModalFormula substitute(const ModalFormula& f, const Substitution& s) {
  if (s.empty()) return f;
  Memo memo;
  return substitute_rec(f, s, memo);
}

std::uint64_t formula_size(const ModalFormula& f) { return f.size(); }

ModalFormula expand_sugar(const ModalFormula& f) {
  Memo memo;
  return expand_rec(f, memo);
}

std::set<int> variables(const ModalFormula& f) {
  std::set<int> out;
  std::unordered_map<const void*, bool> seen;
  collect_vars(f, out, seen);
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_into(const ModalFormula& f, std::string& out) {
  using K = ModalFormula::Kind;
  auto prefix = [&](std::string_view op) {
    out += op;
    out += ' ';
    render_into(f.operand(), out);
  };
  auto counted = [&](std::string_view op) {
    out += op;
    out += std::to_string(f.param());
    out += ' ';
    render_into(f.operand(), out);
  };
  switch (f.kind()) {
    case K::Var:
      out += 'p';
      out += std::to_string(f.index());
      break;
    case K::Falsum: out += "false"; break;
    case K::Verum: out += "true"; break;
    case K::Not: prefix("~"); break;
    case K::Box: prefix("[]"); break;
    case K::Dia: prefix("<>"); break;
    case K::BoxPlus: prefix("box+"); break;
    case K::BoxLe: counted("box<="); break;
    case K::BoxPow: counted("box^"); break;
    case K::DiaPow: counted("dia^"); break;
    case K::And:
    case K::Or:
    case K::Implies: {
      const char* sep = f.kind() == K::And ? " & " : f.kind() == K::Or ? " | " : " -> ";
      out += '(';
      bool first = true;
      for (const auto& k : f.children()) {
        if (!first) out += sep;
        first = false;
        render_into(k, out);
      }
      out += ')';
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// Parsing. Sugar tokens are expanded on the fly, so the result contains
// only core connectives.

class ModalParser {
 public:
  explicit ModalParser(std::string_view text) : lex_(text, Lexer::Dialect::Modal) {}

  ModalFormula parse() {
    ModalFormula f = implication();
    if (lex_.peek().kind != TokenKind::End) {
      throw ParseError("unexpected " + describe(lex_.peek()), lex_.peek().offset);
    }
    return f;
  }

 private:
  ModalFormula implication() {
    ModalFormula left = disjunction();
    if (lex_.peek().kind == TokenKind::Arrow) {
      lex_.next();
      return ModalFormula::implies(std::move(left), implication());
    }
    return left;
  }

  ModalFormula disjunction() {
    ModalFormula left = conjunction();
    while (lex_.peek().kind == TokenKind::Bar) {
      lex_.next();
      left = ModalFormula::disj(std::move(left), conjunction());
    }
    return left;
  }

  // A run of '&' at one level becomes one n-ary node.
  ModalFormula conjunction() {
    std::vector<ModalFormula> parts{unary()};
    while (lex_.peek().kind == TokenKind::Amp) {
      lex_.next();
      parts.push_back(unary());
    }
    return ModalFormula::conj(std::move(parts));
  }

  ModalFormula unary() {
    const Token tok = lex_.next();
    switch (tok.kind) {
      case TokenKind::Tilde: return ModalFormula::negation(unary());
      case TokenKind::Box: return ModalFormula::box(unary());
      case TokenKind::Dia: return ModalFormula::dia(unary());
      case TokenKind::BoxPlus: return expand_sugar(ModalFormula::box_plus(unary()));
      case TokenKind::BoxLe: return expand_sugar(ModalFormula::box_le(tok.value, unary()));
      case TokenKind::BoxPow: return expand_sugar(ModalFormula::box_pow(tok.value, unary()));
      case TokenKind::DiaPow: return expand_sugar(ModalFormula::dia_pow(tok.value, unary()));
      case TokenKind::False: return ModalFormula::falsum();
      case TokenKind::True: return ModalFormula::verum();
      case TokenKind::Var: return ModalFormula::var(tok.value);
      case TokenKind::LParen: {
        ModalFormula inner = implication();
        const Token close = lex_.next();
        if (close.kind != TokenKind::RParen) throw ParseError("unbalanced parentheses: expected ')'", close.offset);
        return inner;
      }
      default:
        throw ParseError("unexpected " + describe(tok), tok.offset);
    }
  }

  Lexer lex_;
};

}  // namespace

std::string render(const ModalFormula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

std::ostream& operator<<(std::ostream& out, const ModalFormula& f) { return out << render(f); }

ModalFormula parse_modal(std::string_view text) { return ModalParser(text).parse(); }

}  // namespace wgrz

#include "wgrz/qbf.hpp"

#include <ostream>
#include <stdexcept>
#include <vector>

#include "lexer.hpp"
#include "wgrz/error.hpp"

namespace wgrz {

struct QbfFormula::Node {
  Kind kind;
  int index = 0;
  std::vector<QbfFormula> kids;
};

namespace {

void check_index(int index) {
  if (index < 1) throw PreconditionError("variable indices are positive, got " + std::to_string(index));
}

}  // namespace

QbfFormula QbfFormula::var(int index) {
  check_index(index);
  return QbfFormula(std::make_shared<const Node>(Node{Kind::Var, index, {}}));
}

QbfFormula QbfFormula::falsum() {
  static const QbfFormula instance(std::make_shared<const Node>(Node{Kind::Falsum, 0, {}}));
  return instance;
}

QbfFormula QbfFormula::conj(QbfFormula left, QbfFormula right) {
  return QbfFormula(std::make_shared<const Node>(Node{Kind::And, 0, {std::move(left), std::move(right)}}));
}

QbfFormula QbfFormula::disj(QbfFormula left, QbfFormula right) {
  return QbfFormula(std::make_shared<const Node>(Node{Kind::Or, 0, {std::move(left), std::move(right)}}));
}

QbfFormula QbfFormula::implies(QbfFormula left, QbfFormula right) {
  return QbfFormula(
      std::make_shared<const Node>(Node{Kind::Implies, 0, {std::move(left), std::move(right)}}));
}

QbfFormula QbfFormula::forall(int index, QbfFormula body) {
  return quantifier(Kind::Forall, index, std::move(body));
}

QbfFormula QbfFormula::exists(int index, QbfFormula body) {
  return quantifier(Kind::Exists, index, std::move(body));
}

QbfFormula QbfFormula::quantifier(Kind kind, int index, QbfFormula body) {
  if (kind != Kind::Forall && kind != Kind::Exists) throw std::invalid_argument("not a quantifier kind");
  check_index(index);
  return QbfFormula(std::make_shared<const Node>(Node{kind, index, {std::move(body)}}));
}

QbfFormula QbfFormula::negation(QbfFormula operand) { return implies(std::move(operand), falsum()); }

QbfFormula::Kind QbfFormula::kind() const noexcept { return node_->kind; }
int QbfFormula::index() const noexcept { return node_->index; }
const QbfFormula& QbfFormula::left() const noexcept { return node_->kids[0]; }
const QbfFormula& QbfFormula::right() const noexcept { return node_->kids[1]; }
const QbfFormula& QbfFormula::body() const noexcept { return node_->kids[0]; }

bool operator==(const QbfFormula& a, const QbfFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.index() != b.index()) return false;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (!(ka[i] == kb[i])) return false;
  }
  return true;
}

std::size_t formula_size(const QbfFormula& f) {
  switch (f.kind()) {
    case QbfFormula::Kind::Var:
    case QbfFormula::Kind::Falsum:
      return 1;
    case QbfFormula::Kind::Forall:
    case QbfFormula::Kind::Exists:
      return 1 + formula_size(f.body());
    default:
      return 1 + formula_size(f.left()) + formula_size(f.right());
  }
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_into(const QbfFormula& f, std::string& out, bool operand);

const char* binary_symbol(QbfFormula::Kind kind) {
  switch (kind) {
    case QbfFormula::Kind::And: return " & ";
    case QbfFormula::Kind::Or: return " | ";
    default: return " -> ";
  }
}

void render_into(const QbfFormula& f, std::string& out, bool operand) {
  switch (f.kind()) {
    case QbfFormula::Kind::Var:
      out += 'p';
      out += std::to_string(f.index());
      return;
    case QbfFormula::Kind::Falsum:
      out += "false";
      return;
    case QbfFormula::Kind::Forall:
    case QbfFormula::Kind::Exists:
      // A quantifier scopes as far right as possible, so it needs parentheses
      // whenever it sits inside a connective.
      if (operand) out += '(';
      out += f.kind() == QbfFormula::Kind::Forall ? "A p" : "E p";
      out += std::to_string(f.index());
      out += " . ";
      render_into(f.body(), out, false);
      if (operand) out += ')';
      return;
    default:
      out += '(';
      render_into(f.left(), out, true);
      out += binary_symbol(f.kind());
      render_into(f.right(), out, true);
      out += ')';
  }
}

// ---------------------------------------------------------------------------
// Parsing

class QbfParser {
 public:
  explicit QbfParser(std::string_view text) : lex_(text, Lexer::Dialect::Qbf) {}

  QbfFormula parse() {
    QbfFormula f = implication();
    if (lex_.peek().kind != TokenKind::End) {
      throw ParseError("unexpected " + describe(lex_.peek()), lex_.peek().offset);
    }
    return f;
  }

 private:
  QbfFormula implication() {
    QbfFormula left = disjunction();
    if (lex_.peek().kind == TokenKind::Arrow) {
      lex_.next();
      return QbfFormula::implies(std::move(left), implication());
    }
    return left;
  }

  QbfFormula disjunction() {
    QbfFormula left = conjunction();
    while (lex_.peek().kind == TokenKind::Bar) {
      lex_.next();
      left = QbfFormula::disj(std::move(left), conjunction());
    }
    return left;
  }

  QbfFormula conjunction() {
    QbfFormula left = unary();
    while (lex_.peek().kind == TokenKind::Amp) {
      lex_.next();
      left = QbfFormula::conj(std::move(left), unary());
    }
    return left;
  }

  QbfFormula unary() {
    const Token tok = lex_.next();
    switch (tok.kind) {
      case TokenKind::Tilde:
        return QbfFormula::negation(unary());
      case TokenKind::Forall:
      case TokenKind::Exists: {
        const Token v = lex_.next();
        if (v.kind != TokenKind::Var) throw ParseError("expected variable after quantifier", v.offset);
        const Token dot = lex_.next();
        if (dot.kind != TokenKind::Dot) throw ParseError("expected '.' after quantified variable", dot.offset);
        const auto kind = tok.kind == TokenKind::Forall ? QbfFormula::Kind::Forall : QbfFormula::Kind::Exists;
        return QbfFormula::quantifier(kind, v.value, implication());
      }
      case TokenKind::False:
        return QbfFormula::falsum();
      case TokenKind::Var:
        return QbfFormula::var(tok.value);
      case TokenKind::LParen: {
        QbfFormula inner = implication();
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

std::string render(const QbfFormula& f) {
  std::string out;
  render_into(f, out, false);
  return out;
}

std::ostream& operator<<(std::ostream& out, const QbfFormula& f) { return out << render(f); }

QbfFormula parse_qbf(std::string_view text) { return QbfParser(text).parse(); }

}  // namespace wgrz

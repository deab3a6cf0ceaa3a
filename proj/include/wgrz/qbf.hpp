#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace wgrz {

// Quantified Boolean formula over variables p1, p2, ... built from falsum,
// &, |, ->, and the quantifiers A / E. Immutable; copies share structure.
class QbfFormula {
 public:
  enum class Kind : std::uint8_t { Var, Falsum, And, Or, Implies, Forall, Exists };

  static QbfFormula var(int index);
  static QbfFormula falsum();
  static QbfFormula conj(QbfFormula left, QbfFormula right);
  static QbfFormula disj(QbfFormula left, QbfFormula right);
  static QbfFormula implies(QbfFormula left, QbfFormula right);
  static QbfFormula forall(int index, QbfFormula body);
  static QbfFormula exists(int index, QbfFormula body);
  // ~f is sugar for f -> false.
  static QbfFormula negation(QbfFormula operand);
  static QbfFormula quantifier(Kind kind, int index, QbfFormula body);

  Kind kind() const noexcept;
  // Variable index of a Var node, or the bound variable of a quantifier.
  int index() const noexcept;
  const QbfFormula& left() const noexcept;
  const QbfFormula& right() const noexcept;
  const QbfFormula& body() const noexcept;

  bool is_quantifier() const noexcept {
    return kind() == Kind::Forall || kind() == Kind::Exists;
  }
  bool is_binary() const noexcept {
    return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Implies;
  }

  friend bool operator==(const QbfFormula& a, const QbfFormula& b);

 private:
  struct Node;
  explicit QbfFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

QbfFormula parse_qbf(std::string_view text);
std::string render(const QbfFormula& f);
std::ostream& operator<<(std::ostream& out, const QbfFormula& f);

// 1 per leaf, connective and quantifier.
std::size_t formula_size(const QbfFormula& f);

}  // namespace wgrz

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wgrz {

// Modal formula over variables p1, p2, ...
//
// Core connectives are falsum, verum, ~, n-ary &, binary | and ->, [] and <>.
// Four sugar forms are kept as nodes so that constructions print in their
// original shape; expand_sugar() rewrites them into core connectives:
//
//   box+ f    = f & [] f
//   box<=n f  = f & [] f & ... & []^n f      (just f when n = 0)
//   box^k f   = [] ... [] f                  (k boxes)
//   dia^k f   = <> ... <> f                  (k diamonds)
//
// Values are immutable and share structure; copying is a pointer copy.
class ModalFormula {
 public:
  enum class Kind : std::uint8_t {
    Var, Falsum, Verum, Not, And, Or, Implies, Box, Dia,
    BoxPlus, BoxLe, BoxPow, DiaPow,
  };

  static ModalFormula var(int index);
  static ModalFormula falsum();
  static ModalFormula verum();
  static ModalFormula negation(ModalFormula operand);
  // At least one conjunct; a single conjunct is returned unchanged.
  static ModalFormula conj(std::vector<ModalFormula> conjuncts);
  static ModalFormula conj(std::initializer_list<ModalFormula> conjuncts) {
    return conj(std::vector<ModalFormula>(conjuncts));
  }
  static ModalFormula disj(ModalFormula left, ModalFormula right);
  static ModalFormula implies(ModalFormula left, ModalFormula right);
  static ModalFormula box(ModalFormula operand);
  static ModalFormula dia(ModalFormula operand);
  static ModalFormula box_plus(ModalFormula operand);
  static ModalFormula box_le(int radius, ModalFormula operand);
  static ModalFormula box_pow(int count, ModalFormula operand);
  static ModalFormula dia_pow(int count, ModalFormula operand);

  Kind kind() const noexcept { return node_->kind; }
  // Variable index for Var, the count/radius for the parameterised sugar.
  int param() const noexcept { return node_->param; }
  int index() const noexcept { return node_->param; }
  std::span<const ModalFormula> children() const noexcept { return node_->kids; }
  const ModalFormula& child(std::size_t i) const noexcept { return node_->kids[i]; }
  const ModalFormula& operand() const noexcept { return node_->kids[0]; }
  const ModalFormula& left() const noexcept { return node_->kids[0]; }
  const ModalFormula& right() const noexcept { return node_->kids[1]; }

  bool is_sugar() const noexcept { return kind() >= Kind::BoxPlus; }
  // Symbol count of the sugar-free expansion (see formula_size).
  std::uint64_t size() const noexcept { return node_->size; }
  bool has_vars() const noexcept { return node_->has_vars; }
  int depth() const noexcept { return node_->depth; }
  std::size_t hash() const noexcept { return node_->hash; }
  // Node identity, usable as a memo key while the formula is alive.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const ModalFormula& a, const ModalFormula& b);

 private:
  struct Node {
    Kind kind;
    int param = 0;
    std::vector<ModalFormula> kids;
    std::uint64_t size = 1;
    std::size_t hash = 0;
    int depth = 0;
    bool has_vars = false;
  };
  static ModalFormula make(Kind kind, int param, std::vector<ModalFormula> kids);
  explicit ModalFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct ModalFormulaHash {
  std::size_t operator()(const ModalFormula& f) const noexcept { return f.hash(); }
};

// Finite map from variable index to replacement formula; identity elsewhere.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const int, ModalFormula>> entries);

  void set(int index, ModalFormula replacement);
  const ModalFormula* lookup(int index) const;
  bool empty() const noexcept { return map_.empty(); }
  const std::map<int, ModalFormula>& entries() const noexcept { return map_; }

 private:
  std::map<int, ModalFormula> map_;
};

ModalFormula parse_modal(std::string_view text);
std::string render(const ModalFormula& f);
std::ostream& operator<<(std::ostream& out, const ModalFormula& f);

// Simultaneous substitution. Unchanged subtrees are shared with the input.
ModalFormula substitute(const ModalFormula& f, const Substitution& s);

// Symbol count after sugar expansion: 1 per leaf, 1 per unary or binary
// connective, arity - 1 per n-ary conjunction.
std::uint64_t formula_size(const ModalFormula& f);

ModalFormula expand_sugar(const ModalFormula& f);

std::set<int> variables(const ModalFormula& f);
inline bool is_constant(const ModalFormula& f) { return !f.has_vars(); }

// Nesting depth of [] / <> after sugar expansion.
inline int modal_depth(const ModalFormula& f) { return f.depth(); }

}  // namespace wgrz

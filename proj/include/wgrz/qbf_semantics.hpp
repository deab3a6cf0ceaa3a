#pragma once

#include <set>
#include <vector>

#include "wgrz/qbf.hpp"

namespace wgrz {

// A classical model: the set of variable indices that are true.
using QbfModel = std::set<int>;

std::set<int> free_vars(const QbfFormula& f);

// Prefixes A-quantifiers over the free variables, lowest index outermost.
QbfFormula universal_closure(const QbfFormula& f);

bool evaluate(const QbfModel& model, const QbfFormula& f);

// Membership in TQBF: the universal closure holds in the empty model.
bool is_true_qbf(const QbfFormula& f);

bool is_closed(const QbfFormula& f);
bool is_quantifier_free(const QbfFormula& f);
bool is_prenex(const QbfFormula& f);

struct PrefixEntry {
  QbfFormula::Kind quantifier;  // Forall or Exists
  int variable;

  friend bool operator==(const PrefixEntry&, const PrefixEntry&) = default;
};

// Splits Q1 x1 ... Qn xn . matrix. Throws PreconditionError unless prenex.
std::pair<std::vector<PrefixEntry>, QbfFormula> split_prenex(const QbfFormula& f);
QbfFormula join_prenex(const std::vector<PrefixEntry>& prefix, QbfFormula matrix);

// Truth-equivalent prenex form of a closed formula. Quantifiers are pulled
// out left to right; a bound variable that clashes with one already used is
// renamed to a fresh index. Prenex input is returned unchanged.
QbfFormula to_prenex(const QbfFormula& f);

// Dualises the prefix and negates the matrix (as matrix -> false).
QbfFormula negate_prenex(const QbfFormula& f);

// Renames the bound variables of a closed prenex formula so that the i-th
// quantifier binds p_i. A matrix occurrence refers to its innermost binder.
QbfFormula normalize_prefix(const QbfFormula& f);

}  // namespace wgrz

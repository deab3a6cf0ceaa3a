#pragma once

#include <functional>
#include <vector>

#include "wgrz/kripke.hpp"
#include "wgrz/modal.hpp"
#include "wgrz/qbf.hpp"
#include "wgrz/qbf_semantics.hpp"

namespace wgrz {

// Bookkeeping for encoding a closed prenex QBF  Q1 p1 ... Qn pn . matrix.
// The level markers q_0 .. q_{n+1} live in the modal language as
// p_{n+1} .. p_{2n+2}.
struct EncodingContext {
  int n = 0;
  std::vector<PrefixEntry> quantifiers;
  QbfFormula matrix = QbfFormula::falsum();

  int q(int i) const noexcept { return n + 1 + i; }
  int variable_count() const noexcept { return 2 * n + 2; }
};

// Validates the input shape: closed, prenex, n >= 1, the i-th quantifier
// binds p_i, and the matrix only mentions p_1 .. p_n.
EncodingContext make_context(const QbfFormula& f);

struct StarEncoding {
  ModalFormula formula;
  EncodingContext context;
};

// The six-conjunct Ladner-style encoding phi*:
//   (1) q0 & ~p1 & ... & ~pn & ~q1
//   (2) box<=n   AND_{i=1..n+1} (q_i -> q_{i-1})
//   (3) box<=n-1 AND_{Q_i = E} (q_{i-1} & ~q_i -> <>(q_i & ~q_{i+1}))
//   (4) box<=n-1 AND_{Q_i = A} (q_{i-1} & ~q_i -> <>(q_i & ~q_{i+1} & p_i) & <>(q_i & ~q_{i+1} & ~p_i))
//   (5) box<=n-1 AND_{i=1..n-1} (q_i -> AND_{j<=i} (p_j -> [](q_{i+1} & ~q_{n+1} -> p_j))
//                                     & AND_{j<=i} (~p_j -> [](q_{i+1} & ~q_{n+1} -> ~p_j)))
//   (6) box^n (q_n & ~q_{n+1} -> matrix)
// Empty conjunctions are `true`, so the result always has six conjuncts.
StarEncoding encode_star(const QbfFormula& f);

// alpha_k = [](dia^k []false & ~dia^{k+1} []false -> [](<>true -> <>[]false)), k >= 1.
ModalFormula alpha(int k);

// {i -> alpha(i) : 1 <= i <= 2n+2}
Substitution alpha_substitution(const EncodingContext& ctx);

// phi*_alpha = substitute(phi*, alpha_substitution). Variable-free.
ModalFormula encode_alpha(const QbfFormula& f);

// Builds phi*_alpha in one pass with alpha(i) in place of each atom p_i,
// without going through substitute(). Must agree with encode_alpha.
ModalFormula encode_alpha_direct(const QbfFormula& f);

// Lifts a quantifier-free QBF into the modal language, mapping p_i to atom(i).
ModalFormula translate_matrix(const QbfFormula& matrix, const std::function<ModalFormula(int)>& atom);

// Quantifier tree of a true closed prenex QBF as a K-model. The root carries
// the empty classical model; a universal level adds both children (without,
// then with the variable), an existential level adds one child that keeps the
// rest of the formula true, preferring the one without the variable.
// p_1 .. p_n follow the world's classical model; q_i holds at worlds of
// level >= i. Throws PreconditionError for false formulas.
KripkeModel quantifier_tree(const QbfFormula& f);

// Level (number of resolved quantifiers) of a quantifier-tree world.
int world_level(const WorldId& w);

// F_m: worlds a_0..a_m, b with the transitive closure of
// a_0 -> b, b -> b, a_i -> a_{i+1}. F_m+ adds c with c -> c, c -> a_0.
KripkeFrame frame_Fm(int m);
KripkeFrame frame_Fm_plus(int m);

bool is_upward_persistent(const KripkeModel& model);

// M': the base model with a copy of F_m hung below every base world where
// p_m fails (1 <= m <= 2n+2), closed transitively. Copy worlds get the empty
// valuation; the root is unchanged.
KripkeModel extend_model(const KripkeModel& base, const EncodingContext& ctx);

// box+([](p -> []p) -> p) -> p over the given variable.
ModalFormula wgrz_axiom(int variable = 1);

}  // namespace wgrz
